// Seeded randomized self-check suites: the Green's-function identities
// (stress bracket and homogeneous operator) and the standing-wave mode
// identities (boundary conditions, transversality, curl, stress
// equivalence). Used by the CLI check subcommands and by the acceptance
// tests; reports are deterministic for a fixed seed.

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "casimir/constants.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/standing_wave.hpp"

namespace casimir {

/// Result of one named identity checked over many random samples.
struct CheckLine {
    std::string name;
    long samples = 0;
    double worst_rel_err = 0.0;
    double tolerance = 0.0;
    std::string worst_detail;  ///< parameters of the worst sample
    bool passed() const { return worst_rel_err <= tolerance; }
};

struct CheckReport {
    std::vector<CheckLine> lines;
    bool passed() const {
        for (const auto& l : lines)
            if (!l.passed()) return false;
        return true;
    }
};

namespace detail {

// Deterministic uniform doubles from the engine's raw bits; avoids any
// dependence on library distribution internals.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : eng_(seed) {}
    double unit() {  // [0, 1)
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    double log_uniform(double lo, double hi) {
        return lo * std::exp(unit() * std::log(hi / lo));
    }
    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::mt19937_64 eng_;
};

inline std::string format_params(const char* fmt, double a, double b, double c) {
    char buf[160];
    std::snprintf(buf, sizeof buf, fmt, a, b, c);
    return buf;
}

inline void update_worst(CheckLine& line, double rel, const std::string& detail) {
    if (rel > line.worst_rel_err) {
        line.worst_rel_err = rel;
        line.worst_detail = detail;
    }
}

}  // namespace detail

/// Verifies, on `samples` random draws of (zeta, q, a) from log-uniform
/// ranges zeta*a/c in [1e-2, 1e2], q*a in [1e-2, 1e2] (first draw forced
/// to q = 0), a in [1e-7, 1e-5] m:
///   - stress_bracket(zeta, q, a) == -16 pi w / Delta   (rel <= bracket_tol)
///   - (d^2/dx^2 - w^2) D = 0 for every component, by central finite
///     differences at interior points                    (rel <= homog_tol)
inline CheckReport green_check(long samples, std::uint64_t seed,
                               double bracket_tol = 1e-10,
                               double homog_tol = 1e-6) {
    if (samples < 1) throw std::invalid_argument("green_check: samples >= 1");
    detail::Sampler rng(seed);
    constexpr double pi = std::numbers::pi;
    const double c = constants_codata().c;

    CheckLine bracket{"bracket_identity", samples, 0.0, bracket_tol, "", };
    CheckLine homog{"homogeneous_operator", samples, 0.0, homog_tol, "", };

    for (long i = 0; i < samples; ++i) {
        const double a = rng.log_uniform(1e-7, 1e-5);
        const double v = rng.log_uniform(1e-2, 1e2);       // zeta a / c
        const double u = i == 0 ? 0.0 : rng.log_uniform(1e-2, 1e2);  // q a
        const double zeta = v * c / a;
        const double q = u / a;

        const double w = std::hypot(zeta / c, q);
        const double delta = -std::expm1(2.0 * w * a);
        const double target = -16.0 * pi * w / delta;
        const double got = stress_bracket(zeta, q, a);
        detail::update_worst(bracket, std::abs(got - target) / std::abs(target),
                             detail::format_params("zeta*a/c=%g q*a=%g a=%g", v, u, a));

        // finite-difference step tuned to w; x' kept a fixed fraction of a
        // away from x so the sinh component stays resolvable
        const double x = rng.uniform(0.03, 0.70) * a;
        const double xp = x + rng.uniform(0.25, 0.29) * a;
        double h = 1e-3 / w;
        if (h > 0.02 * a) h = 0.02 * a;
        const GreenComponents g0 = green_components(zeta, q, a, x, xp);
        const GreenComponents gp = green_components(zeta, q, a, x + h, xp);
        const GreenComponents gm = green_components(zeta, q, a, x - h, xp);
        const double comps0[4] = {g0.D_xx, g0.D_yy, g0.D_zz, g0.D_xy_im};
        const double compsp[4] = {gp.D_xx, gp.D_yy, gp.D_zz, gp.D_xy_im};
        const double compsm[4] = {gm.D_xx, gm.D_yy, gm.D_zz, gm.D_xy_im};
        for (int kc = 0; kc < 4; ++kc) {
            if (comps0[kc] == 0.0) continue;  // q = 0 makes D_xy vanish identically
            const double d2 = (compsp[kc] - 2.0 * comps0[kc] + compsm[kc]) / (h * h);
            const double rel =
                std::abs(d2 - w * w * comps0[kc]) / (w * w * std::abs(comps0[kc]));
            detail::update_worst(homog, rel,
                                 detail::format_params("zeta*a/c=%g q*a=%g a=%g", v, u, a) +
                                     " comp=" + std::to_string(kc));
        }
    }
    return {{bracket, homog}};
}

/// Verifies, on `samples` random cavity modes (n_i in [1, 6], transverse
/// amplitude from the polarization basis, a log-uniform in [1e-7, 1e-5] m):
///   - tangential E vanishes on all six walls (machine precision)
///   - analytic divergence matches central finite differences, and is zero
///     iff the amplitude is transverse
///   - analytic curl (omega * mode_B) matches finite differences of mode_E
///   - sigma_zz assembled == closed form
/// With inject_nontransverse the amplitude picks up a component along k,
/// which must make the transversality check fail.
inline CheckReport modes_check(long samples, std::uint64_t seed,
                               bool inject_nontransverse = false,
                               double curl_tol = 1e-6,
                               double sigma_tol = 1e-12) {
    if (samples < 1) throw std::invalid_argument("modes_check: samples >= 1");
    detail::Sampler rng(seed);

    CheckLine boundary{"boundary_conditions", samples, 0.0, 1e-12, "", };
    CheckLine transv{"transversality_divergence", samples, 0.0, 1e-9, "", };
    CheckLine div_fd{"divergence_vs_fd", samples, 0.0, 1e-6, "", };
    CheckLine curl{"curl_vs_fd", samples, 0.0, curl_tol, "", };
    CheckLine sigma{"sigma_zz_closed_vs_assembled", samples, 0.0, sigma_tol, "", };

    for (long i = 0; i < samples; ++i) {
        const double a = rng.log_uniform(1e-7, 1e-5);
        const double L = a * rng.uniform(0.5, 5.0);
        const CavityGeometry geom{a, L};
        const std::array<int, 3> n = {rng.uniform_int(1, 6), rng.uniform_int(1, 6),
                                      rng.uniform_int(1, 6)};
        ModeSpec probe = make_mode(geom, n, {1.0, 0.0, 0.0});
        const auto [e1, e2] = polarization_basis(probe.k);
        const double amp = rng.log_uniform(1e-2, 1e2);
        const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
        Vec3 A{};
        for (int d = 0; d < 3; ++d)
            A[d] = amp * (std::cos(theta) * e1[d] + std::sin(theta) * e2[d]);
        if (inject_nontransverse) {
            const double kn = norm(probe.k);
            for (int d = 0; d < 3; ++d) A[d] += 0.3 * amp * probe.k[d] / kn;
        }
        const ModeSpec m = make_mode(geom, n, A);
        const std::string params =
            detail::format_params("a=%g L=%g amp=%g", a, L, amp) + " n=" +
            std::to_string(n[0]) + std::to_string(n[1]) + std::to_string(n[2]);

        // tangential field on each wall at a random point
        const double ry = rng.uniform(0.0, 1.0), rz = rng.uniform(0.0, 1.0);
        const Vec3 walls[6] = {{0.0, ry * L, rz * a},   {L, ry * L, rz * a},
                               {ry * L, 0.0, rz * a},   {ry * L, L, rz * a},
                               {ry * L, rz * L, 0.0},   {ry * L, rz * L, a}};
        const int normal_axis[6] = {0, 0, 1, 1, 2, 2};
        for (int wface = 0; wface < 6; ++wface) {
            const Vec3 E = mode_E(walls[wface], m);
            for (int d = 0; d < 3; ++d) {
                if (d == normal_axis[wface]) continue;
                detail::update_worst(boundary, std::abs(E[d]) / amp,
                                     params + " wall=" + std::to_string(wface));
            }
        }

        // divergence and curl against central differences at interior points
        const double scale = amp * norm(m.k);
        const double h = 1e-6 * a;
        for (int rep = 0; rep < 3; ++rep) {
            Vec3 r{rng.uniform(0.1, 0.9) * L, rng.uniform(0.1, 0.9) * L,
                   rng.uniform(0.1, 0.9) * a};
            double div_num = 0.0;
            for (int d = 0; d < 3; ++d) {
                Vec3 rp = r, rm = r;
                rp[d] += h;
                rm[d] -= h;
                div_num += (mode_E(rp, m)[d] - mode_E(rm, m)[d]) / (2.0 * h);
            }
            detail::update_worst(div_fd, std::abs(div_num - mode_div_E(r, m)) / scale,
                                 params);
            detail::update_worst(transv, std::abs(mode_div_E(r, m)) / scale, params);

            Vec3 curl_num{};
            for (int d = 0; d < 3; ++d) {
                const int u1 = (d + 1) % 3, u2 = (d + 2) % 3;
                Vec3 rp = r, rm = r;
                rp[u1] += h;
                rm[u1] -= h;
                const double d1 = (mode_E(rp, m)[u2] - mode_E(rm, m)[u2]) / (2.0 * h);
                rp = r, rm = r;
                rp[u2] += h;
                rm[u2] -= h;
                const double d2 = (mode_E(rp, m)[u1] - mode_E(rm, m)[u1]) / (2.0 * h);
                curl_num[d] = d1 - d2;
            }
            const Vec3 B = mode_B(r, m);
            double err2 = 0.0, ref2 = 0.0;
            for (int d = 0; d < 3; ++d) {
                const double analytic = m.omega * B[d];
                err2 += (curl_num[d] - analytic) * (curl_num[d] - analytic);
                ref2 += scale * scale;
            }
            detail::update_worst(curl, std::sqrt(err2 / ref2), params);
        }

        if (!inject_nontransverse) {
            const double closed = sigma_zz_closed(dot(m.A, m.A), m.k);
            const double assembled = sigma_zz_assembled(m);
            detail::update_worst(sigma, std::abs(assembled - closed) / std::abs(closed),
                                 params);
        }
    }
    CheckReport rep{{boundary, transv, div_fd, curl, sigma}};
    return rep;
}

}  // namespace casimir
