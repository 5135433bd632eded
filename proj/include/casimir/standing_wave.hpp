// Standing-wave route to the Casimir pressure: discrete cavity modes
// between perfect mirrors at z = 0 and z = a, the zz Maxwell stress they
// exert on a plate, and the cutoff-regularized mode sum whose lambda -> 0
// asymptotics split into a plate-independent divergence plus the finite
// Casimir term pi^2 hbar c/(240 a^4).

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "casimir/constants.hpp"

namespace casimir {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& u, const Vec3& v) {
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

inline Vec3 cross(const Vec3& u, const Vec3& v) {
    return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0]};
}

inline double norm(const Vec3& u) { return std::sqrt(dot(u, u)); }

/// Plate gap a (along z) and transverse extension L of the square plates.
/// L only matters for per-mode bookkeeping; the regulated pressure takes
/// the L -> infinity transverse continuum limit.
struct CavityGeometry {
    double a;
    double L;
};

inline void validate(const CavityGeometry& g) {
    if (!(g.a > 0.0) || !(g.L > 0.0))
        throw std::invalid_argument("CavityGeometry: need a > 0 and L > 0");
}

/// One cavity mode: positive integer triple n, wavevector
/// k = (pi n_x/L, pi n_y/L, pi n_z/a), amplitude vector A (V/m) and
/// angular frequency omega = c|k|. A is not forced to be transverse so
/// that deliberately non-transverse amplitudes can be fed to the
/// divergence checks; operations that require A.k = 0 validate it.
struct ModeSpec {
    std::array<int, 3> n;
    Vec3 k;
    Vec3 A;
    double omega;
};

inline ModeSpec make_mode(const CavityGeometry& geom, std::array<int, 3> n,
                          const Vec3& amplitude) {
    validate(geom);
    if (n[0] < 1 || n[1] < 1 || n[2] < 1)
        throw std::invalid_argument("make_mode: mode integers must be >= 1");
    constexpr double pi = std::numbers::pi;
    ModeSpec m;
    m.n = n;
    m.k = {pi * n[0] / geom.L, pi * n[1] / geom.L, pi * n[2] / geom.a};
    m.A = amplitude;
    m.omega = constants_codata().c * norm(m.k);
    return m;
}

/// Two orthonormal directions spanning the plane perpendicular to k;
/// any transverse amplitude is a combination of these.
inline std::pair<Vec3, Vec3> polarization_basis(const Vec3& k) {
    const double kn = norm(k);
    if (!(kn > 0.0)) throw std::invalid_argument("polarization_basis: |k| = 0");
    Vec3 seed = std::abs(k[2]) < 0.9 * kn ? Vec3{0.0, 0.0, 1.0}
                                          : Vec3{1.0, 0.0, 0.0};
    Vec3 e1 = cross(k, seed);
    const double n1 = norm(e1);
    for (auto& x : e1) x /= n1;
    Vec3 e2 = cross(k, e1);
    const double n2 = norm(e2);
    for (auto& x : e2) x /= n2;
    return {e1, e2};
}

/// Exponential frequency cutoff e^{-lambda k} used to regulate the mode sum.
struct CutoffParam {
    double lambda;  ///< cutoff length (m), > 0
};

inline void validate(const CutoffParam& c) {
    if (!(c.lambda > 0.0))
        throw std::invalid_argument("CutoffParam: need lambda > 0");
}

/// Electric field of a cavity mode at position r:
///   E_x = A_x cos(k_x x) sin(k_y y) sin(k_z z)
///   E_y = A_y sin(k_x x) cos(k_y y) sin(k_z z)
///   E_z = A_z sin(k_x x) sin(k_y y) cos(k_z z)
/// Tangential components vanish on all six walls by construction.
inline Vec3 mode_E(const Vec3& r, const ModeSpec& m) {
    const double sx = std::sin(m.k[0] * r[0]), cx = std::cos(m.k[0] * r[0]);
    const double sy = std::sin(m.k[1] * r[1]), cy = std::cos(m.k[1] * r[1]);
    const double sz = std::sin(m.k[2] * r[2]), cz = std::cos(m.k[2] * r[2]);
    return {m.A[0] * cx * sy * sz, m.A[1] * sx * cy * sz, m.A[2] * sx * sy * cz};
}

/// Magnetic field amplitude triple, curl(E)/omega under the e^{-i omega t}
/// convention (only |B|^2 enters the stress, so the dropped phase is
/// observationally irrelevant). The curl amplitude vector is k x A.
inline Vec3 mode_B(const Vec3& r, const ModeSpec& m) {
    if (!(m.omega > 0.0))
        throw std::domain_error("mode_B: degenerate mode with omega = 0");
    const Vec3 C = cross(m.k, m.A);
    const double sx = std::sin(m.k[0] * r[0]), cx = std::cos(m.k[0] * r[0]);
    const double sy = std::sin(m.k[1] * r[1]), cy = std::cos(m.k[1] * r[1]);
    const double sz = std::sin(m.k[2] * r[2]), cz = std::cos(m.k[2] * r[2]);
    return {C[0] * sx * cy * cz / m.omega, C[1] * cx * sy * cz / m.omega,
            C[2] * cx * cy * sz / m.omega};
}

/// Analytic divergence of mode_E: -(A.k) sin(k_x x) sin(k_y y) sin(k_z z).
/// Identically zero iff the amplitude is transverse.
inline double mode_div_E(const Vec3& r, const ModeSpec& m) {
    return -dot(m.A, m.k) * std::sin(m.k[0] * r[0]) * std::sin(m.k[1] * r[1]) *
           std::sin(m.k[2] * r[2]);
}

/// Squared amplitude that normalizes one mode to the zero-point energy:
/// A^2 = 2 hbar omega_k / (eps0 L^2 a) with omega_k = c|k|.
inline double amplitude_norm_sq(const CavityGeometry& geom, const Vec3& k) {
    validate(geom);
    const auto& pc = constants_codata();
    const double omega = pc.c * norm(k);
    return 2.0 * pc.hbar * omega / (pc.eps0 * geom.L * geom.L * geom.a);
}

/// Closed-form zz stress element of one normalized mode:
/// sigma_zz = -(1/8) eps0 A^2 k_z^2 / k^2. Always <= 0 (attraction).
inline double sigma_zz_closed(double A_sq, const Vec3& k) {
    const double k2 = dot(k, k);
    if (!(k2 > 0.0)) throw std::invalid_argument("sigma_zz_closed: |k| = 0");
    return -0.125 * constants_codata().eps0 * A_sq * k[2] * k[2] / k2;
}

/// Same stress assembled from the averaged squared field components,
/// sigma_zz = eps0 E_z^2 - (eps0 E^2 + B^2/mu0)/2, evaluated on the plate:
/// transverse sin^2/cos^2 factors average to 1/2 while the z factors take
/// their boundary values sin^2(k_z a) = 0, cos^2(k_z a) = 1. Requires a
/// transverse amplitude (the closed form is derived under A.k = 0).
inline double sigma_zz_assembled(const ModeSpec& m) {
    const double Ak = dot(m.A, m.k);
    const double scale = norm(m.A) * norm(m.k);
    if (!(scale > 0.0))
        throw std::invalid_argument("sigma_zz_assembled: zero amplitude or k");
    if (std::abs(Ak) > 1e-9 * scale)
        throw std::invalid_argument(
            "sigma_zz_assembled: amplitude not transverse (A.k != 0)");
    if (!(m.omega > 0.0))
        throw std::domain_error("sigma_zz_assembled: omega = 0");
    const auto& pc = constants_codata();
    const Vec3 C = cross(m.k, m.A);  // curl amplitudes; B_i = C_i/omega
    // plate averages: <E_x^2> = <E_y^2> = 0 (sin^2 k_z a = 0), <E_z^2> = A_z^2/4
    const double Ez2 = 0.25 * m.A[2] * m.A[2];
    const double E2 = Ez2;
    // <B_x^2>, <B_y^2> carry cos^2(k_z a) = 1; <B_z^2> = 0
    const double B2 =
        0.25 * (C[0] * C[0] + C[1] * C[1]) / (m.omega * m.omega);
    return pc.eps0 * Ez2 - 0.5 * (pc.eps0 * E2 + B2 / pc.mu0);
}

/// Mode multiplicity carried by the regulated sum so that its lambda -> 0
/// asymptotics reproduce the standard divergent + Casimir split. A literal
/// per-polarization evaluation of the continuum sum gives exactly 1/4 of
/// that split, term by term.
inline constexpr double kModeMultiplicity = 4.0;

namespace detail {

// 2/eps^3 - sum_{n>=1} n^2 e^{-n eps}, the defect of the regulated mode
// sum against its leading divergence. From the Bernoulli expansion of
// 1/(e^eps - 1) differentiated twice:
//   defect(eps) = eps/120 - eps^3/1512 + eps^5/28800 - ...
// The series is used below eps = 1 where the direct difference would
// cancel catastrophically; the direct form takes over beyond.
inline double quadratic_sum_defect(double eps) {
    if (eps < 1.0) {
        static const double b2k[] = {
            -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730,
            7.0 / 6, -3617.0 / 510, 43867.0 / 798, -174611.0 / 330,
            854513.0 / 138, -236364091.0 / 2730, 8553103.0 / 6};
        double sum = 0.0;
        double fact = 24.0;  // (2k)! starting at k = 2
        const double e2 = eps * eps;
        double ep = eps;  // eps^{2k-3}
        for (int k = 2; k <= 13; ++k) {
            const double coeff =
                -b2k[k - 2] * (2 * k - 1) * (2 * k - 2) / fact;
            sum += coeff * ep;
            ep *= e2;
            fact *= (2 * k + 1) * (2 * k + 2);
        }
        return sum;
    }
    const double x = std::exp(-eps);
    const double omx = -std::expm1(-eps);  // 1 - x without cancellation
    return 2.0 / (eps * eps * eps) - x * (1.0 + x) / (omx * omx * omx);
}

}  // namespace detail

/// Regulated zz force per unit area: the transverse continuum integral and
/// n_z sum of the per-mode stress weighted by e^{-lambda k}, which collapses
/// to the closed form
///   -g (hbar c pi / (8 a^3 lambda)) x(1+x)/(1-x)^3,  x = e^{-pi lambda/a},
/// with g the mode multiplicity. Negative (attraction); diverges as
/// lambda -> 0. Refuses lambda/a < 1e-12 where the closed form loses all
/// precision; use asymptotic_pressure there.
inline double regulated_pressure(double a, const CutoffParam& cutoff) {
    if (!(a > 0.0)) throw std::invalid_argument("regulated_pressure: a <= 0");
    validate(cutoff);
    const double ratio = cutoff.lambda / a;
    if (ratio < 1e-12)
        throw std::domain_error(
            "regulated_pressure: lambda/a < 1e-12 loses all precision in the "
            "closed form; use asymptotic_pressure instead");
    constexpr double pi = std::numbers::pi;
    const double eps = pi * ratio;
    const double x = std::exp(-eps);
    const double omx = -std::expm1(-eps);
    const double prefactor =
        kModeMultiplicity * hbar_c() * pi / (8.0 * a * a * a * cutoff.lambda);
    return -prefactor * x * (1.0 + x) / (omx * omx * omx);
}

struct AsymptoticPressure {
    double divergent_term;  ///< -hbar c/(pi^2 lambda^4), independent of a
    double finite_term;     ///< +pi^2 hbar c/(240 a^4), independent of lambda
};

/// Two-term small-lambda split of the regulated pressure. The divergent
/// term carries no dependence on the gap; the finite term is the Casimir
/// pressure magnitude and survives the lambda -> 0 limit.
inline AsymptoticPressure asymptotic_pressure(double a, const CutoffParam& cutoff) {
    if (!(a > 0.0)) throw std::invalid_argument("asymptotic_pressure: a <= 0");
    validate(cutoff);
    constexpr double pi = std::numbers::pi;
    const double l2 = cutoff.lambda * cutoff.lambda;
    const double a2 = a * a;
    return {-hbar_c() / (pi * pi * l2 * l2),
            pi * pi * hbar_c() / (240.0 * a2 * a2)};
}

/// regulated_pressure minus its divergent term, computed without the
/// catastrophic cancellation of forming the two huge values separately
/// (at lambda/a = 1e-3 the difference is ~4e-13 of either operand, beyond
/// double subtraction). Converges to the finite Casimir term as
/// lambda -> 0 with an O(lambda^2) remainder.
inline double regulated_residual(double a, const CutoffParam& cutoff) {
    if (!(a > 0.0)) throw std::invalid_argument("regulated_residual: a <= 0");
    validate(cutoff);
    constexpr double pi = std::numbers::pi;
    const double eps = pi * cutoff.lambda / a;
    const double prefactor =
        kModeMultiplicity * hbar_c() * pi / (8.0 * a * a * a * cutoff.lambda);
    return prefactor * detail::quadratic_sum_defect(eps);
}

/// Zero-temperature Casimir pressure magnitude pi^2 hbar c/(240 a^4).
inline double casimir_pressure(double a) {
    if (!(a > 0.0)) throw std::invalid_argument("casimir_pressure: a <= 0");
    constexpr double pi = std::numbers::pi;
    const double a2 = a * a;
    return pi * pi * hbar_c() / (240.0 * a2 * a2);
}

}  // namespace casimir
