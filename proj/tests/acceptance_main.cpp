// Acceptance suite: runs every headline requirement end to end at its
// stated tolerance and prints one PASS/FAIL line per criterion. Exits
// with the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "casimir/checks.hpp"
#include "casimir/constants.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/numerics.hpp"
#include "casimir/standing_wave.hpp"

using namespace casimir;
using std::numbers::pi;

namespace {

struct Gate {
    bool ok = true;
    std::string detail;
    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// ---- C1: CLI pressure value ------------------------------------------------

void c1_cli_pressure(Gate& g) {
    const std::string cmd = std::string(CASIMIR_CLI_PATH) + " pressure --gap 1e-6 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    g.require(pipe != nullptr, "could not launch CLI");
    if (!pipe) return;
    char buf[512];
    std::string out;
    while (fgets(buf, sizeof buf, pipe)) out += buf;
    const int rc = pclose(pipe);
    g.require(rc == 0, "CLI exit code " + std::to_string(rc));
    double a = 0.0, p = 0.0;
    bool parsed = false;
    std::istringstream is(out);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        parsed = std::sscanf(line.c_str(), "%lf , %lf", &a, &p) == 2;
        if (parsed) break;
    }
    g.require(parsed, "could not parse CSV row from: " + out);
    g.require(std::abs(p - 1.3001e-3) <= 1e-4 * 1.3001e-3,
              "pressure " + fmt(p) + " Pa vs 1.3001e-3");
    g.note("reported " + fmt(p) + " Pa");
}

// ---- C2: zero-T closure ----------------------------------------------------

void c2_zero_T_closure(Gate& g) {
    Tolerance tol;
    const QuadratureResult I = integrate_semi_infinite(
        [](double x) { return x == 0.0 ? 0.0 : x * x * (x / std::expm1(x)); }, 0.0,
        tol);
    const double pi4_15 = 6.493939402266829;
    g.require(std::abs(I.value - pi4_15) <= 1e-10 * pi4_15,
              "Bose quadrature " + fmt(I.value) + " vs pi^4/15");
    for (double a : {0.1e-6, 1e-6, 10e-6}) {
        const double target = pi * pi * hbar_c() / (240.0 * a * a * a * a);
        const double got = zero_T_force(a, tol);
        g.require(std::abs(got - target) <= 1e-8 * target,
                  "zero_T_force(a=" + fmt(a) + ") rel err " +
                      fmt(std::abs(got - target) / target));
    }
}

// ---- C3: two-route equality ------------------------------------------------

void c3_two_routes(Gate& g) {
    Tolerance tol;
    for (double a : {0.1e-6, 1e-6, 10e-6}) {
        const double sw = casimir_pressure(a);
        const double lif = zero_T_force(a, tol);
        g.require(std::abs(sw - lif) <= 1e-8 * sw,
                  "a=" + fmt(a) + " rel err " + fmt(std::abs(sw - lif) / sw));
    }
}

// ---- C4: cutoff asymptotics ------------------------------------------------

double oracle_regulated(double a, double lambda) {
    Tolerance qtol{1e-10, 0.0, 1'000'000};
    Tolerance stol{1e-14, 0.0, 100'000};
    auto term = [&](long n) {
        const double kz = pi * n / a;
        auto f = [lambda, kz](double rho) {
            const double k = std::hypot(rho, kz);
            return rho * kz * kz * std::exp(-lambda * k) / k;
        };
        return (pi / 2.0) * integrate_semi_infinite(f, 0.0, qtol).value;
    };
    return kModeMultiplicity * (-hbar_c() / (4.0 * pi * pi * a)) *
           sum_series(term, stol).value;
}

void c4_cutoff_asymptotics(Gate& g) {
    const double a = 1e-6;
    const double cas = casimir_pressure(a);

    const double res = regulated_residual(a, CutoffParam{1e-3 * a});
    g.require(std::abs(res / cas - 1.0) <= 1e-4,
              "residual at lambda/a=1e-3 rel err " + fmt(std::abs(res / cas - 1.0)));

    const double r1 = regulated_residual(a, CutoffParam{1e-2 * a}) - cas;
    const double r2 = regulated_residual(a, CutoffParam{5e-3 * a}) - cas;
    g.require(std::abs(r1 / r2 - 4.0) <= 0.8,
              "lambda^2 scaling ratio " + fmt(r1 / r2) + " vs 4");

    const double d1 = asymptotic_pressure(a, CutoffParam{1e-3 * a}).divergent_term;
    const double d2 = asymptotic_pressure(3e-6, CutoffParam{1e-3 * a}).divergent_term;
    g.require(std::abs(d1 - d2) <= 1e-12 * std::abs(d1),
              "divergent term depends on a");

    for (double ratio : {1e-1, 1e-2, 1e-3}) {
        const double closed = regulated_pressure(a, CutoffParam{ratio * a});
        const double brute = oracle_regulated(a, ratio * a);
        g.require(std::abs(closed - brute) <= 1e-8 * std::abs(closed),
                  "oracle mismatch at lambda/a=" + fmt(ratio) + " rel " +
                      fmt(std::abs(closed - brute) / std::abs(closed)));
    }
}

// ---- C5: Green's-function chain ---------------------------------------------

void c5_green_chain(Gate& g) {
    const CheckReport rep = green_check(1000, 42, 1e-12, 1e-6);
    for (const auto& l : rep.lines) {
        g.require(l.passed(), l.name + " worst " + fmt(l.worst_rel_err) + " > " +
                                  fmt(l.tolerance) + " at " + l.worst_detail);
        g.note(l.name + " worst " + fmt(l.worst_rel_err));
    }
}

// ---- C6: route equivalence --------------------------------------------------

void c6_route_equivalence(Gate& g) {
    Tolerance tol;
    for (auto [a, T] : {std::pair{1e-6, 300.0}, std::pair{5e-6, 100.0}}) {
        const double fq = force_qspace(a, T, tol).pressure;
        const double fp = force_pspace(a, T, tol).pressure;
        g.require(std::abs(fq - fp) <= 1e-8 * fp,
                  "(a=" + fmt(a) + ", T=" + fmt(T) + ") rel err " +
                      fmt(std::abs(fq - fp) / fp));
    }
}

// ---- C7: ratio law -----------------------------------------------------------

void c7_ratio_law(Gate& g) {
    Tolerance tol;
    for (double t : {0.01, 0.05, 0.1, 0.21835, 0.5, 1.0}) {
        const double r1 = ratio_R({t}, tol);
        const double r2 = ratio_R_oracle({t}, tol);
        g.require(std::abs(r1 - r2) <= 1e-8 * r1,
                  "oracle mismatch at t=" + fmt(t) + " rel " +
                      fmt(std::abs(r1 - r2) / r1));
    }
    double prev = 2.0;
    bool bounds = true, monotone = true;
    for (int i = 0; i < 200; ++i) {
        const double t = 1e-4 * std::pow(1e4, i / 199.0);
        const double R = ratio_R({t}, tol);
        bounds = bounds && R > 0.0 && R <= 1.0;
        monotone = monotone && R < prev;
        prev = R;
    }
    g.require(bounds, "R left (0, 1] on the grid");
    g.require(monotone, "R not strictly decreasing on the grid");
}

// ---- C8: small-t slope --------------------------------------------------------

void c8_small_t_slope(Gate& g) {
    Tolerance tol;
    const double slope_ref = 60.0 * 1.2020569031595943 / (pi * pi * pi);
    const double s1 = (1.0 - ratio_R({1e-3}, tol)) / 1e-3;
    const double s2 = (1.0 - ratio_R({5e-4}, tol)) / 5e-4;
    const double extrap = 2.0 * s2 - s1;  // removes any residual linear drift
    for (double s : {s1, s2, extrap})
        g.require(std::abs(s - slope_ref) <= 0.01 * slope_ref,
                  "slope " + fmt(s) + " vs " + fmt(slope_ref));
    g.note("slope " + fmt(extrap) + " vs 60 zeta(3)/pi^3 = " + fmt(slope_ref));
}

// ---- C9: scaling invariance ----------------------------------------------------

void c9_scaling(Gate& g) {
    Tolerance tol;
    const double R1 = ratio_from_SI(1e-6, 300.0, tol);
    const double R2 = ratio_from_SI(2e-6, 150.0, tol);
    g.require(std::abs(R1 - R2) <= 1e-10 * R1,
              "R(1um,300K)=" + fmt(R1) + " vs R(2um,150K)=" + fmt(R2));
}

// ---- C10: Hargreaves comparison -------------------------------------------------

void c10_hargreaves(Gate& g) {
    Tolerance tol;
    const double t = constants_codata().kappa * 5e-6 * 100.0;
    g.require(std::abs(t - 0.21835) <= 1e-4, "t = " + fmt(t));
    const double correction = 1.0 - hargreaves_R({t});
    g.require(std::abs(correction - 1.21e-2) <= 5e-5,
              "correction " + fmt(correction) + " vs 1.21e-2");
    g.require(std::abs(correction - 1.2e-2) <= 5e-4,
              "correction does not match the 1.2e-2 reference");
    const double R = ratio_R({t}, tol);
    g.require((1.0 - R) / correction > 10.0,
              "1-R only " + fmt((1.0 - R) / correction) + "x the quartic correction");
    g.note("1-R = " + fmt(1.0 - R) + " vs quartic " + fmt(correction));
}

// ---- C11: standing-wave identities ----------------------------------------------

void c11_mode_identities(Gate& g) {
    const CheckReport rep = modes_check(1000, 42, false, 1e-6, 1e-12);
    for (const auto& l : rep.lines)
        g.require(l.passed(), l.name + " worst " + fmt(l.worst_rel_err) + " > " +
                                  fmt(l.tolerance) + " at " + l.worst_detail);
}

struct Criterion {
    int id;
    const char* label;
    double budget_s;
    std::function<void(Gate&)> fn;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "CLI Casimir pressure at 1 um (rel 1e-4)", 1.0, c1_cli_pressure},
        {2, "zero-T closure: quadrature pi^4/15 and pressure law (rel 1e-8)", 1.0,
         c2_zero_T_closure},
        {3, "two-route equality standing-wave vs zero-T Lifshitz (rel 1e-8)", 1.0,
         c3_two_routes},
        {4, "cutoff asymptotics: residual, lambda^2 scaling, oracle (rel 1e-8)", 5.0,
         c4_cutoff_asymptotics},
        {5, "Green's chain: bracket -16 pi w/Delta (rel 1e-12), operator FD (1e-6)",
         5.0, c5_green_chain},
        {6, "route equivalence q-space vs p-space (rel 1e-8)", 5.0,
         c6_route_equivalence},
        {7, "ratio law: oracle match (rel 1e-8), 0 < R <= 1 strictly decreasing",
         30.0, c7_ratio_law},
        {8, "small-t slope 60 zeta(3)/pi^3 within 1%", 30.0, c8_small_t_slope},
        {9, "scaling invariance R(a,T) = R(2a,T/2) (rel 1e-10)", 5.0, c9_scaling},
        {10, "Hargreaves quartic at 5 um/100 K: 1.21e-2, >10x below 1-R", 5.0,
         c10_hargreaves},
        {11, "standing-wave identities on 1000 seeded modes", 5.0,
         c11_mode_identities},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        Gate gate;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.fn(gate);
        } catch (const std::exception& e) {
            gate.require(false, std::string("exception: ") + e.what());
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (elapsed > c.budget_s)
            gate.require(false, "runtime " + fmt(elapsed) + " s over budget " +
                                    fmt(c.budget_s) + " s");
        if (!gate.ok) ++failures;
        std::printf("%s  C%-2d %s [%.2f s]%s%s\n", gate.ok ? "PASS" : "FAIL", c.id,
                    c.label, elapsed, gate.detail.empty() ? "" : " -- ",
                    gate.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures;
}
