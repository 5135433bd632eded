// casimir: command-line front end.
//
// Subcommands: pressure, ratio-sweep, cutoff-scan, green-check, modes-check.
// Global flags: --format {csv|json|svg}, --out PATH, --rel-tol X, --seed N.
// Exit codes: 0 success, 1 numerical/runtime failure, 2 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "casimir/checks.hpp"
#include "casimir/constants.hpp"
#include "casimir/io.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/standing_wave.hpp"
#include "casimir/sweep.hpp"

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GlobalOpts {
    std::string format = "csv";
    std::string out;  // empty = stdout
    double rel_tol = 1e-10;
    std::uint64_t seed = 42;
    casimir::Tolerance tol() const { return {rel_tol, 0.0, 1'000'000}; }
    casimir::OutputSpec output() const {
        using F = casimir::OutputSpec::Format;
        return {format == "json" ? F::json : format == "svg" ? F::svg : F::csv, out};
    }
};

int emit(const GlobalOpts& g, const std::string& payload) {
    const casimir::OutputSpec spec = g.output();
    if (spec.path.empty()) {
        std::cout << payload;
        return 0;
    }
    std::ofstream f(spec.path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open output path: " << spec.path << "\n";
        return 1;
    }
    f << payload;
    f.flush();
    if (!f.good()) {
        std::cerr << "error: write failed: " << spec.path << "\n";
        return 1;
    }
    return 0;
}

void require_format(const GlobalOpts& g, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (g.format == a) return;
    throw UsageError("format '" + g.format + "' is not valid for this subcommand");
}

// ---------------------------------------------------------------- pressure

int run_pressure(const GlobalOpts& g, double gap, std::optional<double> temp) {
    require_format(g, {"csv", "json"});
    const casimir::Tolerance tol = g.tol();
    const double cas = casimir::casimir_pressure(gap);
    std::ostringstream os;
    json outputs{{"casimir_Pa", cas}};
    json inputs{{"gap_m", gap}};
    if (temp) {
        inputs["temp_K"] = *temp;
        const double t = casimir::constants_codata().kappa * gap * *temp;
        double R, lif;
        std::string route;
        if (t >= 1e-5) {
            R = casimir::ratio_from_SI(gap, *temp, tol);
            lif = casimir::force_pspace(gap, *temp, tol).pressure;
            route = "p-space";
        } else {
            // below the Matsubara-sum budget the small-t limit is exact
            R = casimir::ratio_from_SI(gap, *temp, tol);
            lif = cas * R;
            route = "zero-T-limit";
        }
        outputs["lifshitz_Pa"] = lif;
        outputs["R"] = R;
        outputs["t"] = t;
        outputs["route"] = route;
        casimir::csv_header(os, "a_m, T_K, t, casimir_Pa, lifshitz_Pa, R");
        casimir::csv_row(os, {casimir::fmt_full(gap), casimir::fmt_full(*temp),
                              casimir::fmt_full(t), casimir::fmt_full(cas),
                              casimir::fmt_full(lif), casimir::fmt_full(R)});
    } else {
        inputs["temp_K"] = nullptr;
        casimir::csv_header(os, "a_m, casimir_Pa");
        casimir::csv_row(os, {casimir::fmt_full(gap), casimir::fmt_full(cas)});
    }
    if (g.format == "json")
        return emit(g, casimir::json_envelope("pressure", inputs, outputs, tol).dump(2) + "\n");
    return emit(g, os.str());
}

// ------------------------------------------------------------- ratio-sweep

int run_ratio_sweep(const GlobalOpts& g, const casimir::SweepSpec& spec) {
    require_format(g, {"csv", "json", "svg"});
    const casimir::Tolerance tol = g.tol();
    const std::vector<casimir::SweepRow> rows = casimir::ratio_sweep(spec, tol);
    if (g.format == "svg") return emit(g, casimir::svg_ratio_plot(rows));
    if (g.format == "json") {
        json jrows = json::array();
        for (const auto& r : rows)
            jrows.push_back({{"a_m", r.a}, {"T_K", r.T}, {"t", r.t}, {"R", r.R}});
        json inputs{{"gaps_m", spec.gaps},
                    {"temp_min_K", spec.temp_min},
                    {"temp_max_K", spec.temp_max},
                    {"points", spec.points},
                    {"scale", spec.scale == casimir::SweepSpec::Scale::log ? "log" : "linear"}};
        return emit(g, casimir::json_envelope("ratio-sweep", inputs,
                                              json{{"rows", jrows}}, tol).dump(2) + "\n");
    }
    std::ostringstream os;
    casimir::csv_header(os, "a_m, T_K, t, R");
    for (const auto& r : rows)
        casimir::csv_row(os, {casimir::fmt_full(r.a), casimir::fmt_full(r.T),
                              casimir::fmt_full(r.t), casimir::fmt_full(r.R)});
    return emit(g, os.str());
}

// ------------------------------------------------------------- cutoff-scan

int run_cutoff_scan(const GlobalOpts& g, double gap, std::vector<double> lambdas) {
    require_format(g, {"csv", "json"});
    const casimir::Tolerance tol = g.tol();
    const double cas = casimir::casimir_pressure(gap);
    std::ostringstream os;
    casimir::csv_header(os, "lambda_m, regulated_Pa, divergent_Pa, residual_Pa, "
                            "casimir_Pa, status");
    json jrows = json::array();
    for (double lam : lambdas) {
        if (!(lam > 0.0)) throw UsageError("cutoff lambda must be > 0");
        const casimir::CutoffParam cutoff{lam};
        const auto asym = casimir::asymptotic_pressure(gap, cutoff);
        const bool guarded = lam / gap < 1e-12;
        double reg = std::numeric_limits<double>::quiet_NaN();
        double res = std::numeric_limits<double>::quiet_NaN();
        if (!guarded) {
            reg = casimir::regulated_pressure(gap, cutoff);
            res = casimir::regulated_residual(gap, cutoff);
        }
        const char* status = guarded ? "guarded" : "ok";
        casimir::csv_row(os, {casimir::fmt_full(lam), casimir::fmt_full(reg),
                              casimir::fmt_full(asym.divergent_term),
                              casimir::fmt_full(res), casimir::fmt_full(cas), status});
        json row{{"lambda_m", lam},
                 {"divergent_Pa", asym.divergent_term},
                 {"casimir_Pa", cas},
                 {"status", status}};
        if (!guarded) {
            row["regulated_Pa"] = reg;
            row["residual_Pa"] = res;
        } else {
            row["regulated_Pa"] = nullptr;
            row["residual_Pa"] = nullptr;
        }
        jrows.push_back(row);
    }
    if (g.format == "json")
        return emit(g, casimir::json_envelope("cutoff-scan",
                                              json{{"gap_m", gap}, {"lambdas_m", lambdas}},
                                              json{{"rows", jrows}}, tol).dump(2) + "\n");
    return emit(g, os.str());
}

// ------------------------------------------------------------ check suites

int run_check(const GlobalOpts& g, const std::string& name,
              const casimir::CheckReport& report, long samples) {
    require_format(g, {"csv", "json"});
    std::ostringstream os;
    os << "# " << name << ": samples=" << samples << " seed=" << g.seed << "\n";
    casimir::csv_header(os, "check, samples, worst_rel_err, tol, status");
    for (const auto& l : report.lines) {
        casimir::csv_row(os, {l.name, std::to_string(l.samples),
                              casimir::fmt_full(l.worst_rel_err),
                              casimir::fmt_full(l.tolerance),
                              l.passed() ? "pass" : "FAIL"});
        if (!l.passed())
            os << "# worst " << l.name << ": " << l.worst_detail << "\n";
    }
    os << "# overall: " << (report.passed() ? "pass" : "FAIL") << "\n";
    int rc = 0;
    if (g.format == "json") {
        json checks = json::array();
        for (const auto& l : report.lines)
            checks.push_back({{"check", l.name},
                              {"samples", l.samples},
                              {"worst_rel_err", l.worst_rel_err},
                              {"tol", l.tolerance},
                              {"pass", l.passed()},
                              {"worst", l.worst_detail}});
        rc = emit(g, casimir::json_envelope(name,
                                            json{{"samples", samples}, {"seed", g.seed}},
                                            json{{"checks", checks}, {"pass", report.passed()}},
                                            g.tol()).dump(2) + "\n");
    } else {
        rc = emit(g, os.str());
    }
    if (rc != 0) return rc;
    if (!report.passed()) {
        std::cerr << "error: " << name << " failed; worst offenders listed in report\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Casimir pressure between perfectly reflecting parallel plates:\n"
                 "zero-point standing-wave route, finite-temperature Matsubara\n"
                 "Green's-function route, and the thermal ratio R(kappa*a*T)."};
    app.fallthrough(true);
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--format", g.format, "Output format")
        ->check(CLI::IsMember({"csv", "json", "svg"}))
        ->capture_default_str();
    app.add_option("--out", g.out, "Output path (default: stdout)");
    app.add_option("--rel-tol", g.rel_tol, "Relative tolerance for quadrature/series")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--seed", g.seed, "Seed for randomized check suites")
        ->capture_default_str();

    // pressure
    double gap = 0.0;
    std::optional<double> temp;
    auto* p = app.add_subcommand("pressure",
                                 "Zero-T Casimir pressure; with --temp also the "
                                 "finite-T Lifshitz pressure and R");
    p->add_option("--gap", gap, "Plate separation (m)")
        ->required()
        ->check(CLI::PositiveNumber);
    p->add_option("--temp", temp, "Temperature (K)")->check(CLI::NonNegativeNumber);

    // ratio-sweep
    casimir::SweepSpec spec;
    spec.gaps = {0.5e-6, 1e-6, 2e-6, 5e-6};
    std::string scale = "linear";
    auto* rs = app.add_subcommand("ratio-sweep",
                                  "Thermal ratio R over a (gap, temperature) grid");
    rs->add_option("--gaps", spec.gaps, "Plate separations (m)")
        ->delimiter(',')
        ->capture_default_str();
    rs->add_option("--temp-min", spec.temp_min, "Lowest temperature (K)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    rs->add_option("--temp-max", spec.temp_max, "Highest temperature (K)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    rs->add_option("--points", spec.points, "Grid points per gap")
        ->check(CLI::Range(2, 100000))
        ->capture_default_str();
    rs->add_option("--scale", scale, "Temperature grid spacing")
        ->check(CLI::IsMember({"linear", "log"}))
        ->capture_default_str();

    // cutoff-scan
    double cs_gap = 0.0;
    std::vector<double> lambdas;
    auto* cs = app.add_subcommand("cutoff-scan",
                                  "Regulated standing-wave pressure vs cutoff length");
    cs->add_option("--gap", cs_gap, "Plate separation (m)")
        ->required()
        ->check(CLI::PositiveNumber);
    cs->add_option("--lambdas", lambdas, "Cutoff lengths (m)")
        ->required()
        ->delimiter(',');

    // green-check / modes-check
    long samples = 1000;
    bool inject = false;
    auto* gc = app.add_subcommand("green-check",
                                  "Verify the Green's-function identities on "
                                  "seeded random samples");
    gc->add_option("--samples", samples, "Number of random samples")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    auto* mc = app.add_subcommand("modes-check",
                                  "Verify the standing-wave mode identities on "
                                  "seeded random samples");
    mc->add_option("--samples", samples, "Number of random samples")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    mc->add_flag("--inject-nontransverse", inject)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\nRun with --help for usage.\n";
        return 2;
    }

    try {
        if (p->parsed()) return run_pressure(g, gap, temp);
        if (rs->parsed()) {
            spec.scale = scale == "log" ? casimir::SweepSpec::Scale::log
                                        : casimir::SweepSpec::Scale::linear;
            return run_ratio_sweep(g, spec);
        }
        if (cs->parsed()) return run_cutoff_scan(g, cs_gap, lambdas);
        if (gc->parsed())
            return run_check(g, "green-check", casimir::green_check(samples, g.seed),
                             samples);
        if (mc->parsed())
            return run_check(g, "modes-check",
                             casimir::modes_check(samples, g.seed, inject), samples);
        std::cerr << "no subcommand given\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\nRun with --help for usage.\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const casimir::ConvergenceError& e) {
        std::cerr << "numerical failure: " << e.what()
                  << " (partial=" << e.partial_value()
                  << ", estimate=" << e.error_estimate()
                  << ", evaluations=" << e.evaluations() << ")\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
