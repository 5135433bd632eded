// Output formatting: round-trip-precision CSV, the single-object JSON
// schema shared by all CLI subcommands, and minimal static SVG polyline
// plots for ratio sweeps. All emission is deterministic; CSV uses LF
// endings and '.' decimals regardless of environment.

#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "casimir/constants.hpp"
#include "casimir/sweep.hpp"

namespace casimir {

/// Where and how a command writes its result. svg is only meaningful for
/// sweep output (one polyline per gap); the CLI rejects it elsewhere.
struct OutputSpec {
    enum class Format { csv, json, svg } format = Format::csv;
    std::string path;  ///< empty = standard output
};

/// Shortest exact decimal form of a double (%.17g round-trips).
inline std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string fmt_fixed(double v, const char* spec) {
    char buf[48];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

/// `# col: ...` comment header naming columns and units, per the CSV
/// convention used by every subcommand.
inline void csv_header(std::ostream& os, const std::string& columns) {
    os << "# col: " << columns << "\n";
}

inline void csv_row(std::ostream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os << ", ";
        os << cells[i];
    }
    os << "\n";
}

/// The one-object-per-invocation JSON envelope:
/// {command, inputs, outputs, tolerances, constants_version}.
inline nlohmann::json json_envelope(const std::string& command,
                                    nlohmann::json inputs, nlohmann::json outputs,
                                    const Tolerance& tol) {
    return nlohmann::json{{"command", command},
                          {"inputs", std::move(inputs)},
                          {"outputs", std::move(outputs)},
                          {"tolerances",
                           {{"rel", tol.rel}, {"abs", tol.abs}, {"max_evals", tol.max_evals}}},
                          {"constants_version", kConstantsVersion}};
}

/// Static SVG 1.1 plot of R versus T, one polyline per gap, with axes,
/// ticks and a legend. Rows must be gap-major as produced by ratio_sweep.
inline std::string svg_ratio_plot(const std::vector<SweepRow>& rows) {
    const double W = 800, H = 560;
    const double ml = 70, mr = 24, mt = 24, mb = 56;
    double tmin = rows.front().T, tmax = rows.front().T;
    for (const auto& r : rows) {
        tmin = std::min(tmin, r.T);
        tmax = std::max(tmax, r.T);
    }
    if (tmax == tmin) tmax = tmin + 1.0;
    const double rmin = 0.0, rmax = 1.05;
    auto px = [&](double T) { return ml + (T - tmin) / (tmax - tmin) * (W - ml - mr); };
    auto py = [&](double R) { return H - mb - (R - rmin) / (rmax - rmin) * (H - mt - mb); };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b"};
    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" "
         "height=\"560\" viewBox=\"0 0 800 560\">\n";
    s += "<rect width=\"800\" height=\"560\" fill=\"white\"/>\n";
    // axes
    s += "<line x1=\"" + fmt_fixed(ml, "%.1f") + "\" y1=\"" + fmt_fixed(py(rmin), "%.1f") +
         "\" x2=\"" + fmt_fixed(W - mr, "%.1f") + "\" y2=\"" + fmt_fixed(py(rmin), "%.1f") +
         "\" stroke=\"black\"/>\n";
    s += "<line x1=\"" + fmt_fixed(ml, "%.1f") + "\" y1=\"" + fmt_fixed(py(rmin), "%.1f") +
         "\" x2=\"" + fmt_fixed(ml, "%.1f") + "\" y2=\"" + fmt_fixed(mt, "%.1f") +
         "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {  // x ticks
        const double T = tmin + (tmax - tmin) * i / 5.0;
        s += "<line x1=\"" + fmt_fixed(px(T), "%.1f") + "\" y1=\"" + fmt_fixed(py(rmin), "%.1f") +
             "\" x2=\"" + fmt_fixed(px(T), "%.1f") + "\" y2=\"" +
             fmt_fixed(py(rmin) + 6, "%.1f") + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + fmt_fixed(px(T), "%.1f") + "\" y=\"" +
             fmt_fixed(py(rmin) + 22, "%.1f") +
             "\" font-size=\"12\" text-anchor=\"middle\">" + fmt_fixed(T, "%.4g") +
             "</text>\n";
    }
    for (int i = 0; i <= 5; ++i) {  // y ticks
        const double R = 0.2 * i;
        s += "<line x1=\"" + fmt_fixed(ml - 6, "%.1f") + "\" y1=\"" + fmt_fixed(py(R), "%.1f") +
             "\" x2=\"" + fmt_fixed(ml, "%.1f") + "\" y2=\"" + fmt_fixed(py(R), "%.1f") +
             "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + fmt_fixed(ml - 10, "%.1f") + "\" y=\"" +
             fmt_fixed(py(R) + 4, "%.1f") +
             "\" font-size=\"12\" text-anchor=\"end\">" + fmt_fixed(R, "%.1f") + "</text>\n";
    }
    s += "<text x=\"" + fmt_fixed((ml + W - mr) / 2, "%.1f") + "\" y=\"" +
         fmt_fixed(H - 14, "%.1f") +
         "\" font-size=\"14\" text-anchor=\"middle\">T (K)</text>\n";
    s += "<text x=\"18\" y=\"" + fmt_fixed((mt + H - mb) / 2, "%.1f") +
         "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         fmt_fixed((mt + H - mb) / 2, "%.1f") + ")\">R</text>\n";

    // one polyline per gap (rows are gap-major)
    std::vector<std::pair<double, std::string>> series;  // gap -> points
    for (const auto& r : rows) {
        if (series.empty() || series.back().first != r.a) series.push_back({r.a, ""});
        series.back().second += fmt_fixed(px(r.T), "%.2f") + "," + fmt_fixed(py(r.R), "%.2f") + " ";
    }
    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = palette[i % 6];
        s += "<polyline fill=\"none\" stroke=\"";
        s += color;
        s += "\" stroke-width=\"1.5\" points=\"" + series[i].second + "\"/>\n";
        s += "<text x=\"" + fmt_fixed(W - mr - 8, "%.1f") + "\" y=\"" +
             fmt_fixed(mt + 18.0 * (i + 1), "%.1f") + "\" font-size=\"12\" text-anchor=\"end\" fill=\"";
        s += color;
        s += "\">a = " + fmt_fixed(series[i].first * 1e6, "%.4g") + " um</text>\n";
    }
    s += "</svg>\n";
    return s;
}

}  // namespace casimir
