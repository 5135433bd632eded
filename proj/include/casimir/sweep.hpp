// Parameter sweeps of the thermal ratio R over (gap, temperature) grids.

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "casimir/lifshitz.hpp"

namespace casimir {

/// Grid request: one temperature grid applied to every gap.
struct SweepSpec {
    std::vector<double> gaps;  ///< plate separations (m), all > 0
    double temp_min = 0.0;     ///< K
    double temp_max = 300.0;   ///< K
    int points = 60;           ///< >= 2
    enum class Scale { linear, log } scale = Scale::linear;
};

inline void validate(const SweepSpec& s) {
    if (s.points < 2) throw std::invalid_argument("SweepSpec: points >= 2");
    if (!(s.temp_min >= 0.0)) throw std::invalid_argument("SweepSpec: temp_min < 0");
    if (!(s.temp_max > s.temp_min))
        throw std::invalid_argument("SweepSpec: temp_max must exceed temp_min");
    if (s.gaps.empty()) throw std::invalid_argument("SweepSpec: no gaps");
    for (double a : s.gaps)
        if (!(a > 0.0)) throw std::invalid_argument("SweepSpec: gap <= 0");
    if (s.scale == SweepSpec::Scale::log && !(s.temp_min > 0.0))
        throw std::invalid_argument("SweepSpec: log scale requires temp_min > 0");
}

struct SweepRow {
    double a;  ///< gap (m)
    double T;  ///< temperature (K)
    double t;  ///< kappa a T
    double R;  ///< thermal ratio
};

inline std::vector<double> temperature_grid(const SweepSpec& s) {
    std::vector<double> T(s.points);
    if (s.scale == SweepSpec::Scale::log) {
        const double lmin = std::log(s.temp_min), lmax = std::log(s.temp_max);
        for (int i = 0; i < s.points; ++i)
            T[i] = std::exp(lmin + (lmax - lmin) * i / (s.points - 1));
    } else {
        for (int i = 0; i < s.points; ++i)
            T[i] = s.temp_min + (s.temp_max - s.temp_min) * i / (s.points - 1);
    }
    return T;
}

/// Rows ordered gap-major, temperature ascending within each gap.
inline std::vector<SweepRow> ratio_sweep(const SweepSpec& spec,
                                         const Tolerance& tol = {}) {
    validate(spec);
    const std::vector<double> T = temperature_grid(spec);
    std::vector<SweepRow> rows;
    rows.reserve(spec.gaps.size() * T.size());
    const double kappa = constants_codata().kappa;
    for (double a : spec.gaps)
        for (double temp : T)
            rows.push_back({a, temp, kappa * a * temp, ratio_from_SI(a, temp, tol)});
    return rows;
}

}  // namespace casimir
