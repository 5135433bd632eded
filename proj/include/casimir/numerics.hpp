// Reusable numerical kernels: adaptive Gauss-Kronrod quadrature on finite
// and semi-infinite intervals, and series summation with a certified
// geometric tail bound. Every routine reports value, error estimate and
// evaluation count, and fails loudly (with partial results attached)
// instead of returning silent garbage.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace casimir {

/// Accuracy request for a quadrature or series evaluation.
/// Convergence target is max(abs, rel*|result|).
struct Tolerance {
    double rel = 1e-10;
    double abs = 0.0;
    long max_evals = 1'000'000;
};

inline void validate(const Tolerance& tol) {
    if (!(tol.rel > 0.0) || !(tol.abs >= 0.0) || tol.max_evals < 1)
        throw std::invalid_argument(
            "Tolerance: need rel > 0, abs >= 0, max_evals >= 1");
}

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;  ///< internal estimate, >= 0
    long evaluations = 0;         ///< integrand calls, <= tol.max_evals
};

struct SeriesResult {
    double value = 0.0;
    double error_estimate = 0.0;  ///< certified tail bound at truncation
    long terms_used = 0;
};

/// Thrown when a kernel cannot meet its tolerance within max_evals
/// (or detects a precondition violation mid-flight). Carries the best
/// partial result so callers can diagnose.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double partial_value,
                     double error_estimate, long evaluations)
        : std::runtime_error(what),
          partial_value_(partial_value),
          error_estimate_(error_estimate),
          evaluations_(evaluations) {}

    double partial_value() const { return partial_value_; }
    double error_estimate() const { return error_estimate_; }
    long evaluations() const { return evaluations_; }

private:
    double partial_value_;
    double error_estimate_;
    long evaluations_;
};

namespace detail {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK dqk15 constants).
inline constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kK15Weights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

// Gauss-7 weights for nodes kGK15Nodes[1], [3], [5], [7].
inline constexpr double kG7Weights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelEstimate {
    double value;   // K15 result
    double error;   // QUADPACK-style error heuristic
    double resabs;  // K15 estimate of integral of |f|
};

// One K15 application to f on [a, b]; 15 integrand calls.
inline PanelEstimate kronrod15(const std::function<double(double)>& f,
                               double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    fv[14] = f(c);
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kGK15Nodes[i];
        fv[2 * i] = f(c - dx);
        fv[2 * i + 1] = f(c + dx);
    }
    double resk = kK15Weights[7] * fv[14];
    double resg = kG7Weights[3] * fv[14];
    double resabs = kK15Weights[7] * std::abs(fv[14]);
    for (int i = 0; i < 7; ++i) {
        const double sum = fv[2 * i] + fv[2 * i + 1];
        resk += kK15Weights[i] * sum;
        resabs += kK15Weights[i] * (std::abs(fv[2 * i]) + std::abs(fv[2 * i + 1]));
        if (i % 2 == 1) resg += kG7Weights[i / 2] * sum;
    }
    // resasc: deviation of f from its panel mean, for the scale-invariant
    // error heuristic of QUADPACK.
    const double mean = 0.5 * resk;
    double resasc = kK15Weights[7] * std::abs(fv[14] - mean);
    for (int i = 0; i < 7; ++i)
        resasc += kK15Weights[i] *
                  (std::abs(fv[2 * i] - mean) + std::abs(fv[2 * i + 1] - mean));
    resasc *= std::abs(h);

    const double value = resk * h;
    if (!std::isfinite(value))
        throw ConvergenceError("quadrature: integrand returned non-finite value",
                               0.0, std::numeric_limits<double>::infinity(), 15);
    double err = std::abs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    const double floor = 50.0 * eps * resabs * std::abs(h);
    if (floor > 0.0) err = std::max(err, floor);
    return {value, err, resabs * std::abs(h)};
}

struct Panel {
    double a, b;
    double value, error, resabs;
    const std::function<double(double)>* f;
};

struct PanelWorse {
    bool operator()(const Panel& x, const Panel& y) const {
        return x.error < y.error;
    }
};

// Globally adaptive refinement over a set of seed panels (which may view
// different integrands, e.g. a finite part plus a mapped tail). Stops when
// the summed error estimate meets max(tol.abs, tol.rel*|value|) or the
// roundoff floor; throws ConvergenceError when max_evals is exhausted first.
inline QuadratureResult adapt_panels(std::vector<Panel> seeds,
                                     const Tolerance& tol, long evals_used) {
    const double eps = std::numeric_limits<double>::epsilon();
    long evals = evals_used;
    std::priority_queue<Panel, std::vector<Panel>, PanelWorse> active;
    std::vector<Panel> done;  // panels too narrow to split further
    double done_value = 0.0, done_error = 0.0;
    double act_value = 0.0, act_error = 0.0, resabs = 0.0;
    for (auto& p : seeds) {
        act_value += p.value;
        act_error += p.error;
        resabs += p.resabs;
        active.push(p);
    }
    auto target = [&](double total) {
        return std::max({tol.abs, tol.rel * std::abs(total), 50.0 * eps * resabs});
    };
    while (!active.empty()) {
        const double total = done_value + act_value;
        const double total_err = done_error + act_error;
        if (total_err <= target(total)) break;
        if (evals + 30 > tol.max_evals)
            throw ConvergenceError("quadrature: max_evals exhausted", total,
                                   total_err, evals);
        Panel worst = active.top();
        active.pop();
        act_value -= worst.value;
        act_error -= worst.error;
        resabs -= worst.resabs;
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // width at representable resolution; cannot refine further
            done_value += worst.value;
            done_error += worst.error;
            resabs += worst.resabs;
            done.push_back(worst);
            continue;
        }
        for (auto [lo, hi] : {std::pair{worst.a, mid}, std::pair{mid, worst.b}}) {
            PanelEstimate e = kronrod15(*worst.f, lo, hi);
            evals += 15;
            act_value += e.value;
            act_error += e.error;
            resabs += e.resabs;
            active.push(Panel{lo, hi, e.value, e.error, e.resabs, worst.f});
        }
    }
    // the incremental running sums steer refinement; the reported result is
    // re-accumulated from the surviving panels so it carries no update drift
    double value = 0.0, error = 0.0;
    for (const auto& p : done) {
        value += p.value;
        error += p.error;
    }
    while (!active.empty()) {
        value += active.top().value;
        error += active.top().error;
        active.pop();
    }
    return {value, error, evals};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of f over the finite interval [a, b].
template <class F>
QuadratureResult integrate_finite(F&& f, double a, double b,
                                  const Tolerance& tol = {}) {
    validate(tol);
    if (!(a < b)) throw std::invalid_argument("integrate_finite: need a < b");
    const std::function<double(double)> fn = std::forward<F>(f);
    detail::PanelEstimate e = detail::kronrod15(fn, a, b);
    std::vector<detail::Panel> seeds{{a, b, e.value, e.error, e.resabs, &fn}};
    return detail::adapt_panels(std::move(seeds), tol, 15);
}

/// Adaptive integration of f over [lower, inf) for integrands that decay
/// at least exponentially. Strategy: probe a geometric ladder of points to
/// locate the integrand's support and decay rate, integrate the resolved
/// finite part [lower, M] with adaptive panels, and map the tail [M, inf)
/// to (0, 1] by x = M - ln(u)/alpha with alpha the measured decay rate.
template <class F>
QuadratureResult integrate_semi_infinite(F&& f, double lower,
                                         const Tolerance& tol = {}) {
    validate(tol);
    if (!std::isfinite(lower))
        throw std::invalid_argument("integrate_semi_infinite: lower not finite");
    const std::function<double(double)> fn = std::forward<F>(f);

    // Probe ladder: lower, then lower + 2^j for j = -10 .. 62.
    std::vector<double> xs, fs;
    long evals = 0;
    auto probe = [&](double x) {
        if (evals + 1 > tol.max_evals)
            throw ConvergenceError("quadrature: max_evals exhausted while probing",
                                   0.0, std::numeric_limits<double>::infinity(),
                                   evals);
        const double v = fn(x);
        ++evals;
        if (std::isnan(v))
            throw ConvergenceError("quadrature: integrand returned NaN", 0.0,
                                   std::numeric_limits<double>::infinity(), evals);
        xs.push_back(x);
        fs.push_back(v);
    };
    probe(lower);
    double peak = std::abs(fs[0]);
    std::size_t peak_idx = 0;
    for (int j = -10; j <= 62; ++j) {
        const double x = lower + std::ldexp(1.0, j);
        if (!(x > xs.back())) continue;  // skip steps below resolution
        probe(x);
        const double m = std::abs(fs.back());
        if (m > peak) {
            peak = m;
            peak_idx = xs.size() - 1;
        }
    }
    if (peak == 0.0) return {0.0, 0.0, evals};

    // End of the significant range: last probe beyond the peak that still
    // carries more than 1e-8 of the peak magnitude (or tol.abs, when the
    // caller set an absolute floor larger than that).
    const double sig = std::max(tol.abs, 1e-8 * peak);
    std::size_t last_sig = peak_idx;
    for (std::size_t i = peak_idx; i < xs.size(); ++i)
        if (std::abs(fs[i]) > sig) last_sig = i;
    if (last_sig + 1 >= xs.size())
        throw ConvergenceError(
            "integrate_semi_infinite: integrand does not decay on [lower, inf)",
            0.0, std::numeric_limits<double>::infinity(), evals);
    const std::size_t cut = last_sig + 1;
    const double M = xs[cut];

    // Decay rate from the last pair of non-zero probes (pure exponential
    // decay would make the tail map exact).
    double alpha = 0.0;
    {
        std::size_t hi = cut;
        while (hi > 0 && fs[hi] == 0.0) --hi;
        if (hi > 0 && fs[hi] != 0.0 && fs[hi - 1] != 0.0) {
            const double r = std::abs(fs[hi - 1]) / std::abs(fs[hi]);
            if (r > 1.0) alpha = std::log(r) / (xs[hi] - xs[hi - 1]);
        }
        if (!(alpha > 0.0) || !std::isfinite(alpha))
            alpha = 1.0 / (xs[cut] - xs[cut - 1]);
    }
    const std::function<double(double)> tail = [&fn, M, alpha](double u) {
        return fn(M - std::log(u) / alpha) / (alpha * u);
    };

    // Seed panels: merge the sub-significant prefix into one panel, one
    // panel per probe gap across the significant range, one mapped tail.
    std::vector<detail::Panel> seeds;
    std::size_t start = 0;
    while (start + 1 < cut && std::abs(fs[start]) <= 1e-3 * sig &&
           std::abs(fs[start + 1]) <= 1e-3 * sig)
        ++start;
    auto push_panel = [&](const std::function<double(double)>& g, double a,
                          double b) {
        double partial = 0.0;
        for (const auto& p : seeds) partial += p.value;
        if (evals + 15 > tol.max_evals)
            throw ConvergenceError("quadrature: max_evals exhausted while seeding",
                                   partial, std::numeric_limits<double>::infinity(),
                                   evals);
        detail::PanelEstimate e = detail::kronrod15(g, a, b);
        evals += 15;
        seeds.push_back(detail::Panel{a, b, e.value, e.error, e.resabs, &g});
    };
    if (start > 0) push_panel(fn, xs[0], xs[start]);
    for (std::size_t i = start; i < cut; ++i) push_panel(fn, xs[i], xs[i + 1]);
    push_panel(tail, 0.0, 1.0);
    return detail::adapt_panels(std::move(seeds), tol, evals);
}

/// Sum of term(1) + term(2) + ... for series whose terms are eventually
/// positive and decay at least geometrically. After each term the tail is
/// bounded by term(s)*r/(1-r) with r = term(s)/term(s-1); summation stops
/// once that certificate meets the tolerance. For sub-geometric decay
/// (growing ratios) the certificate loses its guarantee but the bound is
/// still within a modest factor of the true tail.
template <class TermFn>
SeriesResult sum_series(TermFn&& term, const Tolerance& tol = {}) {
    validate(tol);
    double sum = 0.0, comp = 0.0;  // Kahan compensation
    double prev_mag = -1.0;
    double last_bound = std::numeric_limits<double>::infinity();
    // terms may legitimately grow before the geometric decay sets in (the
    // Matsubara sums peak near s ~ 3/(4 pi t)); only an implausibly long
    // non-decreasing run is treated as a divergence
    constexpr long kNonDecreasingLimit = 100'000;
    long nondecreasing_run = 0;
    for (long s = 1; s <= tol.max_evals; ++s) {
        const double ts = term(s);
        if (!std::isfinite(ts))
            throw ConvergenceError("sum_series: non-finite term", sum,
                                   last_bound, s);
        const double y = ts - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        const double mag = std::abs(ts);
        if (prev_mag == 0.0 && mag == 0.0) return {sum, 0.0, s};  // underflowed
        if (prev_mag > 0.0 && mag < prev_mag) {
            nondecreasing_run = 0;
            const double r = mag / prev_mag;
            last_bound = mag * r / (1.0 - r);
            if (last_bound <= std::max(tol.abs, tol.rel * std::abs(sum)))
                return {sum, last_bound, s};
        } else if (prev_mag >= 0.0) {
            if (++nondecreasing_run > kNonDecreasingLimit)
                throw ConvergenceError("sum_series: non-decreasing tail detected",
                                       sum, last_bound, s);
        }
        prev_mag = mag;
    }
    throw ConvergenceError(
        "sum_series: tail bound did not reach tolerance within max_evals",
        sum, last_bound, tol.max_evals);
}

}  // namespace casimir
