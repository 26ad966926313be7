#pragma once
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "helixlab/curve.hpp"
#include "helixlab/errors.hpp"
#include "helixlab/pseudometric.hpp"
#include "helixlab/tolerances.hpp"

namespace helixlab {

// Uniform parameter grid with matching arclengths (s_0 = 0) and per-sample
// speeds ds/dt, which the derivative stencils need for the chain rule.
struct SampleGrid {
    std::vector<double> params;
    std::vector<double> arclengths;
    std::vector<double> speeds;

    size_t size() const { return params.size(); }
    double step() const { return params[1] - params[0]; }
};

// Numeric meaning of "constant along the curve" and "non-zero".
struct ConstancyVerdict {
    double mean = 0.0;
    double max_abs_dev = 0.0;
    double rel_dev = 0.0;
    bool is_constant = false;
    bool is_nonzero = false;
};

inline ConstancyVerdict constancy_test(std::span<const double> values, double atol, double rtol,
                                       double atol_zero) {
    if (values.empty()) throw EmptyInput("constancy_test: no values");
    ConstancyVerdict v;
    double acc = 0.0;
    for (double x : values) acc += x;
    v.mean = acc / static_cast<double>(values.size());
    for (double x : values) v.max_abs_dev = std::max(v.max_abs_dev, std::abs(x - v.mean));
    v.rel_dev = v.max_abs_dev / (atol + std::abs(v.mean));
    v.is_constant = v.max_abs_dev <= atol + rtol * std::abs(v.mean);
    v.is_nonzero = std::abs(v.mean) > atol_zero;
    return v;
}

inline ConstancyVerdict constancy_test(std::span<const double> values, const ToleranceConfig& tol) {
    return constancy_test(values, tol.atol, tol.rtol, tol.atol_zero);
}

namespace detail {

inline double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double fa, double b, double fb, double fm,
                        double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, fa, m, fm, flm);
    const double right = simpson(m, fm, b, fb, frm);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double tol) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = simpson(a, fa, b, fb, fm);
    return adaptive_simpson(f, a, fa, b, fb, fm, whole, tol, 40);
}

} // namespace detail

// Arclength of the tangent-speed function between two parameters.
inline double arclength_between(const SignatureMetric& m, const CurveSpec& c, double a, double b,
                                JetMode mode = JetMode::Analytic, const ToleranceConfig& tol = {}) {
    auto spd = [&](double t) { return speed(m, jet_eval(c, t, 1, mode)); };
    return detail::integrate(spd, a, b, tol.quad_tol);
}

// Uniform grid over the analysis window with arclengths by adaptive Simpson.
// Rejects curves that go null anywhere on the params+midpoints refinement.
inline SampleGrid build_grid(const SignatureMetric& m, const CurveSpec& c, int samples,
                             JetMode mode = JetMode::Analytic, const ToleranceConfig& tol = {}) {
    if (samples < 9) throw std::invalid_argument("build_grid: need at least 9 samples");
    if (c.dim() != m.dim()) throw DimensionError("build_grid: curve/metric dimension mismatch");

    SampleGrid g;
    g.params.resize(static_cast<size_t>(samples));
    const double h = c.width() / static_cast<double>(samples - 1);
    for (int j = 0; j < samples; ++j) g.params[static_cast<size_t>(j)] = c.t_min() + h * j;
    g.params.back() = c.t_max();

    // null gate on the refinement grid (samples plus midpoints)
    for (int j = 0; j < 2 * samples - 1; ++j) {
        const double t = c.t_min() + 0.5 * h * j;
        const Jet jt = jet_eval(c, t, 1, mode);
        if (causal_character(m, jt.derivs[0], tol.null_tol) == CausalCharacter::Null)
            throw NullCurveError("curve is null near t = " + std::to_string(t));
    }

    g.speeds.resize(static_cast<size_t>(samples));
    for (int j = 0; j < samples; ++j)
        g.speeds[static_cast<size_t>(j)] = speed(m, jet_eval(c, g.params[static_cast<size_t>(j)], 1, mode));

    g.arclengths.resize(static_cast<size_t>(samples));
    g.arclengths[0] = 0.0;
    for (int j = 1; j < samples; ++j)
        g.arclengths[static_cast<size_t>(j)] =
            g.arclengths[static_cast<size_t>(j - 1)] +
            arclength_between(m, c, g.params[static_cast<size_t>(j - 1)], g.params[static_cast<size_t>(j)], mode, tol);

    for (size_t j = 1; j < g.arclengths.size(); ++j)
        if (!(g.arclengths[j] > g.arclengths[j - 1]))
            throw NullCurveError("arclength not strictly increasing");
    return g;
}

// Smallest normalized |g(alpha',alpha')| over the refinement grid; reports
// flag curves passing within 10x of the null gate.
inline double near_null_margin(const SignatureMetric& m, const CurveSpec& c, const SampleGrid& g,
                               JetMode mode = JetMode::Analytic) {
    double lo = std::numeric_limits<double>::infinity();
    const double h = g.step();
    for (size_t j = 0; j + 1 < g.params.size(); ++j) {
        for (double t : {g.params[j], g.params[j] + 0.5 * h}) {
            const Jet jt = jet_eval(c, t, 1, mode);
            lo = std::min(lo, null_margin(m, jt.derivs[0]));
        }
    }
    const Jet jt = jet_eval(c, g.params.back(), 1, mode);
    return std::min(lo, null_margin(m, jt.derivs[0]));
}

// ---- 4th-order derivative stencils on the uniform parameter grid ----
//
// Derivatives are with respect to arclength: differentiate in t, then divide
// by ds/dt. Central stencil on the interior, one-sided at the two samples on
// each end. interior_lo/hi bound the strictly-central range used by verdict
// maxima.

inline size_t interior_lo() { return 2; }
inline size_t interior_hi(const SampleGrid& g) { return g.size() - 3; }

inline std::vector<double> d_ds(const SampleGrid& g, const std::vector<double>& f) {
    const size_t m = g.size();
    if (f.size() != m) throw DimensionError("d_ds: value count != grid size");
    if (m < 9) throw std::invalid_argument("d_ds: need at least 9 samples");
    const double h = g.step();
    std::vector<double> out(m);
    auto at = [&](size_t j) { return f[j]; };
    for (size_t j = 0; j < m; ++j) {
        double dt;
        if (j == 0)
            dt = (-25.0 * at(0) + 48.0 * at(1) - 36.0 * at(2) + 16.0 * at(3) - 3.0 * at(4)) / (12.0 * h);
        else if (j == 1)
            dt = (-3.0 * at(0) - 10.0 * at(1) + 18.0 * at(2) - 6.0 * at(3) + at(4)) / (12.0 * h);
        else if (j == m - 2)
            dt = (3.0 * at(m - 1) + 10.0 * at(m - 2) - 18.0 * at(m - 3) + 6.0 * at(m - 4) - at(m - 5)) / (12.0 * h);
        else if (j == m - 1)
            dt = (25.0 * at(m - 1) - 48.0 * at(m - 2) + 36.0 * at(m - 3) - 16.0 * at(m - 4) + 3.0 * at(m - 5)) / (12.0 * h);
        else
            dt = (at(j - 2) - 8.0 * at(j - 1) + 8.0 * at(j + 1) - at(j + 2)) / (12.0 * h);
        out[j] = dt / g.speeds[j];
    }
    return out;
}

inline std::vector<Vec> d_ds(const SampleGrid& g, const std::vector<Vec>& f) {
    const size_t m = g.size();
    if (f.size() != m) throw DimensionError("d_ds: value count != grid size");
    const int n = static_cast<int>(f.front().size());
    std::vector<Vec> out(m, Vec::Zero(n));
    std::vector<double> comp(m);
    for (int r = 0; r < n; ++r) {
        for (size_t j = 0; j < m; ++j) comp[j] = f[j][r];
        const std::vector<double> d = d_ds(g, comp);
        for (size_t j = 0; j < m; ++j) out[j][r] = d[j];
    }
    return out;
}

} // namespace helixlab
