#pragma once
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "helixlab/errors.hpp"
#include "helixlab/pseudometric.hpp"
#include "helixlab/taylor.hpp"
#include "helixlab/tolerances.hpp"

namespace helixlab {

enum class JetMode { Analytic, FiniteDifference };

inline const char* to_string(JetMode m) {
    return m == JetMode::Analytic ? "analytic" : "finite_difference";
}

// Point plus derivatives d^1..d^order of a curve at one parameter value.
struct Jet {
    int order = 0;
    Vec point;
    std::vector<Vec> derivs; // derivs[k-1] = k-th derivative
};

// Callback form: returns [point, d1, ..., d_order] for any t.
using JetCallback = std::function<std::vector<Vec>(double t, int order)>;

enum class CurveFamily { EuclidHelix, MinkowskiHelix, WCurve, Polynomial, Callback, SampledTable };

// A parametric curve: one of the closed-form families, a jet callback, or a
// sampled table. The [t_min, t_max] interval is the analysis window; the
// closed-form families and callbacks evaluate on all of R, tables do not.
class CurveSpec {
  public:
    static CurveSpec euclid_helix(double a, double b, double t0, double t1) {
        CurveSpec c(CurveFamily::EuclidHelix, 3, t0, t1);
        if (!(a > 0.0)) throw std::invalid_argument("euclid_helix: a must be positive");
        c.p_ = {a, b};
        return c;
    }

    // Timelike circular helix in diag(-1,1,1): (b t, a cos t, a sin t).
    static CurveSpec minkowski_helix(double a, double b, double t0, double t1) {
        CurveSpec c(CurveFamily::MinkowskiHelix, 3, t0, t1);
        if (!(a > 0.0)) throw std::invalid_argument("minkowski_helix: a must be positive");
        if (!(b * b > a * a)) throw std::invalid_argument("minkowski_helix: needs b^2 > a^2");
        c.p_ = {a, b};
        return c;
    }

    // (a cos pt, a sin pt, b cos qt, b sin qt) in R^4; constant curvatures.
    static CurveSpec w_curve(double a, double p, double b, double q, double t0, double t1) {
        CurveSpec c(CurveFamily::WCurve, 4, t0, t1);
        if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("w_curve: radii must be positive");
        if (!(p > 0.0) || !(q > 0.0) || p == q)
            throw std::invalid_argument("w_curve: frequencies must be positive and distinct");
        c.p_ = {a, p, b, q};
        return c;
    }

    // One coefficient row per coordinate: alpha_r(t) = sum_c M(r,c) t^c.
    static CurveSpec polynomial(Mat coeffs, double t0, double t1) {
        if (coeffs.rows() < 1 || coeffs.cols() < 1)
            throw std::invalid_argument("polynomial: empty coefficient matrix");
        CurveSpec c(CurveFamily::Polynomial, static_cast<int>(coeffs.rows()), t0, t1);
        c.coeffs_ = std::move(coeffs);
        return c;
    }

    static CurveSpec from_jets(int dim, JetCallback fn, double t0, double t1,
                               std::string label = "callback") {
        if (dim < 1) throw std::invalid_argument("from_jets: dim must be positive");
        CurveSpec c(CurveFamily::Callback, dim, t0, t1);
        c.callback_ = std::move(fn);
        c.label_ = std::move(label);
        return c;
    }

    static CurveSpec sampled(std::vector<double> params, std::vector<Vec> points) {
        if (params.size() < 7 || params.size() != points.size())
            throw std::invalid_argument("sampled: need >= 7 matching samples");
        for (size_t j = 1; j < params.size(); ++j)
            if (!(params[j] > params[j - 1]))
                throw std::invalid_argument("sampled: parameters must strictly increase");
        CurveSpec c(CurveFamily::SampledTable, static_cast<int>(points.front().size()),
                    params.front(), params.back());
        for (const Vec& p : points)
            if (p.size() != c.dim_) throw std::invalid_argument("sampled: inconsistent point dims");
        c.table_params_ = std::move(params);
        c.table_points_ = std::move(points);
        return c;
    }

    CurveFamily family() const { return family_; }
    int dim() const { return dim_; }
    double t_min() const { return t0_; }
    double t_max() const { return t1_; }
    double width() const { return t1_ - t0_; }
    const std::vector<double>& params() const { return p_; }
    const Mat& coefficients() const { return coeffs_; }

    std::string label() const {
        auto num = [](double v) {
            std::string s = std::to_string(v);
            s.erase(s.find_last_not_of('0') + 1);
            if (!s.empty() && s.back() == '.') s.pop_back();
            return s;
        };
        switch (family_) {
            case CurveFamily::EuclidHelix:
                return "euclid_helix(a=" + num(p_[0]) + ", b=" + num(p_[1]) + ")";
            case CurveFamily::MinkowskiHelix:
                return "minkowski_helix(a=" + num(p_[0]) + ", b=" + num(p_[1]) + ")";
            case CurveFamily::WCurve:
                return "w_curve(a=" + num(p_[0]) + ", p=" + num(p_[1]) + ", b=" + num(p_[2]) +
                       ", q=" + num(p_[3]) + ")";
            case CurveFamily::Polynomial:
                return "polynomial(deg " + std::to_string(coeffs_.cols() - 1) + ")";
            case CurveFamily::Callback:
                return label_;
            case CurveFamily::SampledTable:
                return "sampled(" + std::to_string(table_params_.size()) + " points)";
        }
        return "curve";
    }

    const std::vector<double>& table_params() const { return table_params_; }
    const std::vector<Vec>& table_points() const { return table_points_; }

    std::vector<Vec> callback_eval(double t, int order) const {
        if (!callback_) throw Error("curve has no jet callback");
        return callback_(t, order);
    }

  private:
    CurveSpec(CurveFamily f, int dim, double t0, double t1) : family_(f), dim_(dim), t0_(t0), t1_(t1) {
        if (!(t0 < t1)) throw std::invalid_argument("curve domain needs t_min < t_max");
    }

    CurveFamily family_;
    int dim_;
    double t0_, t1_;
    std::vector<double> p_;
    Mat coeffs_;
    JetCallback callback_;
    std::string label_;
    std::vector<double> table_params_;
    std::vector<Vec> table_points_;
};

namespace detail {

// d^k of r*cos(w t) and r*sin(w t) through the exact four-cycle.
inline double trig_deriv_cos(double r, double w, double t, int k) {
    const double s = r * std::pow(w, k);
    switch (k % 4) {
        case 0: return s * std::cos(w * t);
        case 1: return -s * std::sin(w * t);
        case 2: return -s * std::cos(w * t);
        default: return s * std::sin(w * t);
    }
}
inline double trig_deriv_sin(double r, double w, double t, int k) {
    const double s = r * std::pow(w, k);
    switch (k % 4) {
        case 0: return s * std::sin(w * t);
        case 1: return s * std::cos(w * t);
        case 2: return -s * std::sin(w * t);
        default: return -s * std::cos(w * t);
    }
}

inline Vec analytic_derivative(const CurveSpec& c, double t, int k) {
    const auto& p = c.params();
    Vec d(c.dim());
    switch (c.family()) {
        case CurveFamily::EuclidHelix: {
            const double a = p[0], b = p[1];
            d[0] = trig_deriv_cos(a, 1.0, t, k);
            d[1] = trig_deriv_sin(a, 1.0, t, k);
            d[2] = (k == 0) ? b * t : (k == 1 ? b : 0.0);
            break;
        }
        case CurveFamily::MinkowskiHelix: {
            const double a = p[0], b = p[1];
            d[0] = (k == 0) ? b * t : (k == 1 ? b : 0.0);
            d[1] = trig_deriv_cos(a, 1.0, t, k);
            d[2] = trig_deriv_sin(a, 1.0, t, k);
            break;
        }
        case CurveFamily::WCurve: {
            const double a = p[0], w1 = p[1], b = p[2], w2 = p[3];
            d[0] = trig_deriv_cos(a, w1, t, k);
            d[1] = trig_deriv_sin(a, w1, t, k);
            d[2] = trig_deriv_cos(b, w2, t, k);
            d[3] = trig_deriv_sin(b, w2, t, k);
            break;
        }
        case CurveFamily::Polynomial: {
            const Mat& M = c.coefficients();
            for (int r = 0; r < c.dim(); ++r) {
                // k-th derivative of sum_c M(r,c) t^c, Horner over shifted powers
                double acc = 0.0;
                for (int col = static_cast<int>(M.cols()) - 1; col >= k; --col) {
                    double fall = 1.0;
                    for (int j = 0; j < k; ++j) fall *= static_cast<double>(col - j);
                    acc = acc * t + fall * M(r, col);
                }
                d[r] = acc;
            }
            break;
        }
        default:
            throw Error("analytic_derivative: unsupported family");
    }
    return d;
}

// Curve position for finite differencing.
inline Vec position(const CurveSpec& c, double t);

// First-derivative stencil of 4th order applied to an arbitrary component
// evaluator; recursion stacks it k times with per-order steps.
inline Vec fd_derivative(const CurveSpec& c, double t, int k, const std::vector<double>& steps) {
    if (k == 0) return position(c, t);
    const double h = steps[static_cast<size_t>(k - 1)];
    const Vec fm2 = fd_derivative(c, t - 2.0 * h, k - 1, steps);
    const Vec fm1 = fd_derivative(c, t - h, k - 1, steps);
    const Vec fp1 = fd_derivative(c, t + h, k - 1, steps);
    const Vec fp2 = fd_derivative(c, t + 2.0 * h, k - 1, steps);
    return (8.0 * (fp1 - fm1) - (fp2 - fm2)) / (12.0 * h);
}

inline Vec position(const CurveSpec& c, double t) {
    switch (c.family()) {
        case CurveFamily::Callback:
            return c.callback_eval(t, 0).front();
        default:
            return analytic_derivative(c, t, 0);
    }
}

// Local polynomial interpolation on a sampled table; exact-fit Vandermonde
// over a centered window, scaled for conditioning.
inline Jet table_jet(const CurveSpec& c, double t, int order) {
    const auto& tp = c.table_params();
    const auto& pts = c.table_points();
    if (order > 3) throw UnsupportedOrder("sampled tables support jets up to order 3");
    if (t < tp.front() || t > tp.back())
        throw DomainError("sampled table: t outside tabulated range");
    const int m = static_cast<int>(tp.size());
    const int window = std::min(7, m);
    auto it = std::lower_bound(tp.begin(), tp.end(), t);
    int center = static_cast<int>(it - tp.begin());
    int lo = std::clamp(center - window / 2, 0, m - window);

    const double scale = std::max(tp[static_cast<size_t>(lo + window - 1)] - tp[static_cast<size_t>(lo)],
                                  std::numeric_limits<double>::min());
    Mat V(window, window);
    for (int r = 0; r < window; ++r) {
        const double u = (tp[static_cast<size_t>(lo + r)] - t) / scale;
        double pw = 1.0;
        for (int col = 0; col < window; ++col) {
            V(r, col) = pw;
            pw *= u;
        }
    }
    Mat rhs(window, c.dim());
    for (int r = 0; r < window; ++r) rhs.row(r) = pts[static_cast<size_t>(lo + r)].transpose();
    Mat coef = V.fullPivLu().solve(rhs); // coef(k,:) = k-th scaled Taylor coefficient

    Jet j;
    j.order = order;
    j.point = coef.row(0).transpose();
    j.derivs.reserve(static_cast<size_t>(order));
    double fact = 1.0, sc = 1.0;
    for (int k = 1; k <= order; ++k) {
        fact *= static_cast<double>(k);
        sc *= scale;
        j.derivs.push_back(Vec(coef.row(k).transpose() * (fact / sc)));
    }
    return j;
}

} // namespace detail

// Derivatives of the curve at t. Analytic mode is exact for the closed-form
// families and delegates to the callback otherwise; finite_difference mode
// uses recursively stacked 4th-order central stencils with per-order steps
// h_k = eps^{1/(k+4)} * width/(2*pi).
inline Jet jet_eval(const CurveSpec& c, double t, int order, JetMode mode = JetMode::Analytic) {
    if (order < 1 || order > c.dim())
        throw OrderError("jet order must be in [1, dim]; got " + std::to_string(order));
    if (c.family() == CurveFamily::SampledTable) return detail::table_jet(c, t, order);

    Jet j;
    j.order = order;
    if (mode == JetMode::Analytic) {
        if (c.family() == CurveFamily::Callback) {
            auto rows = c.callback_eval(t, order);
            if (static_cast<int>(rows.size()) != order + 1)
                throw Error("jet callback returned wrong number of derivatives");
            for (const Vec& row : rows)
                if (row.size() != c.dim())
                    throw DimensionError("jet callback returned a vector of length " +
                                         std::to_string(row.size()) + ", expected " +
                                         std::to_string(c.dim()));
            j.point = rows[0];
            j.derivs.assign(rows.begin() + 1, rows.end());
        } else {
            j.point = detail::analytic_derivative(c, t, 0);
            for (int k = 1; k <= order; ++k) j.derivs.push_back(detail::analytic_derivative(c, t, k));
        }
        return j;
    }

    const double eps = std::numeric_limits<double>::epsilon();
    std::vector<double> steps(static_cast<size_t>(order));
    for (int k = 1; k <= order; ++k)
        steps[static_cast<size_t>(k - 1)] =
            std::pow(eps, 1.0 / static_cast<double>(k + 4)) * c.width() / (2.0 * M_PI);
    j.point = detail::position(c, t);
    for (int k = 1; k <= order; ++k) j.derivs.push_back(detail::fd_derivative(c, t, k, steps));
    return j;
}

// |alpha'(t)| under the metric.
inline double speed(const SignatureMetric& m, const Jet& j) {
    if (j.order < 1) throw OrderError("speed needs a jet of order >= 1");
    return norm(m, j.derivs[0]);
}

// Arclength derivatives d^k alpha/ds^k, k = 1..order, via truncated Taylor
// arithmetic: build alpha(t) as a series, integrate the speed series to get
// s(t), revert to t(s) and compose. Exact for analytic jets.
inline Jet unit_speed_jet(const SignatureMetric& m, const CurveSpec& c, double t, int order,
                          JetMode mode = JetMode::Analytic, const ToleranceConfig& tol = {}) {
    const Jet tj = jet_eval(c, t, order, mode);
    const int n = c.dim();
    check_dim(m, tj.point, "unit_speed_jet: point");

    // coordinate series in u = t - t0, degree = order
    std::vector<TaylorSeries> x;
    x.reserve(static_cast<size_t>(n));
    for (int r = 0; r < n; ++r) {
        TaylorSeries s(order);
        s[0] = tj.point[r];
        double fact = 1.0;
        for (int k = 1; k <= order; ++k) {
            fact *= static_cast<double>(k);
            s[k] = tj.derivs[static_cast<size_t>(k - 1)][r] / fact;
        }
        x.push_back(std::move(s));
    }

    // q(u) = g(alpha', alpha'); valid through degree order-1
    TaylorSeries q(order);
    std::vector<TaylorSeries> xp;
    xp.reserve(static_cast<size_t>(n));
    for (int r = 0; r < n; ++r) xp.push_back(derivative(x[static_cast<size_t>(r)]));
    for (int r = 0; r < n; ++r) q += static_cast<double>(m.sign(r)) * (xp[static_cast<size_t>(r)] * xp[static_cast<size_t>(r)]);

    double e2 = 0.0;
    for (int r = 0; r < n; ++r) e2 += xp[static_cast<size_t>(r)][0] * xp[static_cast<size_t>(r)][0];
    if (std::abs(q[0]) <= tol.null_tol * (1.0 + e2))
        throw NullCurveError("curve is null at t = " + std::to_string(t));
    const double eta = q[0] > 0.0 ? 1.0 : -1.0;

    const TaylorSeries v = sqrt_series(eta * q);   // speed, valid through degree order-1
    const TaylorSeries s_of_u = antiderivative(v); // s - s0, valid through degree order
    const TaylorSeries u_of_w = revert(s_of_u);    // t - t0 as a function of s - s0

    Jet out;
    out.order = order;
    out.point = tj.point;
    out.derivs.assign(static_cast<size_t>(order), Vec::Zero(n));
    for (int r = 0; r < n; ++r) {
        const TaylorSeries y = compose(x[static_cast<size_t>(r)], u_of_w);
        double fact = 1.0;
        for (int k = 1; k <= order; ++k) {
            fact *= static_cast<double>(k);
            out.derivs[static_cast<size_t>(k - 1)][r] = y[k] * fact;
        }
    }
    return out;
}

} // namespace helixlab
