#pragma once
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "helixlab/errors.hpp"
#include "helixlab/frenet.hpp"
#include "helixlab/grid.hpp"
#include "helixlab/harmonic.hpp"
#include "helixlab/pseudometric.hpp"
#include "helixlab/tolerances.hpp"

namespace helixlab {

// Scalar field on R^n, either linear (constant differential, zero Hessian by
// construction) or analytic through callbacks. The Hessian callback returns
// the coordinate Hessian d2f/dx_a dx_b, which in the flat constant-metric
// model equals H^f(e_a, e_b) exactly.
class ScalarField {
  public:
    using ValueFn = std::function<double(const Vec&)>;
    using GradFn = std::function<Vec(const Vec&)>;
    using HessFn = std::function<Mat(const Vec&)>;

    static ScalarField linear(Vec df, std::string label = "") {
        ScalarField f;
        f.dim_ = static_cast<int>(df.size());
        f.linear_df_ = std::move(df);
        f.label_ = label.empty() ? "linear" : std::move(label);
        return f;
    }

    static ScalarField analytic(int dim, ValueFn value, GradFn differential, HessFn hessian,
                                std::string label) {
        ScalarField f;
        f.dim_ = dim;
        f.value_ = std::move(value);
        f.df_ = std::move(differential);
        f.hess_ = std::move(hessian);
        f.label_ = std::move(label);
        return f;
    }

    // Named analytic fields the CLI can refer to: f = x_1^2 (non-eikonal along
    // the circular helices) and f = (x_1^2 + x_2^2)/2 (eikonal along them but
    // with nonzero Hessian).
    static ScalarField builtin(const std::string& name, int dim) {
        if (name == "quadratic_x1")
            return analytic(
                dim, [](const Vec& x) { return x[0] * x[0]; },
                [dim](const Vec& x) {
                    Vec g = Vec::Zero(dim);
                    g[0] = 2.0 * x[0];
                    return g;
                },
                [dim](const Vec&) {
                    Mat h = Mat::Zero(dim, dim);
                    h(0, 0) = 2.0;
                    return h;
                },
                "quadratic_x1");
        if (name == "radial_xy")
            return analytic(
                dim, [](const Vec& x) { return 0.5 * (x[0] * x[0] + x[1] * x[1]); },
                [dim](const Vec& x) {
                    Vec g = Vec::Zero(dim);
                    g[0] = x[0];
                    g[1] = x[1];
                    return g;
                },
                [dim](const Vec&) {
                    Mat h = Mat::Zero(dim, dim);
                    h(0, 0) = 1.0;
                    h(1, 1) = 1.0;
                    return h;
                },
                "radial_xy");
        throw ParseError("unknown builtin field: " + name);
    }

    int dim() const { return dim_; }
    bool is_linear() const { return linear_df_.has_value(); }
    const std::string& label() const { return label_; }
    const Vec& linear_df() const { return *linear_df_; }

    Vec differential_at(const Vec& x) const {
        if (is_linear()) return *linear_df_;
        return df_(x);
    }

    bool has_hessian() const { return is_linear() || static_cast<bool>(hess_); }

    Mat hessian_at(const Vec& x) const {
        if (is_linear()) return Mat::Zero(dim_, dim_);
        if (!hess_) throw MissingHessian("analytic field '" + label_ + "' has no Hessian callback");
        return hess_(x);
    }

  private:
    int dim_ = 0;
    std::optional<Vec> linear_df_;
    ValueFn value_;
    GradFn df_;
    HessFn hess_;
    std::string label_;
};

// grad f = raised differential, evaluated at each sample point.
inline std::vector<Vec> gradient_along_curve(const SignatureMetric& m, const ScalarField& sf,
                                             const FrameField& ff) {
    if (sf.dim() != m.dim()) throw DimensionError("gradient_along_curve: field/metric dimension mismatch");
    std::vector<Vec> out;
    out.reserve(ff.size());
    for (const FrenetApparatus& a : ff.apparatus)
        out.push_back(raise_covector(m, sf.differential_at(a.point)));
    return out;
}

// g(grad f, grad f) constant along the curve?
inline ConstancyVerdict eikonal_check(const SignatureMetric& m, const ScalarField& sf,
                                      const FrameField& ff, const ToleranceConfig& tol = {}) {
    const std::vector<Vec> grad = gradient_along_curve(m, sf, ff);
    std::vector<double> q(grad.size());
    for (size_t j = 0; j < grad.size(); ++j) q[j] = inner(m, grad[j], grad[j]);
    return constancy_test(q, tol);
}

// grad f parallel, i.e. zero Hessian at every sample. Linear fields pass by
// construction; analytic fields must supply the Hessian and additionally pass
// a finite-difference cross-check of d(grad f)/ds along the grid.
inline bool parallel_check(const SignatureMetric& m, const ScalarField& sf, const FrameField& ff,
                           const ToleranceConfig& tol = {}) {
    if (sf.is_linear()) return true;
    if (!sf.has_hessian()) throw MissingHessian("parallel_check needs a Hessian callback");

    for (const FrenetApparatus& a : ff.apparatus)
        if (sf.hessian_at(a.point).cwiseAbs().maxCoeff() > tol.atol) return false;

    const std::vector<Vec> grad = gradient_along_curve(m, sf, ff);
    double scale = 0.0;
    for (const Vec& g : grad) scale = std::max(scale, g.cwiseAbs().maxCoeff());
    const std::vector<Vec> dgrad = d_ds(ff.grid, grad);
    for (size_t j = interior_lo(); j <= interior_hi(ff.grid); ++j)
        if (dgrad[j].cwiseAbs().maxCoeff() > tol.atol_zero * (1.0 + scale)) return false;
    return true;
}

enum class SlantVerdict { SlantHelix, NotSlant, HypothesisFailedEikonal, HypothesisFailedParallel };

inline std::string to_string(SlantVerdict v) {
    switch (v) {
        case SlantVerdict::SlantHelix: return "SlantHelix";
        case SlantVerdict::NotSlant: return "NotSlant";
        case SlantVerdict::HypothesisFailedEikonal: return "HypothesisFailed(eikonal)";
        case SlantVerdict::HypothesisFailedParallel: return "HypothesisFailed(parallel)";
    }
    return "Unknown";
}

// Coefficients of grad f in the frame at one sample, the axis rebuilt from
// harmonic values, and their disagreement.
struct AxisDecomposition {
    std::vector<double> lambda; // lambda_1..lambda_n, lambda_{n-1} expected ~0
    Vec reconstructed;
    double comparison_error = 0.0;
};

struct AxisReport {
    std::vector<AxisDecomposition> per_sample;
    double max_comparison_error = 0.0;
    double max_lambda_nm1 = 0.0;
    Vec mid_reconstructed;
};

struct SlantReport {
    ConstancyVerdict eikonal;
    bool parallel_ok = false;
    ConstancyVerdict slant;
    double thm31_max_residual = 0.0;
    double vn1_orthogonality = 0.0;
    double axis_max_error = 0.0;
    double axis_lambda_nm1 = 0.0;
    ConstancyVerdict thm33;
    bool thm33_paper_anomalous = false; // constant but zero signed sum
    double cor32_residual = 0.0;
    Lemma32Report lemma32;
    SlantVerdict verdict = SlantVerdict::NotSlant;
    bool near_null = false;
    std::string model_regime = "flat/parallel => constant axis, coincides with V_n-slant helix";
};

// Gate evaluation only: eikonal, parallel, slant constancy, verdict.
inline SlantReport slant_detect(const SignatureMetric& m, const ScalarField& sf, const FrameField& ff,
                                const ToleranceConfig& tol = {}) {
    SlantReport rep;
    rep.eikonal = eikonal_check(m, sf, ff, tol);
    rep.parallel_ok = parallel_check(m, sf, ff, tol);

    const std::vector<Vec> grad = gradient_along_curve(m, sf, ff);
    const int n = ff.dim();
    std::vector<double> proj(grad.size());
    for (size_t j = 0; j < grad.size(); ++j)
        proj[j] = inner(m, grad[j], ff.apparatus[j].frame[static_cast<size_t>(n - 1)]);
    rep.slant = constancy_test(proj, tol);

    if (!rep.eikonal.is_constant)
        rep.verdict = SlantVerdict::HypothesisFailedEikonal;
    else if (!rep.parallel_ok)
        rep.verdict = SlantVerdict::HypothesisFailedParallel;
    else if (rep.slant.is_constant && rep.slant.is_nonzero)
        rep.verdict = SlantVerdict::SlantHelix;
    else
        rep.verdict = SlantVerdict::NotSlant;
    return rep;
}

// Identity system g(V_{n-(i+1)}, grad f) = H_i g(V_n, grad f), i = 1..n-2,
// plus the g(grad f, V_{n-1}) = 0 orthogonality. Total; meaningful when the
// slant verdict holds, reported diagnostically otherwise.
struct IdentitySystemResult {
    double max_system_residual = 0.0;
    double vn1_orthogonality = 0.0;
};

inline IdentitySystemResult theorem31_residual(const SignatureMetric& m, const ScalarField& sf,
                                               const FrameField& ff, const HarmonicProfile& hp) {
    const int n = ff.dim();
    const std::vector<Vec> grad = gradient_along_curve(m, sf, ff);
    IdentitySystemResult r;
    for (size_t j = 0; j < ff.size(); ++j) {
        const FrenetApparatus& a = ff.apparatus[j];
        const double gn = inner(m, grad[j], a.frame[static_cast<size_t>(n - 1)]);
        for (int i = 1; i <= n - 2; ++i) {
            const double lhs = inner(m, a.frame[static_cast<size_t>(n - i - 2)], grad[j]);
            const double rhs = hp.values[static_cast<size_t>(i)][j] * gn;
            r.max_system_residual = std::max(r.max_system_residual, std::abs(lhs - rhs));
        }
        r.vn1_orthogonality =
            std::max(r.vn1_orthogonality, std::abs(inner(m, grad[j], a.frame[static_cast<size_t>(n - 2)])));
    }
    return r;
}

// Axis formula: grad f = {eps_0 H_{n-2} V_1 + ... + eps_{n-3} H_1 V_{n-2}
// + eps_{n-1} V_n} * g(grad f, V_n), with the measured constant taken as the
// mean slant projection. lambda_i are the measured frame coefficients.
inline AxisReport axis_reconstruct(const SignatureMetric& m, const ScalarField& sf,
                                   const FrameField& ff, const HarmonicProfile& hp) {
    const int n = ff.dim();
    const std::vector<Vec> grad = gradient_along_curve(m, sf, ff);

    double cbar = 0.0;
    for (size_t j = 0; j < ff.size(); ++j)
        cbar += inner(m, grad[j], ff.apparatus[j].frame[static_cast<size_t>(n - 1)]);
    cbar /= static_cast<double>(ff.size());

    AxisReport rep;
    rep.per_sample.reserve(ff.size());
    for (size_t j = 0; j < ff.size(); ++j) {
        const FrenetApparatus& a = ff.apparatus[j];
        AxisDecomposition d;
        d.lambda.resize(static_cast<size_t>(n));
        for (int i = 1; i <= n; ++i)
            d.lambda[static_cast<size_t>(i - 1)] =
                static_cast<double>(a.epsilons[static_cast<size_t>(i - 1)]) *
                inner(m, grad[j], a.frame[static_cast<size_t>(i - 1)]);

        Vec recon = Vec::Zero(n);
        for (int l = 1; l <= n - 2; ++l)
            recon += static_cast<double>(a.epsilons[static_cast<size_t>(l - 1)]) *
                     hp.values[static_cast<size_t>(n - 1 - l)][j] * a.frame[static_cast<size_t>(l - 1)];
        recon += static_cast<double>(a.epsilons[static_cast<size_t>(n - 1)]) * a.frame[static_cast<size_t>(n - 1)];
        recon *= cbar;
        d.reconstructed = recon;
        d.comparison_error = (recon - grad[j]).cwiseAbs().maxCoeff();

        rep.max_comparison_error = std::max(rep.max_comparison_error, d.comparison_error);
        rep.max_lambda_nm1 = std::max(rep.max_lambda_nm1, std::abs(d.lambda[static_cast<size_t>(n - 2)]));
        rep.per_sample.push_back(std::move(d));
    }
    rep.mid_reconstructed = rep.per_sample[rep.per_sample.size() / 2].reconstructed;
    return rep;
}

// Everything in one record; verdicts never assert theorem conclusions when
// the hypotheses fail, residuals are always reported.
inline SlantReport full_report(const SignatureMetric& m, const ScalarField& sf, const FrameField& ff,
                               const HarmonicProfile& hp, const ToleranceConfig& tol = {}) {
    SlantReport rep = slant_detect(m, sf, ff, tol);
    const IdentitySystemResult ident = theorem31_residual(m, sf, ff, hp);
    rep.thm31_max_residual = ident.max_system_residual;
    rep.vn1_orthogonality = ident.vn1_orthogonality;
    const AxisReport axis = axis_reconstruct(m, sf, ff, hp);
    rep.axis_max_error = axis.max_comparison_error;
    rep.axis_lambda_nm1 = axis.max_lambda_nm1;
    rep.thm33 = sum_invariant(hp, tol);
    rep.thm33_paper_anomalous = rep.thm33.is_constant && !rep.thm33.is_nonzero &&
                                rep.verdict == SlantVerdict::SlantHelix;
    rep.cor32_residual = corollary32_residual(hp, ff);
    rep.lemma32 = lemma32_check(hp, ff, tol);
    return rep;
}

} // namespace helixlab
