#pragma once
#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "helixlab/curve.hpp"
#include "helixlab/errors.hpp"
#include "helixlab/grid.hpp"
#include "helixlab/pseudometric.hpp"
#include "helixlab/tolerances.hpp"

namespace helixlab {

// Frame, curvatures and causal characters of a proper curve of order n at
// one parameter value. epsilons[j-1] = g(V_j, V_j), kept as exact integers.
struct FrenetApparatus {
    double param = 0.0;
    double arclength = 0.0;
    Vec point;
    std::vector<Vec> frame;          // V_1..V_n
    std::vector<double> curvatures;  // k_1..k_{n-1}, all positive
    std::vector<int> epsilons;       // eps_0..eps_{n-1}

    int dim() const { return static_cast<int>(frame.size()); }
};

namespace detail {

// Vector carried together with its arclength derivative; enough forward-mode
// structure to push d/ds through the Gram-Schmidt chain.
struct DualVec {
    Vec v; // value
    Vec d; // d/ds
};

struct DualScalar {
    double v = 0.0;
    double d = 0.0;
};

inline DualScalar dual_inner(const SignatureMetric& m, const DualVec& a, const DualVec& b) {
    return {inner(m, a.v, b.v), inner(m, a.d, b.v) + inner(m, a.v, b.d)};
}

inline void dual_axpy(DualVec& e, const DualScalar& c, const DualVec& x) {
    e.v -= c.v * x.v;
    e.d -= c.d * x.v + c.v * x.d;
}

inline DualVec dual_divide(const DualVec& e, const DualScalar& s) {
    DualVec r;
    r.v = e.v / s.v;
    r.d = e.d / s.v - e.v * (s.d / (s.v * s.v));
    return r;
}

inline DualScalar dual_sqrt(const DualScalar& x) {
    const double rv = std::sqrt(x.v);
    return {rv, x.d / (2.0 * rv)};
}

} // namespace detail

// Frenet apparatus from the order-n arclength jet: V_1..V_{n-1} by
// Gram-Schmidt under g (carried with d/ds via dual arithmetic, which yields
// the curvatures k_i = eps_i * g(V_i', V_{i+1}) without cancellation), V_n by
// orthogonal completion oriented so det[V_1..V_n] > 0.
inline FrenetApparatus frenet_at(const SignatureMetric& m, const CurveSpec& c, double t,
                                 JetMode mode = JetMode::Analytic, const ToleranceConfig& tol = {},
                                 bool compute_arclength = true) {
    const int n = c.dim();
    if (n < 3) throw DimensionError("frenet_at: needs dimension >= 3");
    if (m.dim() != n) throw DimensionError("frenet_at: curve/metric dimension mismatch");

    const Jet sj = unit_speed_jet(m, c, t, n, mode, tol);

    std::vector<detail::DualVec> V;
    V.reserve(static_cast<size_t>(n - 1));
    std::vector<int> eps(static_cast<size_t>(n), 0);

    for (int i = 1; i <= n - 1; ++i) {
        detail::DualVec E{sj.derivs[static_cast<size_t>(i - 1)], sj.derivs[static_cast<size_t>(i)]};
        const double in_scale = std::max(1.0, E.v.norm());
        for (int j = 0; j < i - 1; ++j) {
            detail::DualScalar coef = detail::dual_inner(m, E, V[static_cast<size_t>(j)]);
            coef.v *= eps[static_cast<size_t>(j)];
            coef.d *= eps[static_cast<size_t>(j)];
            detail::dual_axpy(E, coef, V[static_cast<size_t>(j)]);
        }
        if (E.v.norm() <= tol.dep_tol * in_scale)
            throw NotProperOrderError("derivative " + std::to_string(i) +
                                      " linearly dependent at t = " + std::to_string(t) +
                                      " (curvature vanishes)");
        detail::DualScalar q = detail::dual_inner(m, E, E);
        if (std::abs(q.v) < tol.gs_tol * E.v.squaredNorm())
            throw DegenerateFrameError("null frame vector at position " + std::to_string(i) +
                                       ", t = " + std::to_string(t));
        const int eta = q.v > 0.0 ? 1 : -1;
        q.v *= eta;
        q.d *= eta;
        V.push_back(detail::dual_divide(E, detail::dual_sqrt(q)));
        eps[static_cast<size_t>(i - 1)] = eta;
    }

    // V_n: g-orthogonal complement of span{V_1..V_{n-1}}
    Mat A(n - 1, n);
    for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = static_cast<double>(m.sign(j)) * V[static_cast<size_t>(i)].v[j];
    Eigen::FullPivLU<Mat> lu(A);
    if (lu.dimensionOfKernel() != 1)
        throw DegenerateFrameError("frame completion failed at t = " + std::to_string(t));
    Vec w = lu.kernel().col(0);
    const double qn = inner(m, w, w);
    if (std::abs(qn) < tol.gs_tol * w.squaredNorm())
        throw DegenerateFrameError("completed frame vector is null at t = " + std::to_string(t));
    w /= std::sqrt(std::abs(qn));
    eps[static_cast<size_t>(n - 1)] = qn > 0.0 ? 1 : -1;

    Mat F(n, n);
    for (int i = 0; i < n - 1; ++i) F.col(i) = V[static_cast<size_t>(i)].v;
    F.col(n - 1) = w;
    if (F.determinant() < 0.0) {
        w = -w;
        F.col(n - 1) = w;
    }

    FrenetApparatus app;
    app.param = t;
    app.arclength = compute_arclength ? arclength_between(m, c, c.t_min(), t, mode, tol) : 0.0;
    app.point = sj.point;
    app.epsilons = eps;
    app.frame.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n - 1; ++i) app.frame.push_back(V[static_cast<size_t>(i)].v);
    app.frame.push_back(w);

    app.curvatures.resize(static_cast<size_t>(n - 1));
    for (int i = 1; i <= n - 1; ++i) {
        const Vec& next = app.frame[static_cast<size_t>(i)];
        const double k = static_cast<double>(eps[static_cast<size_t>(i)]) *
                         inner(m, V[static_cast<size_t>(i - 1)].d, next);
        if (!(k > tol.k_tol))
            throw NotProperOrderError("curvature k_" + std::to_string(i) +
                                      " = " + std::to_string(k) + " not positive at t = " +
                                      std::to_string(t));
        app.curvatures[static_cast<size_t>(i - 1)] = k;
    }
    return app;
}

// Frenet apparatus per grid point, sign-aligned along the grid.
struct FrameField {
    SampleGrid grid;
    std::vector<FrenetApparatus> apparatus;

    int dim() const { return apparatus.front().dim(); }
    size_t size() const { return apparatus.size(); }
};

// Enforce inner(V_i(t_{j+1}), V_i(t_j)) * eps > 0 between neighbors; flips
// keep det > 0 by re-deriving the V_n sign, and curvature signs are
// re-extracted (k_i picks up flip_i * flip_{i+1}) and must stay positive.
// Returns the number of flipped vectors; exposed separately for testing.
inline int align_frame_signs(const SignatureMetric& m, std::vector<FrenetApparatus>& apps,
                             const ToleranceConfig& tol = {}) {
    int flips = 0;
    const int n = apps.empty() ? 0 : apps.front().dim();
    for (size_t j = 1; j < apps.size(); ++j) {
        const FrenetApparatus& prev = apps[j - 1];
        FrenetApparatus& cur = apps[j];
        std::vector<double> flip(static_cast<size_t>(n), 1.0);
        int parity = 1;
        for (int i = 0; i < n - 1; ++i) {
            const double overlap = inner(m, cur.frame[static_cast<size_t>(i)], prev.frame[static_cast<size_t>(i)]) *
                                   static_cast<double>(cur.epsilons[static_cast<size_t>(i)]);
            if (overlap < 0.0) {
                cur.frame[static_cast<size_t>(i)] = -cur.frame[static_cast<size_t>(i)];
                flip[static_cast<size_t>(i)] = -1.0;
                parity = -parity;
                ++flips;
            }
        }
        if (parity < 0) { // keep det > 0
            cur.frame[static_cast<size_t>(n - 1)] = -cur.frame[static_cast<size_t>(n - 1)];
            flip[static_cast<size_t>(n - 1)] = -1.0;
            ++flips;
        }
        for (int i = 0; i < n - 1; ++i) {
            const double k = cur.curvatures[static_cast<size_t>(i)] * flip[static_cast<size_t>(i)] *
                             flip[static_cast<size_t>(i + 1)];
            if (!(k > tol.k_tol))
                throw NotProperOrderError("sign alignment drove k_" + std::to_string(i + 1) +
                                          " non-positive at t = " + std::to_string(cur.param));
            cur.curvatures[static_cast<size_t>(i)] = k;
        }
    }
    return flips;
}

inline FrameField frame_field(const SignatureMetric& m, const CurveSpec& c, const SampleGrid& grid,
                              JetMode mode = JetMode::Analytic, const ToleranceConfig& tol = {}) {
    FrameField ff;
    ff.grid = grid;
    ff.apparatus.reserve(grid.size());
    for (size_t j = 0; j < grid.size(); ++j) {
        FrenetApparatus app = frenet_at(m, c, grid.params[j], mode, tol, /*compute_arclength=*/false);
        app.arclength = grid.arclengths[j];
        ff.apparatus.push_back(std::move(app));
    }
    align_frame_signs(m, ff.apparatus, tol);
    return ff;
}

// Max deviation of the grid-differentiated frame from the Frenet right-hand
// sides: V_1' = k_1 V_2; V_i' = -eps_{i-2} eps_{i-1} k_{i-1} V_{i-1} + k_i V_{i+1};
// V_n' = -eps_{n-2} eps_{n-1} k_{n-1} V_{n-1}. Max over interior samples.
inline double frenet_residual([[maybe_unused]] const SignatureMetric& m, const FrameField& ff) {
    if (ff.size() < 9) throw std::invalid_argument("frenet_residual: need at least 9 samples");
    const int n = ff.dim();
    const size_t msz = ff.size();
    double worst = 0.0;
    std::vector<Vec> comp(msz);
    for (int i = 0; i < n; ++i) {
        for (size_t j = 0; j < msz; ++j) comp[j] = ff.apparatus[j].frame[static_cast<size_t>(i)];
        const std::vector<Vec> dv = d_ds(ff.grid, comp);
        for (size_t j = interior_lo(); j <= interior_hi(ff.grid); ++j) {
            const FrenetApparatus& a = ff.apparatus[j];
            Vec rhs = Vec::Zero(n);
            if (i > 0)
                rhs -= static_cast<double>(a.epsilons[static_cast<size_t>(i - 1)] * a.epsilons[static_cast<size_t>(i)]) *
                       a.curvatures[static_cast<size_t>(i - 1)] * a.frame[static_cast<size_t>(i - 1)];
            if (i < n - 1) rhs += a.curvatures[static_cast<size_t>(i)] * a.frame[static_cast<size_t>(i + 1)];
            worst = std::max(worst, (dv[j] - rhs).cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

// Max |g(V_i, V_j) - delta_ij eps_{i-1}| over all samples.
inline double orthonormality_defect(const SignatureMetric& m, const FrameField& ff) {
    const int n = ff.dim();
    double worst = 0.0;
    for (const FrenetApparatus& a : ff.apparatus) {
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                const double want = (i == j) ? static_cast<double>(a.epsilons[static_cast<size_t>(i)]) : 0.0;
                worst = std::max(worst, std::abs(inner(m, a.frame[static_cast<size_t>(i)], a.frame[static_cast<size_t>(j)]) - want));
            }
    }
    return worst;
}

} // namespace helixlab
