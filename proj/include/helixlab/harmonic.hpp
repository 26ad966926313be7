#pragma once
#include <cmath>
#include <string>
#include <vector>

#include "helixlab/errors.hpp"
#include "helixlab/frenet.hpp"
#include "helixlab/grid.hpp"
#include "helixlab/tolerances.hpp"

namespace helixlab {

// Harmonic curvature functions along a frame field:
//   H_0 = 0
//   H_1 = eps_{n-3} eps_{n-2} k_{n-1} / k_{n-2}
//   H_i = (k_{n-i} H_{i-2} - H_{i-1}') eps_{n-i-2} eps_{n-i-1} / k_{n-i-1}
// with derivatives taken with respect to arclength on the grid. sum_signed
// carries sum_i eps_{n-2-i} H_i^2 and derivative_residual carries
// H_{n-2}' - k_1 H_{n-3} (H_{n-3} read as 0 when n = 3).
struct HarmonicProfile {
    SampleGrid grid;
    int order = 0;                            // ambient dimension n
    std::vector<std::vector<double>> values;  // values[i][j] = H_i at sample j, i = 0..n-2
    std::vector<double> sum_signed;
    std::vector<double> derivative_residual;  // defined everywhere, one-sided at edges
    std::vector<int> epsilons;
};

// Every epsilon subscript the recursion and the signed sum touch must land in
// [0, n-1]; checked per dimension before evaluating anything.
inline bool epsilon_indices_valid(int n) {
    if (n < 3) return false;
    auto ok = [n](int idx) { return idx >= 0 && idx <= n - 1; };
    if (!ok(n - 3) || !ok(n - 2)) return false;
    for (int i = 2; i <= n - 2; ++i)
        if (!ok(n - i - 2) || !ok(n - i - 1)) return false;
    for (int i = 1; i <= n - 2; ++i)
        if (!ok(n - 2 - i)) return false;
    return true;
}

inline HarmonicProfile harmonic_profile(const FrameField& ff, const ToleranceConfig& tol = {}) {
    const int n = ff.dim();
    if (!epsilon_indices_valid(n))
        throw Error("harmonic_profile: epsilon index audit failed for n = " + std::to_string(n));
    const size_t m = ff.size();

    // causal characters are constant along a sign-aligned field
    const std::vector<int>& eps = ff.apparatus.front().epsilons;

    auto kval = [&](int i, size_t j) { // k_i at sample j, 1-based
        const double k = ff.apparatus[j].curvatures[static_cast<size_t>(i - 1)];
        if (!(k > tol.k_tol))
            throw NotProperOrderError("harmonic recursion hit k_" + std::to_string(i) + " <= 0");
        return k;
    };

    HarmonicProfile hp;
    hp.grid = ff.grid;
    hp.order = n;
    hp.epsilons = eps;
    hp.values.assign(static_cast<size_t>(n - 1), std::vector<double>(m, 0.0));

    for (size_t j = 0; j < m; ++j)
        hp.values[1][j] = static_cast<double>(eps[static_cast<size_t>(n - 3)] * eps[static_cast<size_t>(n - 2)]) *
                          kval(n - 1, j) / kval(n - 2, j);

    for (int i = 2; i <= n - 2; ++i) {
        const std::vector<double> dprev = d_ds(ff.grid, hp.values[static_cast<size_t>(i - 1)]);
        const double sgn = static_cast<double>(eps[static_cast<size_t>(n - i - 2)] * eps[static_cast<size_t>(n - i - 1)]);
        for (size_t j = 0; j < m; ++j)
            hp.values[static_cast<size_t>(i)][j] =
                (kval(n - i, j) * hp.values[static_cast<size_t>(i - 2)][j] - dprev[j]) * sgn / kval(n - i - 1, j);
    }

    hp.sum_signed.assign(m, 0.0);
    for (int i = 1; i <= n - 2; ++i) {
        const double s = static_cast<double>(eps[static_cast<size_t>(n - 2 - i)]);
        for (size_t j = 0; j < m; ++j) {
            const double h = hp.values[static_cast<size_t>(i)][j];
            hp.sum_signed[j] += s * h * h;
        }
    }

    const std::vector<double> dlast = d_ds(ff.grid, hp.values[static_cast<size_t>(n - 2)]);
    hp.derivative_residual.assign(m, 0.0);
    for (size_t j = 0; j < m; ++j) {
        const double lower = (n >= 4) ? hp.values[static_cast<size_t>(n - 3)][j] : 0.0;
        hp.derivative_residual[j] = dlast[j] - kval(1, j) * lower;
    }
    return hp;
}

// Constancy of the signed invariant sum.
inline ConstancyVerdict sum_invariant(const HarmonicProfile& hp, const ToleranceConfig& tol = {}) {
    return constancy_test(hp.sum_signed, tol);
}

// Max interior |H_{n-2}' - k_1 H_{n-3}|.
inline double corollary32_residual(const HarmonicProfile& hp, const FrameField& ff) {
    (void)ff;
    double worst = 0.0;
    for (size_t j = interior_lo(); j <= interior_hi(hp.grid); ++j)
        worst = std::max(worst, std::abs(hp.derivative_residual[j]));
    return worst;
}

// Equivalence of "signed sum constant" and the derivative identity, under the
// hypothesis that H_{n-2} stays away from zero. NotApplicable when it fails.
struct Lemma32Report {
    bool applicable = false;
    bool sum_constant = false;
    bool identity_holds = false;
    bool agree = false;
};

inline Lemma32Report lemma32_check(const HarmonicProfile& hp, const FrameField& ff,
                                   const ToleranceConfig& tol = {}) {
    const int n = hp.order;
    Lemma32Report rep;

    std::vector<double> abs_last(hp.sum_signed.size());
    for (size_t j = 0; j < abs_last.size(); ++j)
        abs_last[j] = std::abs(hp.values[static_cast<size_t>(n - 2)][j]);
    rep.applicable = constancy_test(abs_last, tol).is_nonzero;
    if (!rep.applicable) return rep;

    rep.sum_constant = sum_invariant(hp, tol).is_constant;

    double rhs_scale = 0.0, worst = 0.0;
    for (size_t j = interior_lo(); j <= interior_hi(hp.grid); ++j) {
        const double lower = (n >= 4) ? hp.values[static_cast<size_t>(n - 3)][j] : 0.0;
        rhs_scale = std::max(rhs_scale, std::abs(ff.apparatus[j].curvatures[0] * lower));
        worst = std::max(worst, std::abs(hp.derivative_residual[j]));
    }
    rep.identity_holds = worst <= tol.atol + tol.rtol * rhs_scale;
    rep.agree = (rep.sum_constant == rep.identity_holds);
    return rep;
}

} // namespace helixlab
