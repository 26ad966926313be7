#pragma once
#include <Eigen/Dense>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "helixlab/errors.hpp"

namespace helixlab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class CausalCharacter { Spacelike, Timelike, Null };

inline const char* to_string(CausalCharacter c) {
    switch (c) {
        case CausalCharacter::Spacelike: return "Spacelike";
        case CausalCharacter::Timelike: return "Timelike";
        case CausalCharacter::Null: return "Null";
    }
    return "Unknown";
}

// Constant diagonal pseudo-Euclidean metric on R^n. Signs are kept as
// integers so products of causal characters stay exact.
class SignatureMetric {
  public:
    explicit SignatureMetric(std::vector<int> signs) : signs_(std::move(signs)) {
        if (signs_.empty()) throw DimensionError("metric needs at least one diagonal entry");
        for (int s : signs_)
            if (s != 1 && s != -1) throw DimensionError("metric diagonal entries must be +1 or -1");
    }

    // Euclidean metric of the given dimension.
    static SignatureMetric euclidean(int dim) {
        return SignatureMetric(std::vector<int>(static_cast<size_t>(dim), 1));
    }

    // Index-nu Minkowski-style metric: first `index` entries -1, rest +1.
    static SignatureMetric lorentzian(int dim, int index = 1) {
        std::vector<int> s(static_cast<size_t>(dim), 1);
        for (int j = 0; j < index; ++j) s[static_cast<size_t>(j)] = -1;
        return SignatureMetric(std::move(s));
    }

    int dim() const { return static_cast<int>(signs_.size()); }

    // Number of -1 entries.
    int index() const {
        int nu = 0;
        for (int s : signs_) nu += (s < 0) ? 1 : 0;
        return nu;
    }

    const std::vector<int>& signs() const { return signs_; }
    int sign(int j) const { return signs_[static_cast<size_t>(j)]; }

    std::string signature_string() const {
        std::string out = "(";
        for (size_t j = 0; j < signs_.size(); ++j) {
            out += (signs_[j] > 0 ? "+" : "-");
            if (j + 1 < signs_.size()) out += ",";
        }
        out += ")";
        return out;
    }

  private:
    std::vector<int> signs_;
};

inline void check_dim(const SignatureMetric& m, const Vec& x, const char* what) {
    if (x.size() != m.dim())
        throw DimensionError(std::string(what) + ": expected length " + std::to_string(m.dim()) +
                             ", got " + std::to_string(x.size()));
}

// g(X,Y) = sum_j signs[j] * X_j * Y_j. Fixed left-to-right summation order,
// so inner(X,Y) and inner(Y,X) are bit-identical.
inline double inner(const SignatureMetric& m, const Vec& x, const Vec& y) {
    check_dim(m, x, "inner: X");
    check_dim(m, y, "inner: Y");
    double acc = 0.0;
    for (int j = 0; j < m.dim(); ++j) acc += static_cast<double>(m.sign(j)) * x[j] * y[j];
    return acc;
}

// |X| = sqrt(|g(X,X)|); zero exactly when X is null or zero.
inline double norm(const SignatureMetric& m, const Vec& x) {
    return std::sqrt(std::abs(inner(m, x, x)));
}

// Null within null_tol relative to 1 + squared Euclidean norm; otherwise the
// sign of g(X,X) decides.
inline CausalCharacter causal_character(const SignatureMetric& m, const Vec& x, double null_tol) {
    const double q = inner(m, x, x);
    if (std::abs(q) <= null_tol * (1.0 + x.squaredNorm())) return CausalCharacter::Null;
    return q > 0.0 ? CausalCharacter::Spacelike : CausalCharacter::Timelike;
}

// |g(X,X)| normalized the same way the null gate is; used for near-null flags.
inline double null_margin(const SignatureMetric& m, const Vec& x) {
    return std::abs(inner(m, x, x)) / (1.0 + x.squaredNorm());
}

// Index raising: grad f from df, i.e. g(raise(df), X) = sum_j df_j X_j.
inline Vec raise_covector(const SignatureMetric& m, const Vec& df) {
    check_dim(m, df, "raise_covector: df");
    Vec v(m.dim());
    for (int j = 0; j < m.dim(); ++j) v[j] = static_cast<double>(m.sign(j)) * df[j];
    return v;
}

// Lowering is its own inverse for diagonal +-1 metrics.
inline Vec lower_vector(const SignatureMetric& m, const Vec& v) { return raise_covector(m, v); }

} // namespace helixlab
