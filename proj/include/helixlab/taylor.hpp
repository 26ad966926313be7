#pragma once
#include <cmath>
#include <stdexcept>
#include <vector>

namespace helixlab {

// Truncated univariate Taylor series around a base point, stored as
// polynomial coefficients in the local offset u. All operands of a binary
// operation must share the same degree; products truncate back to it.
//
// One caveat: derivative() keeps the degree and zero-fills the top
// coefficient, which is therefore meaningless. The arclength pipeline never
// reads it (integration restores a valid top term before anything else does).
class TaylorSeries {
  public:
    explicit TaylorSeries(int degree) : c_(static_cast<size_t>(degree) + 1, 0.0) {}

    static TaylorSeries constant(int degree, double v) {
        TaylorSeries s(degree);
        s.c_[0] = v;
        return s;
    }

    // The offset variable u itself.
    static TaylorSeries identity(int degree) {
        TaylorSeries s(degree);
        if (degree >= 1) s.c_[1] = 1.0;
        return s;
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    double operator[](int k) const { return c_[static_cast<size_t>(k)]; }
    double& operator[](int k) { return c_[static_cast<size_t>(k)]; }

    TaylorSeries& operator+=(const TaylorSeries& o) {
        for (size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
        return *this;
    }
    TaylorSeries& operator-=(const TaylorSeries& o) {
        for (size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
        return *this;
    }
    TaylorSeries& operator*=(double a) {
        for (double& ck : c_) ck *= a;
        return *this;
    }

    friend TaylorSeries operator+(TaylorSeries a, const TaylorSeries& b) { return a += b; }
    friend TaylorSeries operator-(TaylorSeries a, const TaylorSeries& b) { return a -= b; }
    friend TaylorSeries operator*(TaylorSeries a, double s) { return a *= s; }
    friend TaylorSeries operator*(double s, TaylorSeries a) { return a *= s; }

    // Truncated Cauchy product.
    friend TaylorSeries operator*(const TaylorSeries& a, const TaylorSeries& b) {
        const int n = a.degree();
        TaylorSeries r(n);
        for (int i = 0; i <= n; ++i) {
            if (a[i] == 0.0) continue;
            for (int j = 0; i + j <= n; ++j) r[i + j] += a[i] * b[j];
        }
        return r;
    }

  private:
    std::vector<double> c_;
};

// d/du, top coefficient zero-filled (see class note).
inline TaylorSeries derivative(const TaylorSeries& a) {
    const int n = a.degree();
    TaylorSeries r(n);
    for (int k = 0; k + 1 <= n; ++k) r[k] = static_cast<double>(k + 1) * a[k + 1];
    return r;
}

// Antiderivative with zero constant term.
inline TaylorSeries antiderivative(const TaylorSeries& a) {
    const int n = a.degree();
    TaylorSeries r(n);
    for (int k = 1; k <= n; ++k) r[k] = a[k - 1] / static_cast<double>(k);
    return r;
}

// sqrt of a series with positive constant term.
inline TaylorSeries sqrt_series(const TaylorSeries& a) {
    if (!(a[0] > 0.0)) throw std::domain_error("sqrt_series: constant term must be positive");
    const int n = a.degree();
    TaylorSeries r(n);
    r[0] = std::sqrt(a[0]);
    for (int k = 1; k <= n; ++k) {
        double acc = a[k];
        for (int j = 1; j < k; ++j) acc -= r[j] * r[k - j];
        r[k] = acc / (2.0 * r[0]);
    }
    return r;
}

// f(g(u)) for g with zero constant term, by Horner over truncated products.
inline TaylorSeries compose(const TaylorSeries& f, const TaylorSeries& g) {
    if (g[0] != 0.0) throw std::domain_error("compose: inner series must vanish at 0");
    const int n = f.degree();
    TaylorSeries r = TaylorSeries::constant(n, f[n]);
    for (int k = n - 1; k >= 0; --k) {
        r = r * g;
        r[0] += f[k];
    }
    return r;
}

// Functional inverse of s with s(0) = 0, s'(0) != 0: returns u(w) such that
// s(u(w)) = w through the truncation degree. Triangular solve: the w^k
// coefficient of s(u) is s1*u_k plus terms in u_1..u_{k-1} only.
inline TaylorSeries revert(const TaylorSeries& s) {
    if (s[0] != 0.0) throw std::domain_error("revert: series must vanish at 0");
    if (s[1] == 0.0) throw std::domain_error("revert: series must have nonzero linear term");
    const int n = s.degree();
    TaylorSeries u(n);
    u[1] = 1.0 / s[1];
    for (int k = 2; k <= n; ++k) {
        const TaylorSeries probe = compose(s, u); // uses u_1..u_{k-1}; u_k.. are 0
        u[k] = -probe[k] / s[1];
    }
    return u;
}

// Evaluate the truncated polynomial at offset u.
inline double eval(const TaylorSeries& a, double u) {
    double r = 0.0;
    for (int k = a.degree(); k >= 0; --k) r = r * u + a[k];
    return r;
}

} // namespace helixlab
