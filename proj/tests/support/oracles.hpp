#pragma once
// Test-side oracles, independent of the library code paths they check.

#include <cmath>
#include <functional>
#include <vector>

#include "helixlab/frenet.hpp"
#include "helixlab/grid.hpp"
#include "helixlab/pseudometric.hpp"

namespace oracles {

using helixlab::FrameField;
using helixlab::FrenetApparatus;
using helixlab::SampleGrid;
using helixlab::Vec;

// Classical circular-helix invariants for (a cos t, a sin t, b t).
inline double helix_curvature(double a, double b) { return a / (a * a + b * b); }
inline double helix_torsion(double a, double b) { return b / (a * a + b * b); }

// Explicit unit-speed reparametrization of the unit helix (a = b = 1):
// (cos(s/sqrt(2)), sin(s/sqrt(2)), s/sqrt(2)), derivatives in closed form.
inline std::vector<Vec> unit_helix_s_jet(double s, int order) {
    const double r = 1.0 / std::sqrt(2.0);
    std::vector<Vec> out;
    for (int k = 0; k <= order; ++k) {
        Vec d(3);
        const double w = std::pow(r, k);
        d[0] = w * std::cos(s * r + 0.5 * M_PI * k);
        d[1] = w * std::sin(s * r + 0.5 * M_PI * k);
        d[2] = (k == 0) ? s * r : (k == 1 ? r : 0.0);
        out.push_back(d);
    }
    return out;
}

// Curvature/torsion of the twisted cubic (t, t^2, t^3) from the classical
// cross-product formulas; used as the varying-curvature oracle.
inline double cubic_curvature(double t) {
    const double g = 9.0 * t * t * t * t + 9.0 * t * t + 1.0;
    const double v2 = 1.0 + 4.0 * t * t + 9.0 * t * t * t * t;
    return 2.0 * std::sqrt(g) / std::pow(v2, 1.5);
}
inline double cubic_torsion(double t) {
    const double g = 9.0 * t * t * t * t + 9.0 * t * t + 1.0;
    return 3.0 / g;
}

// Frozen hand-derived invariants of w_curve(a,p,b,q) in E^4 (orthogonal
// double rotation): speed c, k_1 = m2/c^2, k_2, k_3 and Hstar_1.
struct WCurveConstants {
    double speed, k1, k2, k3, h1;
};
inline WCurveConstants w_curve_constants(double a, double p, double b, double q) {
    const double c2 = a * a * p * p + b * b * q * q;
    const double m2sq = a * a * std::pow(p, 4) + b * b * std::pow(q, 4);
    const double m2 = std::sqrt(m2sq);
    const double A = p * p - m2sq / c2;
    const double B = q * q - m2sq / c2;
    const double e3 = std::sqrt(a * a * p * p * A * A + b * b * q * q * B * B);
    WCurveConstants w;
    w.speed = std::sqrt(c2);
    w.k1 = m2 / c2;
    // k2 = <d3 + (m2^2/c^2) d1, E3/|E3|> / (m2 c)
    const double d3_dot_e3 = (a * a * std::pow(p, 6) + b * b * std::pow(q, 6)) - m2sq * m2sq / c2;
    w.k2 = d3_dot_e3 / (e3 * m2 * w.speed);
    // k3 via V3' . V4 with V4 oriented by det > 0
    w.k3 = std::abs(p * p - q * q) * a * b * p * p * q * q / (e3 * w.speed * m2);
    w.h1 = w.k3 / w.k2;
    return w;
}

// Fourth-order Runge-Kutta integration of the Frenet system
//   V_1' = k_1 V_2
//   V_i' = -eps_{i-2} eps_{i-1} k_{i-1} V_{i-1} + k_i V_{i+1}
//   V_n' = -eps_{n-2} eps_{n-1} k_{n-1} V_{n-1}
// plus alpha' = V_1, from a given initial frame, with prescribed curvature
// functions of arclength. Builds a FrameField directly; completely
// independent of the Gram-Schmidt pipeline.
inline FrameField integrate_frenet_system(
    int n, const std::vector<std::function<double(double)>>& curvatures,
    const std::vector<int>& epsilons, double s0, double s1, int samples, int substeps = 50) {
    using State = std::vector<Vec>; // [alpha, V_1..V_n]

    auto rhs = [&](double s, const State& y) {
        State d(y.size(), Vec::Zero(n));
        d[0] = y[1]; // alpha' = V_1
        for (int i = 1; i <= n; ++i) {
            Vec v = Vec::Zero(n);
            if (i > 1)
                v -= static_cast<double>(epsilons[static_cast<size_t>(i - 2)] *
                                         epsilons[static_cast<size_t>(i - 1)]) *
                     curvatures[static_cast<size_t>(i - 2)](s) * y[static_cast<size_t>(i - 1)];
            if (i < n) v += curvatures[static_cast<size_t>(i - 1)](s) * y[static_cast<size_t>(i + 1)];
            d[static_cast<size_t>(i)] = v;
        }
        return d;
    };
    auto axpy = [&](const State& y, double h, const State& k) {
        State r = y;
        for (size_t i = 0; i < r.size(); ++i) r[i] += h * k[i];
        return r;
    };

    State y(static_cast<size_t>(n) + 1, Vec::Zero(n));
    for (int i = 1; i <= n; ++i) y[static_cast<size_t>(i)] = Vec::Unit(n, i - 1);

    FrameField ff;
    ff.grid.params.resize(static_cast<size_t>(samples));
    ff.grid.arclengths.resize(static_cast<size_t>(samples));
    ff.grid.speeds.assign(static_cast<size_t>(samples), 1.0);

    const double H = (s1 - s0) / static_cast<double>(samples - 1);
    double s = s0;
    for (int j = 0; j < samples; ++j) {
        ff.grid.params[static_cast<size_t>(j)] = s;
        ff.grid.arclengths[static_cast<size_t>(j)] = s - s0;

        FrenetApparatus app;
        app.param = s;
        app.arclength = s - s0;
        app.point = y[0];
        app.epsilons = epsilons;
        for (int i = 1; i <= n; ++i) app.frame.push_back(y[static_cast<size_t>(i)]);
        for (int i = 1; i <= n - 1; ++i) app.curvatures.push_back(curvatures[static_cast<size_t>(i - 1)](s));
        ff.apparatus.push_back(std::move(app));

        if (j + 1 == samples) break;
        const double h = H / static_cast<double>(substeps);
        for (int step = 0; step < substeps; ++step) {
            const State k1 = rhs(s, y);
            const State k2 = rhs(s + 0.5 * h, axpy(y, 0.5 * h, k1));
            const State k3 = rhs(s + 0.5 * h, axpy(y, 0.5 * h, k2));
            const State k4 = rhs(s + h, axpy(y, h, k3));
            for (size_t i = 0; i < y.size(); ++i)
                y[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            s += h;
        }
        s = s0 + H * (j + 1); // avoid drift
    }
    return ff;
}

// The synthetic proper-order-4 slant case: k1 = k2 = 1, k3 = C cos(s) on
// [-1, 1] in E^4. The frame-coefficient functions lambda_i(s) = g(u, V_i)
// solve the transported system with lambda = (C sin s, C cos s, 0, 1), so
// u = sum_i lambda_i(s0) V_i(s0) is a genuine constant axis with
// g(u, V_4) = 1, Hstar_1 = C cos s, Hstar_2 = C sin s and signed sum C^2.
// Exercises the full induction depth at n = 4.
struct SyntheticSlant {
    FrameField ff;
    Vec axis;
    double C;
};
inline SyntheticSlant synthetic_order4_slant(int samples = 201, double C = 0.5) {
    std::vector<std::function<double(double)>> ks = {
        [](double) { return 1.0; },
        [](double) { return 1.0; },
        [C](double s) { return C * std::cos(s); },
    };
    const double s0 = -1.0;
    SyntheticSlant out;
    out.C = C;
    out.ff = integrate_frenet_system(4, ks, {1, 1, 1, 1}, s0, 1.0, samples);
    out.axis = Vec::Zero(4); // initial frame is the identity
    out.axis[0] = C * std::sin(s0);
    out.axis[1] = C * std::cos(s0);
    out.axis[3] = 1.0;
    return out;
}

// Constant-curvature order-5 case with a timelike tangent. With constant
// k_1..k_4 the coefficient system for a constant axis closes with
// mu_2 = mu_4 = 0, mu_5 = 1, mu_3 = eps_2 eps_3 (k_4/k_3),
// mu_1 = eps_0 eps_1 (k_2/k_1) mu_3 (mu_i = g(u, V_i)), so
// u = (eps_0 mu_1, 0, eps_2 mu_3, 0, eps_4) against the identity initial
// frame. Hstar_1 = eps_2 eps_3 k_4/k_3, Hstar_2 = 0,
// Hstar_3 = eps_0 eps_1 k_2 Hstar_1 / k_1; exercises recursion depth 3 and
// indefinite sign products.
struct SyntheticSlant5 {
    FrameField ff;
    Vec axis;
    std::vector<int> epsilons;
    double h1, h3;
};
inline SyntheticSlant5 synthetic_order5_slant(int samples = 201) {
    const double k1 = 1.0, k2 = 0.7, k3 = 0.9, k4 = 0.8;
    const std::vector<int> eps = {-1, 1, 1, 1, 1};
    std::vector<std::function<double(double)>> ks = {
        [=](double) { return k1; },
        [=](double) { return k2; },
        [=](double) { return k3; },
        [=](double) { return k4; },
    };
    SyntheticSlant5 out;
    out.epsilons = eps;
    out.ff = integrate_frenet_system(5, ks, eps, 0.0, 2.0, samples);
    out.h1 = static_cast<double>(eps[2] * eps[3]) * k4 / k3;
    out.h3 = static_cast<double>(eps[0] * eps[1]) * k2 * out.h1 / k1;
    const double mu3 = static_cast<double>(eps[2] * eps[3]) * (k4 / k3);
    const double mu1 = static_cast<double>(eps[0] * eps[1]) * (k2 / k1) * mu3;
    out.axis = Vec::Zero(5);
    out.axis[0] = static_cast<double>(eps[0]) * mu1;
    out.axis[2] = static_cast<double>(eps[2]) * mu3;
    out.axis[4] = static_cast<double>(eps[4]) * 1.0;
    return out;
}

} // namespace oracles
