#pragma once

namespace helixlab {

// One tolerance bundle shared by every verdict so all theorem gates stay
// comparable. atol/rtol feed constancy tests and identity thresholds;
// atol_zero decides "non-zero"; the remaining knobs gate the geometry.
struct ToleranceConfig {
    double atol = 1e-9;        // absolute floor for residuals/constancy
    double rtol = 1e-7;        // relative constancy tolerance
    double atol_zero = 1e-6;   // |mean| above this counts as non-zero
    double null_tol = 1e-9;    // |g(X,X)| <= null_tol*(1+|X|_e^2) => null
    double gs_tol = 1e-10;     // |g(E,E)| < gs_tol*|E|_e^2 => degenerate frame
    double dep_tol = 1e-10;    // Euclidean linear-dependence gate in Gram-Schmidt
    double k_tol = 1e-9;       // curvature positivity gate
    double quad_tol = 1e-12;   // adaptive Simpson absolute tolerance

    static ToleranceConfig analytic_defaults() { return {}; }

    // Finite-difference jets carry ~1e-8..1e-6 noise; fold that floor into
    // atol/rtol so derivative-bearing verdicts stay meaningful.
    static ToleranceConfig fd_defaults() {
        ToleranceConfig t;
        t.atol = 1e-6;
        t.rtol = 1e-4;
        return t;
    }
};

} // namespace helixlab
