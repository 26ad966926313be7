#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "helixlab/curve.hpp"
#include "helixlab/grid.hpp"
#include "helixlab/pseudometric.hpp"
#include "support/oracles.hpp"

using namespace helixlab;

namespace {

const double kTwoPi = 2.0 * M_PI;

CurveSpec unit_helix() { return CurveSpec::euclid_helix(1.0, 1.0, 0.0, kTwoPi); }

CurveSpec cubic_curve() {
    Mat coeffs = Mat::Zero(3, 4);
    coeffs(0, 1) = 1.0;
    coeffs(1, 2) = 1.0;
    coeffs(2, 3) = 1.0;
    return CurveSpec::polynomial(coeffs, -1.0, 1.0);
}

double max_component_diff(const Vec& a, const Vec& b) { return (a - b).cwiseAbs().maxCoeff(); }

} // namespace

TEST_CASE("analytic jets reproduce closed-form derivatives") {
    const CurveSpec c = unit_helix();
    const Jet j = jet_eval(c, 0.0, 2);
    CHECK(max_component_diff(j.point, (Vec(3) << 1, 0, 0).finished()) == 0.0);
    CHECK(max_component_diff(j.derivs[0], (Vec(3) << 0, 1, 1).finished()) == 0.0);
    CHECK(max_component_diff(j.derivs[1], (Vec(3) << -1, 0, 0).finished()) == 0.0);

    // straight polynomial line
    Mat line = Mat::Zero(3, 2);
    line(0, 1) = 1.0;
    const Jet lj = jet_eval(CurveSpec::polynomial(line, 0.0, 10.0), 5.0, 2);
    CHECK(max_component_diff(lj.derivs[0], (Vec(3) << 1, 0, 0).finished()) == 0.0);
    CHECK(lj.derivs[1].cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(jet_eval(c, 0.0, 4), OrderError);
    CHECK_THROWS_AS(jet_eval(c, 0.0, 0), OrderError);
}

TEST_CASE("finite-difference jets track analytic jets") {
    // orders <= 3 within 1e-6, order 4 within 1e-4, per component
    const std::vector<CurveSpec> curves = {
        unit_helix(),
        CurveSpec::minkowski_helix(1.0, std::sqrt(2.0), 0.0, kTwoPi),
        CurveSpec::w_curve(1.0, 1.0, 1.0, 2.0, 0.0, kTwoPi),
        CurveSpec::w_curve(1.0, 1.0, 2.0, 2.0, 0.0, kTwoPi),
        cubic_curve(),
    };
    for (const CurveSpec& c : curves) {
        for (double frac : {0.0, 0.17, 0.52, 1.0}) {
            const double t = c.t_min() + frac * c.width();
            const int top = c.dim();
            const Jet a = jet_eval(c, t, top, JetMode::Analytic);
            const Jet f = jet_eval(c, t, top, JetMode::FiniteDifference);
            for (int k = 1; k <= top; ++k) {
                const double tol = k <= 3 ? 1e-6 : 1e-4;
                CHECK(max_component_diff(a.derivs[static_cast<size_t>(k - 1)],
                                         f.derivs[static_cast<size_t>(k - 1)]) < tol);
            }
        }
    }
}

TEST_CASE("speed under the metric") {
    const SignatureMetric e3 = SignatureMetric::euclidean(3);
    const SignatureMetric lor = SignatureMetric::lorentzian(3);

    for (double t : {0.0, 0.9, 4.4})
        CHECK(speed(e3, jet_eval(unit_helix(), t, 1)) == Catch::Approx(std::sqrt(2.0)).margin(1e-15));

    const CurveSpec mink = CurveSpec::minkowski_helix(1.0, std::sqrt(2.0), 0.0, kTwoPi);
    for (double t : {0.0, 2.1})
        CHECK(speed(lor, jet_eval(mink, t, 1)) == Catch::Approx(1.0).margin(1e-15));

    // null line (t, t, 0) in diag(-1,1,1)
    Mat line = Mat::Zero(3, 2);
    line(0, 1) = 1.0;
    line(1, 1) = 1.0;
    const CurveSpec null_line = CurveSpec::polynomial(line, 0.0, 1.0);
    CHECK(speed(lor, jet_eval(null_line, 0.3, 1)) == 0.0);
}

TEST_CASE("build_grid computes arclength by quadrature") {
    const SignatureMetric e3 = SignatureMetric::euclidean(3);
    const SampleGrid g = build_grid(e3, unit_helix(), 101);
    CHECK(g.size() == 101);
    CHECK(g.arclengths.front() == 0.0);
    CHECK(g.arclengths.back() == Catch::Approx(kTwoPi * std::sqrt(2.0)).margin(1e-9));
    for (size_t j = 1; j < g.size(); ++j) CHECK(g.arclengths[j] > g.arclengths[j - 1]);

    // unit-speed curve: s == t
    const SignatureMetric lor = SignatureMetric::lorentzian(3);
    const CurveSpec mink = CurveSpec::minkowski_helix(1.0, std::sqrt(2.0), 0.0, kTwoPi);
    const SampleGrid gm = build_grid(lor, mink, 33);
    for (size_t j = 0; j < gm.size(); ++j)
        CHECK(gm.arclengths[j] == Catch::Approx(gm.params[j]).margin(1e-9));

    // sample-count refinement leaves the total arclength unchanged
    const SampleGrid g2 = build_grid(e3, unit_helix(), 201);
    CHECK(std::abs(g2.arclengths.back() - g.arclengths.back()) /
              g.arclengths.back() < 1e-10);

    // null line is rejected
    Mat line = Mat::Zero(3, 2);
    line(0, 1) = 1.0;
    line(1, 1) = 1.0;
    CHECK_THROWS_AS(build_grid(lor, CurveSpec::polynomial(line, 0.0, 1.0), 33), NullCurveError);

    CHECK_THROWS_AS(build_grid(e3, unit_helix(), 5), std::invalid_argument);
}

TEST_CASE("near-null margin flags curves close to the gate") {
    const SignatureMetric lor = SignatureMetric::lorentzian(3);
    // g(a',a') = a^2 - b^2 = -3e-8: inside 10x of the default null gate
    const CurveSpec close = CurveSpec::minkowski_helix(1.0, std::sqrt(1.0 + 3e-8), 0.0, kTwoPi);
    const SampleGrid g = build_grid(lor, close, 33);
    CHECK(near_null_margin(lor, close, g) <= 10.0 * 1e-9);

    const CurveSpec far = CurveSpec::minkowski_helix(1.0, std::sqrt(2.0), 0.0, kTwoPi);
    const SampleGrid gf = build_grid(lor, far, 33);
    CHECK(near_null_margin(lor, far, gf) > 10.0 * 1e-9);
}

TEST_CASE("unit_speed_jet matches the explicit reparametrization") {
    const SignatureMetric e3 = SignatureMetric::euclidean(3);
    const CurveSpec c = unit_helix();

    // first derivative has unit norm at scattered parameters
    for (int i = 0; i < 20; ++i) {
        const double t = kTwoPi * static_cast<double>(i) / 19.0;
        const Jet sj = unit_speed_jet(e3, c, t, 3);
        CHECK(norm(e3, sj.derivs[0]) == Catch::Approx(1.0).margin(1e-9));

        // compare against the closed-form unit-speed helix at s = sqrt(2) t
        const auto want = oracles::unit_helix_s_jet(std::sqrt(2.0) * t, 3);
        for (int k = 1; k <= 3; ++k)
            CHECK(max_component_diff(sj.derivs[static_cast<size_t>(k - 1)],
                                     want[static_cast<size_t>(k)]) < 1e-12);
    }

    const Jet at0 = unit_speed_jet(e3, c, 0.0, 2);
    CHECK(max_component_diff(at0.derivs[1], (Vec(3) << -0.5, 0, 0).finished()) < 1e-15);

    // already unit-speed curves come back unchanged
    const SignatureMetric lor = SignatureMetric::lorentzian(3);
    const CurveSpec mink = CurveSpec::minkowski_helix(1.0, std::sqrt(2.0), 0.0, kTwoPi);
    const Jet tj = jet_eval(mink, 1.1, 3);
    const Jet sj = unit_speed_jet(lor, mink, 1.1, 3);
    for (int k = 0; k < 3; ++k)
        CHECK(max_component_diff(tj.derivs[static_cast<size_t>(k)], sj.derivs[static_cast<size_t>(k)]) < 1e-12);

    // null curve rejected
    Mat line = Mat::Zero(3, 2);
    line(0, 1) = 1.0;
    line(1, 1) = 1.0;
    CHECK_THROWS_AS(unit_speed_jet(lor, CurveSpec::polynomial(line, 0.0, 1.0), 0.5, 2), NullCurveError);
}

TEST_CASE("unit_speed_jet is invariant under affine reparametrization") {
    const SignatureMetric e3 = SignatureMetric::euclidean(3);
    const CurveSpec base = unit_helix();

    const double a = 2.3, b = -0.7; // t = a*u + b
    auto jets = [a, b](double u, int order) {
        std::vector<Vec> rows;
        const Jet j = jet_eval(CurveSpec::euclid_helix(1.0, 1.0, -100.0, 100.0), a * u + b, order);
        rows.push_back(j.point);
        double scale = 1.0;
        for (int k = 1; k <= order; ++k) {
            scale *= a;
            rows.push_back(Vec(scale * j.derivs[static_cast<size_t>(k - 1)]));
        }
        return rows;
    };
    const CurveSpec repar = CurveSpec::from_jets(3, jets, (0.0 - b) / a, (kTwoPi - b) / a, "affine helix");

    for (double t : {0.4, 1.9, 5.2}) {
        const Jet j1 = unit_speed_jet(e3, base, t, 3);
        const Jet j2 = unit_speed_jet(e3, repar, (t - b) / a, 3);
        for (int k = 0; k < 3; ++k)
            CHECK(max_component_diff(j1.derivs[static_cast<size_t>(k)],
                                     j2.derivs[static_cast<size_t>(k)]) < 1e-8);
    }
}

TEST_CASE("sampled tables support jets up to order 3") {
    const CurveSpec c = unit_helix();
    std::vector<double> params;
    std::vector<Vec> points;
    for (int j = 0; j <= 2000; ++j) {
        const double t = kTwoPi * static_cast<double>(j) / 2000.0;
        params.push_back(t);
        points.push_back(jet_eval(c, t, 1).point);
    }
    const CurveSpec table = CurveSpec::sampled(params, points);

    for (double t : {0.37, 3.3, 6.0}) {
        const Jet want = jet_eval(c, t, 3);
        const Jet got = jet_eval(table, t, 3);
        CHECK(max_component_diff(want.point, got.point) < 1e-10);
        CHECK(max_component_diff(want.derivs[0], got.derivs[0]) < 1e-8);
        CHECK(max_component_diff(want.derivs[1], got.derivs[1]) < 1e-6);
        CHECK(max_component_diff(want.derivs[2], got.derivs[2]) < 1e-3);
    }
    CHECK_THROWS_AS(jet_eval(table, 0.5, 4), OrderError);          // order > dim
    CHECK_THROWS_AS(jet_eval(table, -0.5, 2), DomainError);        // outside the table
    // order > 3 on a table is unsupported even if dim were larger: forced via a 4d table
    std::vector<Vec> pts4;
    for (size_t j = 0; j < params.size(); ++j)
        pts4.push_back((Vec(4) << points[j][0], points[j][1], points[j][2], 0.1 * params[j]).finished());
    const CurveSpec table4 = CurveSpec::sampled(params, pts4);
    CHECK_THROWS_AS(jet_eval(table4, 0.5, 4), UnsupportedOrder);
}

TEST_CASE("constancy_test semantics") {
    const ToleranceConfig tol;

    std::vector<double> c(50, 1.0 / std::sqrt(2.0));
    ConstancyVerdict v = constancy_test(c, tol);
    CHECK(v.is_constant);
    CHECK(v.is_nonzero);

    std::vector<double> z(50, 0.0);
    v = constancy_test(z, tol);
    CHECK(v.is_constant);
    CHECK_FALSE(v.is_nonzero);

    std::vector<double> s;
    for (int j = 0; j <= 100; ++j) s.push_back(std::sin(M_PI * j / 100.0));
    v = constancy_test(s, tol);
    CHECK_FALSE(v.is_constant);

    CHECK_THROWS_AS(constancy_test(std::vector<double>{}, tol), EmptyInput);
}

TEST_CASE("curve factory validation") {
    CHECK_THROWS_AS(CurveSpec::euclid_helix(-1.0, 1.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(CurveSpec::euclid_helix(1.0, 1.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(CurveSpec::minkowski_helix(1.0, 1.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(CurveSpec::w_curve(1.0, 2.0, 1.0, 2.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(CurveSpec::polynomial(Mat(), 0.0, 1.0), std::invalid_argument);
}
