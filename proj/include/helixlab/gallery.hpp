#pragma once
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "helixlab/curve.hpp"
#include "helixlab/eikonal.hpp"
#include "helixlab/pseudometric.hpp"

namespace helixlab {

// Declarative field description; ConstructedAxis is resolved at run time by
// evaluating the axis formula at the mid sample and lowering the result.
struct FieldSpec {
    enum class Kind { Linear, Builtin, ConstructedAxis };
    Kind kind = Kind::Linear;
    Vec df;           // Linear
    std::string name; // Builtin

    std::string label() const {
        switch (kind) {
            case Kind::Linear: {
                std::string s = "linear df=(";
                for (int j = 0; j < df.size(); ++j) {
                    double v = df[j];
                    if (v == static_cast<long long>(v))
                        s += std::to_string(static_cast<long long>(v));
                    else
                        s += std::to_string(v);
                    if (j + 1 < df.size()) s += ",";
                }
                return s + ")";
            }
            case Kind::Builtin: return "analytic " + name;
            case Kind::ConstructedAxis: return "constructed axis candidate";
        }
        return "field";
    }
};

// Per-entry residual bounds asserted by `verify`; NaN disables a bound
// (diagnostic-only entries).
struct GalleryBounds {
    double thm31 = std::numeric_limits<double>::quiet_NaN();
    double vn1 = std::numeric_limits<double>::quiet_NaN();
    double axis = std::numeric_limits<double>::quiet_NaN();
    double cor32 = std::numeric_limits<double>::quiet_NaN();
    double frenet_closure = 1e-5;
    double orthonormality = 1e-9;
};

// The machine-readable manifest behind `verify` and `gallery`.
struct GalleryEntry {
    std::string name;
    SignatureMetric metric;
    CurveSpec curve;
    FieldSpec field;
    SlantVerdict expected_verdict;
    bool lemma32_applicable = true; // expected lemma applicability
    GalleryBounds bounds;
    std::string note;
};

inline const std::vector<GalleryEntry>& gallery() {
    static const std::vector<GalleryEntry> entries = [] {
        std::vector<GalleryEntry> g;
        const double two_pi = 2.0 * M_PI;

        {
            GalleryEntry e{"euclid_helix",
                           SignatureMetric::euclidean(3),
                           CurveSpec::euclid_helix(1.0, 1.0, 0.0, two_pi),
                           FieldSpec{FieldSpec::Kind::Linear, (Vec(3) << 0, 0, 1).finished(), ""},
                           SlantVerdict::SlantHelix,
                           true,
                           GalleryBounds{1e-9, 1e-8, 1e-9, 1e-6, 1e-5, 1e-9},
                           "expected: SlantHelix with df=(0,0,1); Hstar_1 = 1"};
            g.push_back(std::move(e));
        }
        {
            GalleryEntry e{"minkowski_helix",
                           SignatureMetric::lorentzian(3),
                           CurveSpec::minkowski_helix(1.0, std::sqrt(2.0), 0.0, two_pi),
                           FieldSpec{FieldSpec::Kind::Linear, (Vec(3) << 1, 0, 0).finished(), ""},
                           SlantVerdict::SlantHelix,
                           true,
                           GalleryBounds{1e-9, 1e-8, 1e-9, 1e-6, 1e-5, 1e-9},
                           "expected: SlantHelix with df=(1,0,0); Hstar_1 = -sqrt(2)"};
            g.push_back(std::move(e));
        }
        {
            GalleryEntry e{"w_curve",
                           SignatureMetric::euclidean(4),
                           CurveSpec::w_curve(1.0, 1.0, 1.0, 2.0, 0.0, two_pi),
                           FieldSpec{FieldSpec::Kind::Linear, (Vec(4) << 0, 0, 0, 1).finished(), ""},
                           SlantVerdict::NotSlant,
                           false,
                           GalleryBounds{},
                           "expected: NotSlant; Lemma 3.2 NotApplicable (Hstar_{n-2} = 0)"};
            g.push_back(std::move(e));
        }
        {
            GalleryEntry e{"w_curve_wide",
                           SignatureMetric::euclidean(4),
                           CurveSpec::w_curve(1.0, 1.0, 2.0, 2.0, 0.0, two_pi),
                           FieldSpec{FieldSpec::Kind::ConstructedAxis, Vec(), ""},
                           SlantVerdict::NotSlant,
                           false,
                           GalleryBounds{},
                           "expected: NotSlant (no parallel axis exists; identity suite runs "
                           "diagnostically); Lemma 3.2 NotApplicable (Hstar_{n-2} = 0)"};
            g.push_back(std::move(e));
        }
        {
            Mat coeffs = Mat::Zero(3, 4); // (t, t^2, t^3)
            coeffs(0, 1) = 1.0;
            coeffs(1, 2) = 1.0;
            coeffs(2, 3) = 1.0;
            GalleryEntry e{"cubic",
                           SignatureMetric::euclidean(3),
                           CurveSpec::polynomial(coeffs, -1.0, 1.0),
                           FieldSpec{FieldSpec::Kind::Linear, (Vec(3) << 0, 0, 1).finished(), ""},
                           SlantVerdict::NotSlant,
                           true,
                           GalleryBounds{},
                           "expected: NotSlant (Hstar_1 varies)"};
            g.push_back(std::move(e));
        }
        {
            GalleryEntry e{"euclid_helix_qx1",
                           SignatureMetric::euclidean(3),
                           CurveSpec::euclid_helix(1.0, 1.0, 0.0, two_pi),
                           FieldSpec{FieldSpec::Kind::Builtin, Vec(), "quadratic_x1"},
                           SlantVerdict::HypothesisFailedEikonal,
                           true,
                           GalleryBounds{},
                           "expected: HypothesisFailed(eikonal) with f = x_1^2"};
            g.push_back(std::move(e));
        }
        {
            GalleryEntry e{"euclid_helix_radial",
                           SignatureMetric::euclidean(3),
                           CurveSpec::euclid_helix(1.0, 1.0, 0.0, two_pi),
                           FieldSpec{FieldSpec::Kind::Builtin, Vec(), "radial_xy"},
                           SlantVerdict::HypothesisFailedParallel,
                           true,
                           GalleryBounds{},
                           "expected: HypothesisFailed(parallel) with f = (x_1^2+x_2^2)/2"};
            g.push_back(std::move(e));
        }
        return g;
    }();
    return entries;
}

inline const GalleryEntry* find_gallery_entry(const std::string& name) {
    for (const GalleryEntry& e : gallery())
        if (e.name == name) return &e;
    return nullptr;
}

// Resolve a FieldSpec against an already-built frame field. The constructed
// candidate takes the axis formula at the mid sample with unit slant constant
// and lowers it back to a covector; for curves admitting a parallel axis this
// reproduces it up to scale, otherwise the slant gate rejects the result.
inline ScalarField resolve_field(const FieldSpec& fs, const SignatureMetric& m, const FrameField& ff,
                                 const HarmonicProfile& hp) {
    switch (fs.kind) {
        case FieldSpec::Kind::Linear:
            return ScalarField::linear(fs.df);
        case FieldSpec::Kind::Builtin:
            return ScalarField::builtin(fs.name, m.dim());
        case FieldSpec::Kind::ConstructedAxis: {
            const int n = ff.dim();
            const size_t mid = ff.size() / 2;
            const FrenetApparatus& a = ff.apparatus[mid];
            Vec u = Vec::Zero(n);
            for (int l = 1; l <= n - 2; ++l)
                u += static_cast<double>(a.epsilons[static_cast<size_t>(l - 1)]) *
                     hp.values[static_cast<size_t>(n - 1 - l)][mid] * a.frame[static_cast<size_t>(l - 1)];
            u += static_cast<double>(a.epsilons[static_cast<size_t>(n - 1)]) * a.frame[static_cast<size_t>(n - 1)];
            return ScalarField::linear(lower_vector(m, u), "constructed_axis_candidate");
        }
    }
    throw Error("unresolvable field spec");
}

} // namespace helixlab
