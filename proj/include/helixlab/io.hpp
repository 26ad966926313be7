#pragma once
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "helixlab/curve.hpp"
#include "helixlab/eikonal.hpp"
#include "helixlab/errors.hpp"
#include "helixlab/frenet.hpp"
#include "helixlab/gallery.hpp"
#include "helixlab/harmonic.hpp"
#include "helixlab/pseudometric.hpp"

namespace helixlab {

// ---- deterministic number formatting ----

// 17 significant digits: round-trips doubles exactly.
inline std::string fmt_json(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// 12 significant digits: CSV stays readable.
inline std::string fmt_csv(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Minimal ordered JSON emitter. nlohmann/json parses the inputs; output goes
// through this so field order and float formatting are pinned byte-for-byte.
class JsonWriter {
  public:
    JsonWriter& begin_object() { return token("{", true); }
    JsonWriter& end_object() { return close("}"); }
    JsonWriter& begin_array() { return token("[", true); }
    JsonWriter& end_array() { return close("]"); }

    JsonWriter& key(const std::string& k) {
        comma();
        out_ += '"' + k + "\":";
        pending_ = true;
        return *this;
    }

    JsonWriter& value(double v) { return raw(std::isfinite(v) ? fmt_json(v) : "null"); }
    JsonWriter& value(int v) { return raw(std::to_string(v)); }
    JsonWriter& value(size_t v) { return raw(std::to_string(v)); }
    JsonWriter& value(bool v) { return raw(v ? "true" : "false"); }
    JsonWriter& value(const std::string& s) { return raw('"' + escape(s) + '"'); }
    JsonWriter& value(const char* s) { return value(std::string(s)); }

    JsonWriter& value(const Vec& v) {
        begin_array();
        for (int j = 0; j < v.size(); ++j) value(v[j]);
        return end_array();
    }
    JsonWriter& value(const std::vector<int>& v) {
        begin_array();
        for (int x : v) value(x);
        return end_array();
    }

    const std::string& str() const { return out_; }

  private:
    static std::string escape(const std::string& s) {
        std::string r;
        for (char c : s) {
            if (c == '"' || c == '\\') r += '\\';
            r += c;
        }
        return r;
    }
    void comma() {
        if (!first_ && !pending_) out_ += ',';
        first_ = false;
    }
    JsonWriter& raw(const std::string& s) {
        comma();
        out_ += s;
        pending_ = false;
        return *this;
    }
    JsonWriter& token(const char* t, bool opens) {
        comma();
        out_ += t;
        first_ = opens;
        pending_ = false;
        return *this;
    }
    JsonWriter& close(const char* t) {
        out_ += t;
        first_ = false;
        pending_ = false;
        return *this;
    }
    std::string out_;
    bool first_ = true;
    bool pending_ = false;
};

inline void write_constancy(JsonWriter& w, const ConstancyVerdict& v) {
    w.begin_object();
    w.key("mean").value(v.mean);
    w.key("max_abs_dev").value(v.max_abs_dev);
    w.key("rel_dev").value(v.rel_dev);
    w.key("is_constant").value(v.is_constant);
    w.key("is_nonzero").value(v.is_nonzero);
    w.end_object();
}

// ---- input parsing (nlohmann) ----

using json = nlohmann::json;

inline json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(what + ": " + e.what());
    }
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path);
}

// {"signs": [-1,1,1]}; dimension inferred from list length.
inline SignatureMetric metric_from_json(const json& j) {
    try {
        std::vector<int> signs = j.at("signs").get<std::vector<int>>();
        return SignatureMetric(std::move(signs));
    } catch (const json::exception& e) {
        throw ParseError(std::string("metric schema: ") + e.what());
    } catch (const DimensionError& e) {
        throw ParseError(std::string("metric schema: ") + e.what());
    }
}

// Inline form: comma-separated signs, e.g. "-1,1,1".
inline SignatureMetric metric_from_inline(const std::string& text) {
    std::vector<int> signs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            signs.push_back(std::stoi(item));
        } catch (...) {
            throw ParseError("bad inline metric entry: '" + item + "'");
        }
    }
    try {
        return SignatureMetric(std::move(signs));
    } catch (const DimensionError& e) {
        throw ParseError(std::string("inline metric: ") + e.what());
    }
}

// {"dim": n, "family": ..., "params": {...}, "domain": [t0, t1]}
inline CurveSpec curve_from_json(const json& j) {
    try {
        const std::string family = j.at("family").get<std::string>();
        const auto dom = j.at("domain").get<std::vector<double>>();
        if (dom.size() != 2) throw ParseError("curve schema: domain must be [t0, t1]");
        const json params = j.value("params", json::object());
        const int dim = j.value("dim", 0);

        if (family == "euclid_helix")
            return CurveSpec::euclid_helix(params.at("a").get<double>(), params.at("b").get<double>(),
                                           dom[0], dom[1]);
        if (family == "minkowski_helix")
            return CurveSpec::minkowski_helix(params.at("a").get<double>(), params.at("b").get<double>(),
                                              dom[0], dom[1]);
        if (family == "w_curve")
            return CurveSpec::w_curve(params.at("a").get<double>(), params.at("p").get<double>(),
                                      params.at("b").get<double>(), params.at("q").get<double>(),
                                      dom[0], dom[1]);
        if (family == "polynomial") {
            const auto rows = params.at("coefficients").get<std::vector<std::vector<double>>>();
            if (rows.empty()) throw ParseError("curve schema: empty coefficient matrix");
            Mat coeffs(rows.size(), rows.front().size());
            for (size_t r = 0; r < rows.size(); ++r) {
                if (rows[r].size() != rows.front().size())
                    throw ParseError("curve schema: ragged coefficient matrix");
                for (size_t c = 0; c < rows[r].size(); ++c) coeffs(static_cast<int>(r), static_cast<int>(c)) = rows[r][c];
            }
            if (dim != 0 && dim != static_cast<int>(rows.size()))
                throw ParseError("curve schema: dim does not match coefficient rows");
            return CurveSpec::polynomial(std::move(coeffs), dom[0], dom[1]);
        }
        throw ParseError("curve schema: unknown family '" + family + "'");
    } catch (const json::exception& e) {
        throw ParseError(std::string("curve schema: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("curve schema: ") + e.what());
    }
}

// {"dim": n, "form": "linear", "df": [...]} or {"form": "analytic", "builtin": name}
inline FieldSpec field_from_json(const json& j) {
    try {
        const std::string form = j.at("form").get<std::string>();
        if (form == "linear") {
            const auto df = j.at("df").get<std::vector<double>>();
            FieldSpec fs;
            fs.kind = FieldSpec::Kind::Linear;
            fs.df = Eigen::Map<const Vec>(df.data(), static_cast<int>(df.size()));
            if (j.contains("dim") && j.at("dim").get<int>() != static_cast<int>(df.size()))
                throw ParseError("field schema: dim does not match df length");
            return fs;
        }
        if (form == "analytic") {
            FieldSpec fs;
            fs.kind = FieldSpec::Kind::Builtin;
            fs.name = j.at("builtin").get<std::string>();
            return fs;
        }
        throw ParseError("field schema: unknown form '" + form + "'");
    } catch (const json::exception& e) {
        throw ParseError(std::string("field schema: ") + e.what());
    }
}

// ---- CSV / report emission ----

// Write-temp-then-rename so partial files never appear under the final name.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

// (t, s, k_1..k_{n-1}, eps_0..eps_{n-1}), one row per grid point.
inline std::string frenet_csv(const FrameField& ff) {
    const int n = ff.dim();
    std::string out = "t,s";
    for (int i = 1; i <= n - 1; ++i) out += ",k_" + std::to_string(i);
    for (int i = 0; i <= n - 1; ++i) out += ",eps_" + std::to_string(i);
    out += "\n";
    for (const FrenetApparatus& a : ff.apparatus) {
        out += fmt_csv(a.param);
        out += ",";
        out += fmt_csv(a.arclength);
        for (double k : a.curvatures) {
            out += ",";
            out += fmt_csv(k);
        }
        for (int e : a.epsilons) out += "," + std::to_string(e);
        out += "\n";
    }
    return out;
}

// (s, Hstar_0..Hstar_{n-2}, sum_signed, derivative_residual).
inline std::string harmonic_csv(const HarmonicProfile& hp) {
    const int n = hp.order;
    std::string out = "s";
    for (int i = 0; i <= n - 2; ++i) out += ",Hstar_" + std::to_string(i);
    out += ",sum_signed,derivative_residual\n";
    for (size_t j = 0; j < hp.grid.size(); ++j) {
        out += fmt_csv(hp.grid.arclengths[j]);
        for (int i = 0; i <= n - 2; ++i) {
            out += ",";
            out += fmt_csv(hp.values[static_cast<size_t>(i)][j]);
        }
        out += ",";
        out += fmt_csv(hp.sum_signed[j]);
        out += ",";
        out += fmt_csv(hp.derivative_residual[j]);
        out += "\n";
    }
    return out;
}

inline std::string report_json(const std::string& curve_label, const std::string& field_label,
                               const SignatureMetric& m, size_t samples, JetMode mode,
                               const SlantReport& rep, const FrameField& ff,
                               const HarmonicProfile& hp) {
    JsonWriter w;
    w.begin_object();
    w.key("curve").value(curve_label);
    w.key("field").value(field_label);
    w.key("metric").begin_object();
    w.key("signs").value(m.signs());
    w.end_object();
    w.key("samples").value(samples);
    w.key("jet_mode").value(to_string(mode));
    w.key("model_regime").value(rep.model_regime);
    w.key("near_null").value(rep.near_null);
    w.key("verdict").value(to_string(rep.verdict));
    w.key("eikonal");
    write_constancy(w, rep.eikonal);
    w.key("parallel_ok").value(rep.parallel_ok);
    w.key("slant");
    write_constancy(w, rep.slant);
    w.key("thm31_max_residual").value(rep.thm31_max_residual);
    w.key("vn1_orthogonality").value(rep.vn1_orthogonality);
    w.key("axis").begin_object();
    w.key("max_comparison_error").value(rep.axis_max_error);
    w.key("max_lambda_nm1").value(rep.axis_lambda_nm1);
    w.end_object();
    w.key("thm33");
    write_constancy(w, rep.thm33);
    w.key("thm33_paper_anomalous").value(rep.thm33_paper_anomalous);
    w.key("cor32_residual").value(rep.cor32_residual);
    w.key("lemma32").begin_object();
    w.key("applicable").value(rep.lemma32.applicable);
    w.key("sum_constant").value(rep.lemma32.sum_constant);
    w.key("identity_holds").value(rep.lemma32.identity_holds);
    w.key("agree").value(rep.lemma32.agree);
    w.end_object();

    // grid-level diagnostics
    const int n = ff.dim();
    Vec kmean = Vec::Zero(n - 1);
    for (const FrenetApparatus& a : ff.apparatus)
        for (int i = 0; i < n - 1; ++i) kmean[i] += a.curvatures[static_cast<size_t>(i)];
    kmean /= static_cast<double>(ff.size());
    w.key("curvature_means").value(kmean);
    w.key("epsilons").value(ff.apparatus.front().epsilons);
    w.key("arclength_total").value(hp.grid.arclengths.back());
    w.end_object();
    return w.str();
}

} // namespace helixlab
