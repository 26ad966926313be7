#pragma once
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "helixlab/curve.hpp"
#include "helixlab/eikonal.hpp"
#include "helixlab/errors.hpp"
#include "helixlab/frenet.hpp"
#include "helixlab/gallery.hpp"
#include "helixlab/grid.hpp"
#include "helixlab/harmonic.hpp"
#include "helixlab/io.hpp"
#include "helixlab/pseudometric.hpp"
#include "helixlab/tolerances.hpp"

namespace helixlab {

// Exit codes shared by all subcommands.
enum ExitCode : int {
    ExitSlantHelix = 0,
    ExitNotSlant = 1,
    ExitHypothesisFailed = 2,
    ExitComputationalError = 3,
    ExitUsageError = 4,
};

struct RunConfig {
    std::string curve_src;
    std::string field_src;
    std::string metric_src;
    int samples = 201;
    JetMode jet_mode = JetMode::Analytic;
    std::optional<double> rtol_override;
    std::string out_dir = ".";
    std::string format = "both"; // json | csv | both
};

namespace detail {

inline bool file_exists(const std::string& p) {
    std::error_code ec;
    return std::filesystem::exists(p, ec) && std::filesystem::is_regular_file(p, ec);
}

struct ResolvedInputs {
    SignatureMetric metric{std::vector<int>{1}};
    std::optional<CurveSpec> curve;
    FieldSpec field;
    std::string curve_label;
};

inline ResolvedInputs resolve_inputs(const RunConfig& cfg) {
    ResolvedInputs r;
    const GalleryEntry* entry = find_gallery_entry(cfg.curve_src);

    if (entry != nullptr) {
        r.curve = entry->curve;
        r.metric = entry->metric;
        r.field = entry->field;
    } else if (file_exists(cfg.curve_src)) {
        r.curve = curve_from_json(load_json_file(cfg.curve_src));
        r.metric = SignatureMetric::euclidean(r.curve->dim());
    } else {
        throw ParseError("curve '" + cfg.curve_src + "' is neither a gallery name nor a file");
    }
    r.curve_label = entry ? entry->name + " " + r.curve->label() : r.curve->label();

    if (!cfg.metric_src.empty()) {
        if (file_exists(cfg.metric_src))
            r.metric = metric_from_json(load_json_file(cfg.metric_src));
        else
            r.metric = metric_from_inline(cfg.metric_src);
    }
    if (r.metric.dim() != r.curve->dim())
        throw ParseError("metric dimension " + std::to_string(r.metric.dim()) +
                         " does not match curve dimension " + std::to_string(r.curve->dim()));

    if (!cfg.field_src.empty()) {
        if (cfg.field_src.rfind("linear:", 0) == 0) {
            std::vector<double> df;
            std::stringstream ss(cfg.field_src.substr(7));
            std::string item;
            while (std::getline(ss, item, ',')) {
                try {
                    df.push_back(std::stod(item));
                } catch (...) {
                    throw ParseError("bad inline field entry: '" + item + "'");
                }
            }
            r.field.kind = FieldSpec::Kind::Linear;
            r.field.df = Eigen::Map<const Vec>(df.data(), static_cast<int>(df.size()));
        } else if (cfg.field_src == "quadratic_x1" || cfg.field_src == "radial_xy") {
            r.field.kind = FieldSpec::Kind::Builtin;
            r.field.name = cfg.field_src;
        } else if (file_exists(cfg.field_src)) {
            r.field = field_from_json(load_json_file(cfg.field_src));
        } else {
            throw ParseError("field '" + cfg.field_src + "' is neither inline, builtin nor a file");
        }
    } else if (entry == nullptr) {
        throw ParseError("--field is required for non-gallery curves");
    }
    if (r.field.kind == FieldSpec::Kind::Linear && r.field.df.size() != r.curve->dim())
        throw ParseError("field dimension does not match curve dimension");
    return r;
}

struct PipelineResult {
    FrameField ff;
    HarmonicProfile hp;
    ScalarField sf = ScalarField::linear(Vec::Zero(1));
    SlantReport report;
    std::string field_label;
};

inline PipelineResult run_pipeline(const SignatureMetric& m, const CurveSpec& c, const FieldSpec& fs,
                                   int samples, JetMode mode, const ToleranceConfig& tol) {
    PipelineResult pr;
    const SampleGrid grid = build_grid(m, c, samples, mode, tol);
    pr.ff = frame_field(m, c, grid, mode, tol);
    pr.hp = harmonic_profile(pr.ff, tol);
    pr.sf = resolve_field(fs, m, pr.ff, pr.hp);
    pr.field_label = fs.label();
    pr.report = full_report(m, pr.sf, pr.ff, pr.hp, tol);
    pr.report.near_null = near_null_margin(m, c, grid, mode) <= 10.0 * tol.null_tol;
    return pr;
}

} // namespace detail

// HELIXLAB_TOL_RTOL overrides rtol for every subcommand; rejects garbage.
inline std::optional<double> rtol_from_env() {
    const char* raw = std::getenv("HELIXLAB_TOL_RTOL");
    if (raw == nullptr || *raw == '\0') return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(raw, &end);
    if (end == raw || *end != '\0' || !(v > 0.0))
        throw ParseError("HELIXLAB_TOL_RTOL must be a positive number, got '" + std::string(raw) + "'");
    return v;
}

inline ToleranceConfig tolerances_for(const RunConfig& cfg) {
    ToleranceConfig tol = cfg.jet_mode == JetMode::Analytic ? ToleranceConfig::analytic_defaults()
                                                            : ToleranceConfig::fd_defaults();
    if (cfg.rtol_override) tol.rtol = *cfg.rtol_override;
    return tol;
}

// analyze: run the pipeline, write frenet.csv / harmonic.csv / report.json,
// exit by verdict (0 slant, 1 not slant, 2 hypothesis failed, 3 numeric
// failure, 4 config/parse failure).
inline int cmd_analyze(const RunConfig& cfg, std::ostream& err = std::cerr) {
    try {
        if (cfg.samples < 9) throw ParseError("--samples must be >= 9");
        if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "both")
            throw ParseError("--format must be json, csv or both");
        const detail::ResolvedInputs in = detail::resolve_inputs(cfg);
        const ToleranceConfig tol = tolerances_for(cfg);

        std::error_code ec;
        std::filesystem::create_directories(cfg.out_dir, ec);
        if (!std::filesystem::is_directory(cfg.out_dir))
            throw ParseError("output directory '" + cfg.out_dir + "' is not writable");

        const detail::PipelineResult pr =
            detail::run_pipeline(in.metric, *in.curve, in.field, cfg.samples, cfg.jet_mode, tol);

        const std::filesystem::path dir(cfg.out_dir);
        if (cfg.format != "json") {
            atomic_write(dir / "frenet.csv", frenet_csv(pr.ff));
            atomic_write(dir / "harmonic.csv", harmonic_csv(pr.hp));
        }
        if (cfg.format != "csv")
            atomic_write(dir / "report.json",
                         report_json(in.curve_label, pr.field_label, in.metric,
                                     static_cast<size_t>(cfg.samples), cfg.jet_mode, pr.report,
                                     pr.ff, pr.hp) +
                             "\n");

        switch (pr.report.verdict) {
            case SlantVerdict::SlantHelix: return ExitSlantHelix;
            case SlantVerdict::NotSlant: return ExitNotSlant;
            default: return ExitHypothesisFailed;
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return ExitUsageError;
    } catch (const Error& e) {
        err << "computational error: " << e.what() << "\n";
        return ExitComputationalError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return ExitComputationalError;
    }
}

// verify: run the pinned gallery manifest, print the fixed-format table and
// one line per failed assertion. Exit 0 iff everything passes.
inline int cmd_verify(const std::string& only, std::ostream& out = std::cout,
                      std::ostream& err = std::cerr,
                      std::optional<double> rtol_override = std::nullopt) {
    std::vector<const GalleryEntry*> selected;
    for (const GalleryEntry& e : gallery())
        if (only.empty() || e.name == only) selected.push_back(&e);
    if (selected.empty()) {
        err << "error: unknown gallery entry '" << only << "'\n";
        return ExitUsageError;
    }

    ToleranceConfig tol = ToleranceConfig::analytic_defaults();
    if (rtol_override) tol.rtol = *rtol_override;

    std::vector<std::string> failures;
    auto expect = [&](const std::string& name, bool ok, const std::string& what) {
        if (!ok) failures.push_back(name + ": " + what);
    };

    char line[256];
    std::snprintf(line, sizeof(line), "%-20s %-28s %12s %12s %12s %12s\n", "curve", "verdict",
                  "thm31_res", "axis_err", "thm33_dev", "cor32_res");
    out << line;

    for (const GalleryEntry* e : selected) {
        try {
            const detail::PipelineResult pr =
                detail::run_pipeline(e->metric, e->curve, e->field, 201, JetMode::Analytic, tol);
            const SlantReport& rep = pr.report;

            std::snprintf(line, sizeof(line), "%-20s %-28s %12.3e %12.3e %12.3e %12.3e\n",
                          e->name.c_str(), to_string(rep.verdict).c_str(), rep.thm31_max_residual,
                          rep.axis_max_error, rep.thm33.max_abs_dev, rep.cor32_residual);
            out << line;

            expect(e->name, rep.verdict == e->expected_verdict,
                   "verdict " + to_string(rep.verdict) + ", expected " + to_string(e->expected_verdict));
            expect(e->name, frenet_residual(e->metric, pr.ff) < e->bounds.frenet_closure,
                   "frenet closure residual exceeded");
            expect(e->name, orthonormality_defect(e->metric, pr.ff) < e->bounds.orthonormality,
                   "orthonormality defect exceeded");
            expect(e->name, rep.lemma32.applicable == e->lemma32_applicable,
                   e->lemma32_applicable ? "lemma32 unexpectedly NotApplicable"
                                         : "lemma32 unexpectedly applicable");
            if (e->lemma32_applicable) expect(e->name, rep.lemma32.agree, "lemma32 sides disagree");
            if (e->expected_verdict == SlantVerdict::SlantHelix) {
                expect(e->name, rep.thm31_max_residual < e->bounds.thm31, "thm31 residual exceeded");
                expect(e->name, rep.vn1_orthogonality < e->bounds.vn1, "vn1 orthogonality exceeded");
                expect(e->name, rep.axis_max_error < e->bounds.axis, "axis error exceeded");
                expect(e->name, rep.cor32_residual < e->bounds.cor32, "cor32 residual exceeded");
                expect(e->name, rep.thm33.is_constant && rep.thm33.is_nonzero,
                       "thm33 sum not a nonzero constant");
            }
        } catch (const std::exception& ex) {
            std::snprintf(line, sizeof(line), "%-20s %-28s %12s %12s %12s %12s\n", e->name.c_str(),
                          "error", "-", "-", "-", "-");
            out << line;
            failures.push_back(e->name + ": " + ex.what());
        }
    }

    if (failures.empty()) {
        out << "verify: all gallery assertions passed (" << selected.size() << " entries)\n";
        return 0;
    }
    for (const std::string& f : failures) out << "FAIL " << f << "\n";
    out << "verify: " << failures.size() << " assertion(s) failed\n";
    return 1;
}

// gallery: list the manifest.
inline int cmd_gallery(std::ostream& out = std::cout) {
    for (const GalleryEntry& e : gallery()) {
        char line[512];
        std::snprintf(line, sizeof(line), "%-20s dim %d  metric %-12s %s\n", e.name.c_str(),
                      e.curve.dim(), e.metric.signature_string().c_str(), e.curve.label().c_str());
        out << line;
        out << "                     field: " << e.field.label() << "\n";
        out << "                     " << e.note << "\n";
    }
    return 0;
}

} // namespace helixlab
