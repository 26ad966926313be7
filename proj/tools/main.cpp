#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "helixlab/helixlab.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Frenet apparatus and eikonal slant-helix verification in flat pseudo-Euclidean R^n"};
    app.require_subcommand(1);

    helixlab::RunConfig cfg;
    std::string jets = "analytic";

    CLI::App* analyze = app.add_subcommand("analyze", "analyze one curve/field pair and emit reports");
    analyze->add_option("--curve", cfg.curve_src, "gallery name or curve JSON path")->required();
    analyze->add_option("--field", cfg.field_src,
                        "field JSON path, builtin name, or linear:c1,c2,... (gallery default if omitted)");
    analyze->add_option("--metric", cfg.metric_src, "metric JSON path or inline signs like -1,1,1");
    analyze->add_option("--samples", cfg.samples, "grid samples (default 201)");
    analyze->add_option("--jets", jets, "analytic | fd");
    analyze->add_option("--out", cfg.out_dir, "output directory (default .)");
    analyze->add_option("--format", cfg.format, "json | csv | both");

    std::string only;
    CLI::App* verify = app.add_subcommand("verify", "run the gallery acceptance manifest");
    verify->add_option("--only", only, "restrict to one gallery entry");

    CLI::App* gallery_cmd = app.add_subcommand("gallery", "list builtin curves, fields and expected verdicts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : helixlab::ExitUsageError;
    }

    std::optional<double> rtol;
    try {
        rtol = helixlab::rtol_from_env();
    } catch (const helixlab::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return helixlab::ExitUsageError;
    }

    if (analyze->parsed()) {
        if (jets == "analytic")
            cfg.jet_mode = helixlab::JetMode::Analytic;
        else if (jets == "fd" || jets == "finite_difference")
            cfg.jet_mode = helixlab::JetMode::FiniteDifference;
        else {
            std::cerr << "error: --jets must be 'analytic' or 'fd'\n";
            return helixlab::ExitUsageError;
        }
        cfg.rtol_override = rtol;
        return helixlab::cmd_analyze(cfg);
    }
    if (verify->parsed()) return helixlab::cmd_verify(only, std::cout, std::cerr, rtol);
    if (gallery_cmd->parsed()) return helixlab::cmd_gallery();
    return helixlab::ExitUsageError;
}
