// qpade: quasi-Pade approximants for semi-infinite filtration BVPs.
//
//   qpade solve   --config case.json [--out DIR] [--paper-compat]
//   qpade profile --config case.json --M 3 [--out DIR] [--paper-compat]
//   qpade fit     --csv viscosity.csv [--out DIR]
//
// Exit codes: 0 all requested M solved, 2 partial, 1 configuration / IO failure.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qpade/errors.hpp"
#include "qpade/report.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Quasi-fractional Pade approximants for nonlinear filtration BVPs"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    bool paper_compat = false;
    int order = 0;
    std::string csv_path;

    auto* solve = app.add_subcommand("solve", "solve for r1 at every requested M and run the shooting oracle");
    solve->add_option("--config", config_path, "case file (JSON)")->required()->check(CLI::ExistingFile);
    solve->add_option("--out", out_dir, "output directory (overrides the case file)");
    solve->add_flag("--paper-compat", paper_compat, "rounded pressure scale, [0, 4] traveling-wave integral");

    auto* profile = app.add_subcommand("profile", "emit xi, oracle, pade, delta for one M");
    profile->add_option("--config", config_path, "case file (JSON)")->required()->check(CLI::ExistingFile);
    profile->add_option("--M", order, "approximant order (1..3)")->required();
    profile->add_option("--out", out_dir, "output directory (overrides the case file)");
    profile->add_flag("--paper-compat", paper_compat, "rounded pressure scale, [0, 4] traveling-wave integral");

    auto* fit = app.add_subcommand("fit", "fit the viscosity parabola to (pressure, viscosity) data");
    fit->add_option("--csv", csv_path, "pressure [Pa], viscosity [Pa s]")->required()->check(CLI::ExistingFile);
    fit->add_option("--out", out_dir, "output directory")->default_val(".");

    CLI11_PARSE(app, argc, argv);

    qpade::RunOptions options;
    options.paper_compat = paper_compat;
    if (!out_dir.empty()) options.output_override = std::filesystem::path(out_dir);

    try {
        if (*solve) {
            const auto config = qpade::load_case_config(config_path);
            const auto report = qpade::cmd_solve(config, options);
            std::cout << qpade::format_table(report);
            return qpade::exit_code(report);
        }
        if (*profile) {
            const auto config = qpade::load_case_config(config_path);
            std::cout << qpade::cmd_profile(config, order, options).string() << '\n';
            return 0;
        }
        if (*fit) {
            std::cout << qpade::cmd_fit(csv_path, out_dir).string() << '\n';
            return 0;
        }
    } catch (const qpade::Error& e) {
        std::cerr << "qpade: " << e.what() << '\n';
        return 1;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "qpade: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
