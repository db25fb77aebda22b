#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli/commands.hpp"

// poisson-reduce: batch front end for rigid-body and reduced Poisson-sphere
// simulations, verification, and plotting.

int main(int argc, char** argv) {
    CLI::App app{"Rigid body with a fixed point: full and reduced simulations on the "
                 "Poisson sphere, verification battery, SVG plots"};
    app.require_subcommand(1);

    poisson::cli::GlobalOptions global;
    app.add_option("--jobs", global.jobs, "Fan independent config runs across N workers")
        ->default_val(1);
    app.add_option("--seed", global.seed, "Seed for verification sampling")->default_val(0);
    app.add_flag("--quiet", global.quiet, "Only log errors");

    std::vector<std::string> full_configs;
    auto* full = app.add_subcommand("simulate-full", "Integrate the full system on SO(3)");
    full->add_option("config", full_configs, "JSON config file(s)")->required();

    std::vector<std::string> reduced_configs;
    bool with_kg = false;
    auto* reduced =
        app.add_subcommand("simulate-reduced", "Integrate the reduced system on the sphere");
    reduced->add_option("config", reduced_configs, "JSON config file(s)")->required();
    reduced->add_flag("--kg", with_kg, "Emit the signed geodesic curvature column");

    std::string verify_config;
    double kappa_scale = 1.0;
    auto* verify = app.add_subcommand("verify", "Run the verification battery");
    verify->add_option("config", verify_config, "Optional JSON config for system parameters");
    verify->add_option("--kappa-scale", kappa_scale,
                       "Scale the gyroscopic form in the projection check (fault-injection hook)")
        ->default_val(1.0);

    std::string plot_csv, plot_svg;
    auto* plot = app.add_subcommand("plot", "Render a trajectory CSV as a static SVG");
    plot->add_option("csv", plot_csv, "Trajectory CSV")->required();
    plot->add_option("svg", plot_svg, "Output SVG path")->required();

    CLI11_PARSE(app, argc, argv);

    if (full->parsed()) return poisson::cli::cmd_simulate_full(full_configs, global);
    if (reduced->parsed())
        return poisson::cli::cmd_simulate_reduced(reduced_configs, global, with_kg);
    if (verify->parsed()) return poisson::cli::cmd_verify(verify_config, global, kappa_scale);
    if (plot->parsed()) return poisson::cli::cmd_plot(plot_csv, plot_svg, global);
    return 1;
}
