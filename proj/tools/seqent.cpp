// seqent: entropic uncertainty bounds for distinct and successive measurements.

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <string>

#include "seqent/commands.hpp"
#include "seqent/verify.hpp"

namespace cli = seqent::cli;

int main(int argc, char** argv) {
    CLI::App app{"Entropic uncertainty bounds for distinct and successive measurements"};
    app.require_subcommand(1);
    app.fallthrough();

    cli::GlobalOptions g;
    std::string format = "table";
    app.add_option("--log-base", g.log_base, "logarithm base for every entropy (default e)");
    app.add_option("--seed", g.seed, "seed for optimizer starts and sampling");
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"table", "csv", "json"}));
    app.add_flag("--quiet", g.quiet, "suppress timing on stderr");

    cli::BoundsArgs bounds;
    auto* sc_bounds = app.add_subcommand("bounds", "bounds for observables in a scenario file");
    sc_bounds->add_option("file", bounds.file, "scenario JSON")->required();
    sc_bounds->add_option("--order", bounds.order, "measurement order, e.g. --order A B");
    sc_bounds->add_option("--starts", bounds.starts, "optimizer starts");

    cli::Table1Args table;
    auto* sc_table = app.add_subcommand("table1", "qubit bounds at 0..90 degrees against reference values");
    sc_table->add_option("--tolerance", table.tolerance, "allowed absolute deviation");

    cli::SweepArgs sweep;
    auto* sc_sweep = app.add_subcommand("sweep", "qubit bound curves over an angle grid");
    sc_sweep->add_option("--theta-min", sweep.theta_min, "degrees");
    sc_sweep->add_option("--theta-max", sweep.theta_max, "degrees");
    sc_sweep->add_option("--steps", sweep.steps, "grid points");

    cli::VerifyArgs verify;
    auto* sc_verify = app.add_subcommand("verify", "randomized property suite");
    sc_verify->add_option("--instances", verify.instances, "random instances");
    sc_verify->add_option("--dims", verify.dims, "dimension range lo-hi (2..8)");

    cli::SimulateArgs simulate;
    auto* sc_simulate = app.add_subcommand("simulate", "Monte Carlo sampling of a measurement sequence");
    sc_simulate->add_option("file", simulate.file, "scenario JSON with a state")->required();
    sc_simulate->add_option("--order", simulate.order, "measurement order");
    sc_simulate->add_option("--samples", simulate.samples, "number of runs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : cli::kBadInput;
    }

    const auto start = std::chrono::steady_clock::now();
    int rc = cli::kSuccess;
    const auto run = [&](auto&& body) { rc = cli::run_guarded(body, std::cerr); };
    run([&] {
        g.format = cli::parse_format(format);
        if (!(g.log_base > 1.0)) throw seqent::InvalidArgument("--log-base must exceed 1");
        return cli::kSuccess;
    });
    if (rc == cli::kSuccess) {
        if (*sc_bounds) rc = cli::cmd_bounds(g, bounds, std::cout, std::cerr);
        else if (*sc_table) rc = cli::cmd_table1(g, table, std::cout, std::cerr);
        else if (*sc_sweep) rc = cli::cmd_sweep(g, sweep, std::cout, std::cerr);
        else if (*sc_verify) rc = cli::cmd_verify(g, verify, std::cout, std::cerr);
        else if (*sc_simulate) rc = cli::cmd_simulate(g, simulate, std::cout, std::cerr);
    }
    if (!g.quiet) {
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
        std::cerr << "elapsed " << cli::fmt6(dt.count()) << " s\n";
    }
    return rc;
}
