#include "kgz/cli.hpp"

#include <CLI11.hpp>
#include <iostream>

#include "kgz/drivers.hpp"
#include "kgz/version.hpp"

namespace kgz {
namespace {

struct SubcommandFlags {
    CLI::App* app = nullptr;
    std::string config, problem, M, tau, T, out, snapshots;
    std::string picard_tol, cg_tol, quad_order, max_picard;

    void attach(CLI::App* cmd, bool with_snapshots) {
        app = cmd;
        cmd->add_option("--config", config, "INI config file; flags override it");
        cmd->add_option("--problem", problem, "catalog problem name");
        cmd->add_option("--M", M, "subdivisions per axis (comma list for studies)");
        cmd->add_option("--tau", tau, "time-step rule: h, h/2, const:<v> or a number");
        cmd->add_option("--T", T, "final time (default: problem specific)");
        cmd->add_option("--out", out, "output file (or directory for simulate)");
        cmd->add_option("--picard-tol", picard_tol, "nonlinear update tolerance");
        cmd->add_option("--cg-tol", cg_tol, "linear relative residual tolerance");
        cmd->add_option("--quad-order", quad_order, "stepper Gauss points per axis");
        cmd->add_option("--max-picard", max_picard, "nonlinear sweep limit");
        if (with_snapshots)
            cmd->add_option("--snapshots", snapshots, "comma list of snapshot times");
    }

    ConfigMap overrides() const {
        ConfigMap o;
        auto put = [&](const char* flag, const char* key, const std::string& v) {
            const CLI::Option* opt = app->get_option_no_throw(flag);
            if (opt && opt->count()) o[key] = v;
        };
        put("--problem", "problem.name", problem);
        put("--M", "mesh.M", M);
        put("--tau", "time.tau", tau);
        put("--T", "time.T", T);
        put("--out", "output.path", out);
        put("--snapshots", "output.snapshots", snapshots);
        put("--picard-tol", "solver.picard_tol", picard_tol);
        put("--cg-tol", "solver.cg_tol", cg_tol);
        put("--quad-order", "solver.quad_order", quad_order);
        put("--max-picard", "solver.max_picard", max_picard);
        return o;
    }
};

}  // namespace

int cli_run(int argc, const char* const* argv) {
    CLI::App app{"Conservative Crank-Nicolson solver for the coupled "
                 "field/density wave system"};
    app.set_version_flag("--version", std::string("kgz ") + kVersion);
    app.require_subcommand(1);

    SubcommandFlags conv, ener, simu;
    conv.attach(app.add_subcommand("convergence",
                                   "mesh refinement study against the exact solution"),
                false);
    ener.attach(app.add_subcommand("energy", "per-step discrete energy log"), false);
    simu.attach(app.add_subcommand("simulate", "field snapshots on the node lattice"),
                true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const SubcommandFlags* active = nullptr;
    std::string command;
    if (app.got_subcommand("convergence")) {
        active = &conv;
        command = "convergence";
    } else if (app.got_subcommand("energy")) {
        active = &ener;
        command = "energy";
    } else {
        active = &simu;
        command = "simulate";
    }

    try {
        ConfigMap file_values;
        if (active->app->count("--config"))
            file_values = load_config_file(active->config);
        const RunPlan plan = make_plan(command, file_values, active->overrides());
        run_plan(plan);
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SolverError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 3;
    } catch (const StepFailure& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
}

int cli_run(const std::vector<std::string>& args) {
    std::vector<std::string> full;
    full.push_back("kgz");
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : full) argv.push_back(a.c_str());
    return cli_run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace kgz
