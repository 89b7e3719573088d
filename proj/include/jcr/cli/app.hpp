#pragma once
/// @file app.hpp
/// @brief Command-line front end: parsing, dispatch, output and exit codes.

#include <jcr/cli/commands.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace jcr::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kNumerical = 2 };

/// Registers every option on `app`; subcommands fall through to these.
inline void add_options(CLI::App& app, RunConfig& c) {
    app.set_config("--config", "", "key = value file; command-line flags take precedence");
    app.add_option("--lambda", c.lambda, "coupling");
    app.add_option("--eta", c.eta, "counter-rotating ratio in [0, 1]");
    app.add_option("--delta", c.delta, "field detuning (scan start for traj --scan)");
    app.add_option("--delta0", c.delta0, "emitter detuning");
    app.add_option("--kappa", c.kappa, "field loss rate");
    app.add_option("--epsilon", c.epsilon, "drive amplitude");
    app.add_flag("--scaled{true}", c.scaled, "read epsilon, kappa and detunings in scaled units");
    app.add_option("--grid-start", c.grid.start);
    app.add_option("--grid-end", c.grid.end);
    app.add_option("--grid-count", c.grid.count);
    app.add_option("--y-start", c.y_grid.start);
    app.add_option("--y-end", c.y_grid.end);
    app.add_option("--y-count", c.y_grid.count);
    app.add_option("--x-axis", c.x_axis, "phase-diagram x axis");
    app.add_option("--y-axis", c.y_axis, "phase-diagram y axis");
    app.add_option("--nmax", c.n_max, "highest quasienergy manifold");
    app.add_option("--nfock", c.n_fock, "Fock truncation; 0 picks the subcommand default");
    app.add_option("--tol", c.tol, "steady-state residual tolerance");
    app.add_option("--seed", c.seed);
    app.add_option("--ntraj", c.n_traj, "number of trajectories");
    app.add_option("--duration", c.duration, "kappa T");
    app.add_option("--delta-end", c.delta_end, "scan end detuning");
    app.add_flag("--scan{true}", c.scan, "ramp the detuning from delta to delta-end");
    app.add_option("--points", c.output_points, "output samples per trajectory");
    app.add_flag("--switches{true}", c.switches, "report branch switches");
    app.add_option("--qpoints", c.q_points, "Q-function grid points per axis");
    app.add_option("--qwidth", c.q_half_width, "Q-function half width; 0 picks it from the state");
    app.add_option("--threads", c.threads, "worker threads; 0 defers to JCR_THREADS or the core count");
    app.add_option("--output,-o", c.output, "output file (stdout when absent)");
    app.add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

inline std::string render(const RunConfig& c, const std::vector<Table>& tables) {
    return c.format == "json" ? to_json(c.subcommand, c.echo(), tables) : to_csv(c.header_lines(), tables);
}

/// Runs one invocation. Usage and domain errors exit 1 without output;
/// numerical failures exit 2 and leave a diagnostic file next to the output.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Driven two-level emitter coupled to a lossy cavity mode", "jcr-sim"};
    app.require_subcommand(1);
    RunConfig c;
    add_options(app, c);
    for (const auto& name : subcommands()) app.add_subcommand(name)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "jcr-sim: " << e.what() << "\n";
        return kUsage;
    }
    c.subcommand = app.get_subcommands().front()->get_name();

    try {
        c.validate();
        const std::string text = render(c, dispatch(c));
        if (c.output.empty()) {
            out << text;
        } else {
            std::ofstream f(c.output, std::ios::binary);
            if (!f) throw std::invalid_argument("cannot open output file '" + c.output + "'");
            f << text;
        }
        return kOk;
    } catch (const std::domain_error& e) {
        err << "jcr-sim: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "jcr-sim: " << e.what() << "\n";
        return kUsage;
    } catch (const std::runtime_error& e) {
        err << "jcr-sim: numerical failure: " << e.what() << "\n";
        const std::string diag = (c.output.empty() ? std::string("jcr-sim") : c.output) + ".diag";
        std::ofstream f(diag);
        for (const auto& line : c.header_lines()) f << "# " << line << "\n";
        f << "error = " << e.what() << "\n";
        return kNumerical;
    }
}

}  // namespace jcr::cli
