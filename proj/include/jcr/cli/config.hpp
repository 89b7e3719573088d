#pragma once
/// @file config.hpp
/// @brief Run configuration shared by every subcommand.

#include <jcr/cli/table.hpp>
#include <jcr/core/critical.hpp>
#include <jcr/core/params.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jcr::cli {

inline const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> names{"critical", "steady", "sweep", "phase-diagram",
                                                "quasi",    "spectrum", "traj", "qfunc"};
    return names;
}

/// Evenly spaced values from start to end inclusive; count 1 gives {start}.
struct GridSpec {
    double start = 0.0;
    double end = 0.0;
    int count = 0;

    std::vector<double> values() const {
        std::vector<double> v(static_cast<std::size_t>(std::max(count, 0)));
        for (int k = 0; k < count; ++k) v[k] = count == 1 ? start : start + (end - start) * k / (count - 1);
        if (count > 1) v.back() = end;
        return v;
    }
};

struct RunConfig {
    std::string subcommand;

    // model controls as given; with `scaled` the drive, loss and detunings are eps_bar, kappa_bar, delta_bar
    double lambda = 1.0;
    double eta = 0.0;
    double delta = 0.0;
    double delta0 = 0.0;
    double kappa = 0.0;
    double epsilon = 0.0;
    bool scaled = false;

    GridSpec grid;    ///< detuning grid (sweep, spectrum), eta grid (critical), x axis (phase-diagram)
    GridSpec y_grid;  ///< y axis (phase-diagram)
    std::string x_axis = "delta_bar";
    std::string y_axis = "eps_bar";

    int n_max = 5;
    int n_fock = 0;  ///< 0 selects the subcommand default
    double tol = 1e-8;

    std::uint64_t seed = 1;
    int n_traj = 1;
    double duration = 100.0;  ///< kappa T
    double delta_end = 0.0;   ///< scan end (traj); same units as delta
    bool scan = false;        ///< traj: ramp delta to delta_end instead of holding it
    int output_points = 201;
    bool switches = false;

    int q_points = 121;
    double q_half_width = 0.0;

    unsigned threads = 0;
    std::string output;
    std::string format = "csv";

    /// Conversion from the user's detuning units to raw units.
    double detuning_unit() const { return scaled ? 2.0 * epsilon_crit(lambda, eta) : 1.0; }

    ModelParams params() const {
        if (!scaled) {
            ModelParams p;
            p.lambda = lambda;
            p.eta = eta;
            p.delta = delta;
            p.delta0 = delta0;
            p.kappa = kappa;
            p.epsilon = epsilon;
            return p;
        }
        return unscale_params(ScaledParams{epsilon, kappa, delta, delta0}, lambda, eta);
    }

    void validate() const {
        bool known = false;
        for (const auto& s : subcommands()) known = known || s == subcommand;
        if (!known) throw std::invalid_argument("unknown subcommand '" + subcommand + "'");
        if (format != "csv" && format != "json") throw std::invalid_argument("format must be csv or json");
        if (grid.count < 0 || y_grid.count < 0) throw std::invalid_argument("grid counts must be >= 0");
        if (n_max < 0) throw std::invalid_argument("nmax must be >= 0");
        if (n_fock < 0) throw std::invalid_argument("nfock must be >= 0");
        if (n_traj < 1) throw std::invalid_argument("ntraj must be >= 1");
        if (output_points < 2) throw std::invalid_argument("points must be >= 2");
        if (q_points < 3) throw std::invalid_argument("qpoints must be >= 3");
        if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
        if (!(duration > 0.0)) throw std::invalid_argument("duration must be positive");
        if (scaled && !(lambda > 0.0)) throw std::invalid_argument("scaled units need lambda > 0");
        const bool quantum = subcommand == "spectrum" || subcommand == "traj" || subcommand == "qfunc";
        params().validate(quantum);
    }

    /// Every setting as key/value text; a config file with these lines reproduces the run.
    std::vector<std::pair<std::string, std::string>> echo() const {
        auto num = [](double v) { return format_number(v); };
        auto flag = [](bool b) { return std::string(b ? "true" : "false"); };
        return {
            {"subcommand", subcommand},
            {"lambda", num(lambda)},
            {"eta", num(eta)},
            {"delta", num(delta)},
            {"delta0", num(delta0)},
            {"kappa", num(kappa)},
            {"epsilon", num(epsilon)},
            {"scaled", flag(scaled)},
            {"grid-start", num(grid.start)},
            {"grid-end", num(grid.end)},
            {"grid-count", std::to_string(grid.count)},
            {"y-start", num(y_grid.start)},
            {"y-end", num(y_grid.end)},
            {"y-count", std::to_string(y_grid.count)},
            {"x-axis", x_axis},
            {"y-axis", y_axis},
            {"nmax", std::to_string(n_max)},
            {"nfock", std::to_string(n_fock)},
            {"tol", num(tol)},
            {"seed", std::to_string(seed)},
            {"ntraj", std::to_string(n_traj)},
            {"duration", num(duration)},
            {"delta-end", num(delta_end)},
            {"scan", flag(scan)},
            {"points", std::to_string(output_points)},
            {"switches", flag(switches)},
            {"qpoints", std::to_string(q_points)},
            {"qwidth", num(q_half_width)},
            {"threads", std::to_string(threads)},
            {"format", format},
        };
    }

    std::vector<std::string> header_lines() const {
        std::vector<std::string> lines{"jcr-sim " + subcommand + " format_version=" + std::to_string(kFormatVersion)};
        for (const auto& [k, v] : echo())
            if (k != "subcommand") lines.push_back(k + " = " + v);
        return lines;
    }
};

}  // namespace jcr::cli
