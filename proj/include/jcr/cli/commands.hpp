#pragma once
/// @file commands.hpp
/// @brief Subcommand bodies: configuration in, tables out.

#include <jcr/cli/config.hpp>
#include <jcr/cli/table.hpp>
#include <jcr/core/critical.hpp>
#include <jcr/meanfield/continuation.hpp>
#include <jcr/meanfield/regions.hpp>
#include <jcr/meanfield/steady_state.hpp>
#include <jcr/quantum/qfunction.hpp>
#include <jcr/quantum/steady_state.hpp>
#include <jcr/quantum/switching.hpp>
#include <jcr/quantum/trajectory.hpp>
#include <jcr/quasienergy/eigenkets.hpp>
#include <jcr/quasienergy/spectrum.hpp>

#include <optional>
#include <string>
#include <vector>

namespace jcr::cli {

namespace detail {

template <class F>
std::optional<double> defined(F&& f) {
    try {
        return f();
    } catch (const std::domain_error&) {
        return std::nullopt;
    }
}

inline std::vector<double> detuning_grid(const RunConfig& c) {
    if (c.grid.count < 1) throw std::invalid_argument("a detuning grid is required (grid-start, grid-end, grid-count)");
    auto v = c.grid.values();
    for (double& x : v) x *= c.detuning_unit();
    return v;
}

inline std::vector<Cell> branch_cells(const MeanFieldBranch& b) {
    return {b.zeta,
            b.alpha.real(),
            b.alpha.imag(),
            b.beta.real(),
            b.beta.imag(),
            b.intensity(),
            std::string(to_string(b.stability)),
            static_cast<std::int64_t>(b.multiplicity),
            b.residual_poly,
            b.residual_conservation,
            b.degenerate};
}

inline const std::vector<std::string> kBranchColumns{
    "zeta", "alpha_re", "alpha_im", "beta_re", "beta_im", "intensity", "stability",
    "multiplicity", "residual_poly", "residual_conservation", "degenerate"};

}  // namespace detail

inline std::vector<Table> run_critical(const RunConfig& c) {
    Table t{"critical", {"lambda", "eta", "kappa", "delta", "delta0", "epsilon_crit", "eta_kappa", "lambda_lower",
                         "lambda_upper"}, {}};
    std::vector<double> etas = c.grid.count > 0 ? c.grid.values() : std::vector<double>{c.eta};
    const ModelParams base = c.params();
    for (double eta : etas) {
        ModelParams p = base;
        p.eta = eta;
        p.validate();
        const auto crit = detail::defined([&] { return epsilon_crit(p.lambda, p.eta); });
        const auto eta_k = detail::defined([&] { return eta_critical(p.kappa, p.delta); });
        std::optional<CriticalCouplings> lc;
        try {
            lc = lambda_critical(p);
        } catch (const std::domain_error&) {
        }
        t.add({p.lambda, p.eta, p.kappa, p.delta, p.delta0, maybe(crit), maybe(eta_k),
               lc ? Cell{lc->lower} : Cell{}, lc ? Cell{lc->upper} : Cell{}});
    }
    return {t};
}

inline std::vector<Table> run_steady(const RunConfig& c) {
    const auto set = solve_steady_states(c.params());
    Table t{"branches", detail::kBranchColumns, {}};
    for (const auto& b : set.branches) t.add(detail::branch_cells(b));
    Table notes{"notes", {"degeneracy"}, {}};
    for (const auto& d : set.degeneracies) notes.add({d});
    return {t, notes};
}

inline std::vector<Table> run_sweep(const RunConfig& c) {
    const auto r = sweep_detuning(c.params(), detail::detuning_grid(c), true, c.threads);
    std::vector<std::string> cols{"curve", "delta"};
    cols.insert(cols.end(), detail::kBranchColumns.begin(), detail::kBranchColumns.end());
    Table curves{"curves", cols, {}};
    for (std::size_t id = 0; id < r.curves.size(); ++id)
        for (std::size_t k = 0; k < r.curves[id].points.size(); ++k) {
            std::vector<Cell> row{static_cast<std::int64_t>(id), r.grid[r.curves[id].index[k]]};
            const auto cells = detail::branch_cells(r.curves[id].points[k]);
            row.insert(row.end(), cells.begin(), cells.end());
            curves.add(std::move(row));
        }
    Table folds{"folds", {"kind", "delta", "zeta"}, {}};
    for (const auto& f : r.folds)
        folds.add({std::string(f.kind == FoldKind::appear ? "appear" : "disappear"), f.delta, f.zeta});
    return {curves, folds};
}

inline std::vector<Table> run_phase_diagram(const RunConfig& c) {
    if (c.grid.count < 1 || c.y_grid.count < 1)
        throw std::invalid_argument("phase-diagram needs both grids (grid-* and y-*)");
    const Axis xa = axis_from_string(c.x_axis), ya = axis_from_string(c.y_axis);
    const auto r = phase_diagram(c.params(), xa, c.grid.values(), ya, c.y_grid.values(), c.threads);
    Table t{"regions", {std::string(to_string(xa)), std::string(to_string(ya)), "tag", "n_solutions", "n_stable"}, {}};
    for (std::size_t iy = 0; iy < r.ys.size(); ++iy)
        for (std::size_t ix = 0; ix < r.xs.size(); ++ix) {
            const auto& l = r.at(ix, iy);
            t.add({r.xs[ix], r.ys[iy], l.tag, static_cast<std::int64_t>(l.n_solutions),
                   static_cast<std::int64_t>(l.n_stable)});
        }
    return {t};
}

inline std::vector<Table> run_quasi(const RunConfig& c) {
    const ModelParams p = c.params();
    const auto levels = quasienergies(p, c.n_max);
    const bool verifiable = p.eta < 1.0 && capital_lambda(p) > 0.0;
    const int n_fock = c.n_fock > 0 ? c.n_fock : 300;
    Table t{"levels", {"n", "branch", "energy", "numerical_energy", "residual", "overlap", "truncation_warning"}, {}};
    for (const auto& l : levels) {
        std::vector<Cell> row{static_cast<std::int64_t>(l.n), std::string(to_string(l.branch)), l.energy};
        if (verifiable) {
            const auto chk = verify_quasienergy(l, p, n_fock);
            row.insert(row.end(), {chk.numerical_energy, chk.residual, chk.overlap, chk.truncation_warning});
        } else {
            row.insert(row.end(), {Cell{}, Cell{}, Cell{}, Cell{}});
        }
        t.add(std::move(row));
    }
    return {t};
}

inline SteadyStateOptions steady_options(const RunConfig& c) {
    SteadyStateOptions o;
    o.tol = c.tol;
    return o;
}

inline std::vector<Table> run_spectrum(const RunConfig& c) {
    FockPolicy pol;
    pol.initial = c.n_fock > 0 ? c.n_fock : 40;
    pol.options = steady_options(c);
    const auto pts = photon_sweep(c.params(), detail::detuning_grid(c), pol, c.threads);
    Table t{"spectrum", {"delta", "photons", "field_re", "field_im", "inversion", "n_fock", "method"}, {}};
    for (const auto& s : pts)
        t.add({s.delta, s.photons, s.field.real(), s.field.imag(), s.inversion, static_cast<std::int64_t>(s.n_fock),
               to_string(s.method)});
    return {t};
}

inline std::vector<Table> run_traj(const RunConfig& c) {
    const ModelParams p = c.params();
    const double unit = c.detuning_unit();
    const DetuningScan scan{p.delta, c.scan ? c.delta_end * unit : p.delta, c.duration, c.output_points};
    const auto seeds = c.n_traj == 1 ? std::vector<std::uint64_t>{c.seed} : derive_seeds(c.seed, c.n_traj);
    const int n_fock = c.n_fock > 0 ? c.n_fock : 40;
    const auto e = trajectory_ensemble(p, scan, seeds, n_fock, {}, c.threads);

    Table rec{"trajectories", {"seed", "time", "delta", "photons", "field_re", "field_im"}, {}};
    Table jumps{"jumps", {"seed", "time"}, {}};
    for (const auto& r : e.records) {
        const auto seed = static_cast<std::int64_t>(r.seed);
        for (std::size_t k = 0; k < r.times.size(); ++k)
            rec.add({seed, r.times[k], r.detuning_schedule[k], r.photon_expect[k], r.field_expect[k].real(),
                     r.field_expect[k].imag()});
        for (double t : r.jump_times) jumps.add({seed, t});
    }
    Table ens{"ensemble", {"time", "delta", "mean_photons", "stderr_photons", "mean_field_re", "mean_field_im"}, {}};
    for (std::size_t k = 0; k < e.times.size(); ++k)
        ens.add({e.times[k], e.detuning_schedule[k], e.mean_photons[k], e.stderr_photons[k], e.mean_field[k].real(),
                 e.mean_field[k].imag()});
    Table trunc{"truncation", {"seed", "n_fock", "top_population", "truncation_warning"}, {}};
    for (const auto& r : e.records)
        trunc.add({static_cast<std::int64_t>(r.seed), static_cast<std::int64_t>(n_fock), r.top_population,
                   r.top_population > SteadyStateOptions{}.top_population});
    std::vector<Table> out{rec, jumps, ens, trunc};
    if (c.switches) {
        Table sw{"switches", {"seed", "time", "from_re", "from_im", "to_re", "to_im"}, {}};
        for (const auto& r : e.records)
            for (const auto& ev : detect_switches(r, p).events)
                sw.add({static_cast<std::int64_t>(r.seed), ev.time, ev.from.real(), ev.from.imag(), ev.to.real(),
                        ev.to.imag()});
        out.push_back(sw);
    }
    return out;
}

inline std::vector<Table> run_qfunc(const RunConfig& c) {
    const auto r = steady_state(c.params(), c.n_fock > 0 ? c.n_fock : 40, steady_options(c));
    QGridSpec spec;
    spec.points = c.q_points;
    spec.half_width = c.q_half_width;
    const auto g = q_function(r.state, spec);
    Table summary{"summary", {"photons", "n_fock", "method", "residual", "normalization", "coverage_warning"}, {}};
    summary.add({r.state.photon_number(), static_cast<std::int64_t>(r.state.n_fock), to_string(r.method), r.residual,
                 g.normalization(), g.coverage_warning});
    Table peaks{"peaks", {"alpha_re", "alpha_im", "q"}, {}};
    for (const auto& pk : g.local_maxima()) peaks.add({pk.alpha.real(), pk.alpha.imag(), pk.value});
    Table grid{"q", {"alpha_re", "alpha_im", "q"}, {}};
    for (std::size_t i = 0; i < g.alpha_im.size(); ++i)
        for (std::size_t j = 0; j < g.alpha_re.size(); ++j)
            grid.add({g.alpha_re[j], g.alpha_im[i], g.q_values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))});
    return {summary, peaks, grid};
}

inline std::vector<Table> dispatch(const RunConfig& c) {
    const std::string& s = c.subcommand;
    if (s == "critical") return run_critical(c);
    if (s == "steady") return run_steady(c);
    if (s == "sweep") return run_sweep(c);
    if (s == "phase-diagram") return run_phase_diagram(c);
    if (s == "quasi") return run_quasi(c);
    if (s == "spectrum") return run_spectrum(c);
    if (s == "traj") return run_traj(c);
    if (s == "qfunc") return run_qfunc(c);
    throw std::invalid_argument("unknown subcommand '" + s + "'");
}

}  // namespace jcr::cli
