#pragma once
/// @file continuation.hpp
/// @brief Branch continuation along a detuning sweep.

#include <jcr/meanfield/steady_state.hpp>
#include <jcr/numerics/parallel.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace jcr {

struct BranchCurve {
    std::vector<std::size_t> index;  ///< grid positions
    std::vector<MeanFieldBranch> points;
};

enum class FoldKind { appear, disappear };

struct FoldEvent {
    FoldKind kind;
    double delta;  ///< midpoint of the grid cell holding the fold
    double zeta;   ///< inversion of the branch at its end
};

struct SweepResult {
    std::vector<double> grid;
    std::vector<SteadyStateSet> sets;
    std::vector<BranchCurve> curves;
    std::vector<FoldEvent> folds;
};

inline double branch_distance(const MeanFieldBranch& a, const MeanFieldBranch& b) {
    return std::hypot(a.zeta - b.zeta, std::abs(a.alpha - b.alpha));
}

/// Solves at each detuning of a strictly monotone grid (delta0 follows delta
/// when tie_delta0) and links branches between neighbours by nearest distance.
inline SweepResult sweep_detuning(const ModelParams& p, const std::vector<double>& grid, bool tie_delta0 = true,
                                  unsigned threads = 0) {
    for (std::size_t k = 1; k < grid.size(); ++k)
        if (!((grid[k] > grid[k - 1]) == (grid[1] > grid[0])) || grid[k] == grid[k - 1])
            throw std::domain_error("sweep_detuning: grid must be strictly monotone");
    SweepResult r;
    r.grid = grid;
    r.sets.resize(grid.size());
    parallel_for(
        grid.size(),
        [&](std::size_t k) {
            ModelParams q = p;
            q.delta = grid[k];
            if (tie_delta0) q.delta0 = grid[k];
            r.sets[k] = solve_steady_states(q);
        },
        threads);

    std::vector<std::size_t> active;  // curve ids alive at the previous grid point
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const auto& br = r.sets[k].branches;
        std::vector<std::tuple<double, double, std::size_t, std::size_t>> pairs;  // distance, zeta, curve, branch
        for (std::size_t c : active)
            for (std::size_t b = 0; b < br.size(); ++b)
                pairs.emplace_back(branch_distance(r.curves[c].points.back(), br[b]), br[b].zeta, c, b);
        std::sort(pairs.begin(), pairs.end());
        std::vector<bool> curve_used(r.curves.size(), false), branch_used(br.size(), false);
        std::vector<std::size_t> next;
        for (const auto& [dist, z, c, b] : pairs) {
            if (curve_used[c] || branch_used[b]) continue;
            curve_used[c] = branch_used[b] = true;
            r.curves[c].index.push_back(k);
            r.curves[c].points.push_back(br[b]);
            next.push_back(c);
        }
        for (std::size_t c : active)
            if (!curve_used[c])
                r.folds.push_back({FoldKind::disappear, 0.5 * (grid[k - 1] + grid[k]), r.curves[c].points.back().zeta});
        for (std::size_t b = 0; b < br.size(); ++b) {
            if (branch_used[b]) continue;
            r.curves.push_back({{k}, {br[b]}});
            next.push_back(r.curves.size() - 1);
            if (k > 0) r.folds.push_back({FoldKind::appear, 0.5 * (grid[k - 1] + grid[k]), br[b].zeta});
        }
        active = std::move(next);
    }
    return r;
}

}  // namespace jcr
