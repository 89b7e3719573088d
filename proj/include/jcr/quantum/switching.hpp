#pragma once
/// @file switching.hpp
/// @brief Branch labelling of trajectory records against stable mean-field branches.

#include <jcr/meanfield/steady_state.hpp>
#include <jcr/quantum/trajectory.hpp>

#include <complex>
#include <optional>
#include <vector>

namespace jcr {

struct SwitchOptions {
    double assignment_ratio = 0.5;  ///< nearest branch must be this much closer than the runner-up
    double min_separation = 2.0;    ///< smallest field distance between the two branches of a switch
    int confirm_samples = 3;        ///< consecutive samples needed to accept a new branch
};

struct SwitchEvent {
    double time = 0.0;  ///< kappa t at the first sample on the new branch
    std::complex<double> from, to;  ///< mean-field amplitudes of the two branches at that time
};

struct SwitchReport {
    std::vector<SwitchEvent> events;
    int assigned_samples = 0;
};

/// Stable mean-field amplitudes at detuning delta = delta0.
inline std::vector<std::complex<double>> stable_amplitudes(ModelParams p, double delta) {
    p.delta = p.delta0 = delta;
    std::vector<std::complex<double>> out;
    for (const auto& b : solve_steady_states(p).branches)
        if (b.stability == Stability::stable) out.push_back(b.alpha);
    return out;
}

/// Counts transitions of <a>(t) between coexisting stable branches. A branch
/// that disappears between samples ends the tracked dwell without a count.
inline SwitchReport detect_switches(const TrajectoryRecord& rec, const ModelParams& p, const SwitchOptions& opt = {}) {
    SwitchReport report;
    std::optional<std::complex<double>> tracked;
    std::size_t previous_count = 0;
    std::optional<std::complex<double>> candidate;
    int candidate_run = 0;
    double candidate_time = 0.0;
    std::complex<double> candidate_from;

    auto nearest = [](const std::vector<std::complex<double>>& set, std::complex<double> z) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < set.size(); ++k)
            if (std::abs(set[k] - z) < std::abs(set[best] - z)) best = k;
        return best;
    };

    for (std::size_t k = 0; k < rec.times.size(); ++k) {
        const auto stable = stable_amplitudes(p, rec.detuning_schedule[k]);
        if (stable.size() != previous_count) {
            tracked.reset();
            candidate.reset();
            candidate_run = 0;
        }
        previous_count = stable.size();
        if (stable.empty()) continue;
        if (tracked) tracked = stable[nearest(stable, *tracked)];
        if (candidate) candidate = stable[nearest(stable, *candidate)];

        const std::complex<double> z = rec.field_expect[k];
        const std::size_t i = nearest(stable, z);
        double runner_up = INFINITY;
        for (std::size_t m = 0; m < stable.size(); ++m)
            if (m != i) runner_up = std::min(runner_up, std::abs(stable[m] - z));
        if (std::abs(stable[i] - z) > opt.assignment_ratio * runner_up) continue;
        ++report.assigned_samples;
        const std::complex<double> here = stable[i];

        if (!tracked) {
            tracked = here;
            continue;
        }
        if (std::abs(here - *tracked) < 1e-12) {
            candidate.reset();
            candidate_run = 0;
            continue;
        }
        if (candidate && std::abs(here - *candidate) < 1e-12) {
            ++candidate_run;
        } else {
            candidate = here;
            candidate_run = 1;
            candidate_time = rec.times[k];
            candidate_from = *tracked;
        }
        if (candidate_run >= opt.confirm_samples) {
            if (std::abs(candidate_from - here) >= opt.min_separation)
                report.events.push_back({candidate_time, candidate_from, here});
            tracked = here;
            candidate.reset();
            candidate_run = 0;
        }
    }
    return report;
}

}  // namespace jcr
