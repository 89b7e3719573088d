// Mean-field stable branches next to the quantum steady-state photon number
// along a detuning sweep with delta0 = delta.

#include <jcr/core/critical.hpp>
#include <jcr/meanfield/steady_state.hpp>
#include <jcr/quantum/steady_state.hpp>

#include <cstdio>
#include <vector>

int main() {
    jcr::ModelParams p;
    p.lambda = 1.0;
    p.eta = 0.6;
    p.kappa = 0.3;
    p.epsilon = 0.5 * jcr::epsilon_crit(p.lambda, p.eta);

    std::vector<double> grid;
    for (int k = 0; k <= 20; ++k) grid.push_back(-1.0 + 0.1 * k);

    const auto quantum = jcr::photon_sweep(p, grid, jcr::FockPolicy{30, {}});

    std::printf("%8s %10s %8s  %s\n", "delta", "<n>", "n_fock", "stable mean-field |alpha|^2");
    for (std::size_t k = 0; k < grid.size(); ++k) {
        jcr::ModelParams q = p;
        q.delta = q.delta0 = grid[k];
        std::printf("%8.3f %10.4f %8d ", grid[k], quantum[k].photons, quantum[k].n_fock);
        try {
            for (const auto& b : jcr::solve_steady_states(q).branches)
                if (b.stability == jcr::Stability::stable) std::printf(" %.4f", b.intensity());
        } catch (const std::domain_error&) {
            std::printf(" (degenerate)");
        }
        std::printf("\n");
    }
}
