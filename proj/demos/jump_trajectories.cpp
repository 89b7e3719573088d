// A handful of quantum-jump trajectories at eta = 1, where the ensemble splits
// between two field states. Prints each trajectory's late-time photon number.

#include <jcr/quantum/trajectory.hpp>

#include <cstdio>
#include <cstdlib>

int main(int argc, char** argv) {
    const int count = argc > 1 ? std::atoi(argv[1]) : 8;

    jcr::ModelParams p;
    p.lambda = 1.0;
    p.eta = 1.0;
    p.kappa = 0.1;
    p.epsilon = 0.2;
    p.delta = p.delta0 = 0.0;

    const int n_fock = 256;
    const auto scan = jcr::DetuningScan::fixed(0.0, 10.0, 101);
    const auto ens = jcr::trajectory_ensemble(p, scan, jcr::derive_seeds(7, count), n_fock);

    for (const auto& rec : ens.records)
        std::printf("seed %20llu  jumps %5zu  <n>(kappa t = 10) %8.2f\n", static_cast<unsigned long long>(rec.seed),
                    rec.jump_times.size(), rec.photon_expect.back());
    std::printf("ensemble mean %.2f +- %.2f\n", ens.mean_photons.back(), ens.stderr_photons.back());
}
