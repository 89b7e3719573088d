#pragma once
/// @file spectrum.hpp
/// @brief Closed-form quasienergies of the resonantly driven single-emitter model.

#include <jcr/core/critical.hpp>

#include <cmath>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace jcr {

/// 1 - (eps / eps_crit)^2. Negative above the critical drive.
inline double capital_lambda(const ModelParams& p) {
    const double r = p.epsilon / epsilon_crit(p.lambda, p.eta);
    return 1.0 - r * r;
}

enum class LevelBranch { zero, plus, minus };

inline std::string_view to_string(LevelBranch b) {
    switch (b) {
        case LevelBranch::zero: return "zero";
        case LevelBranch::plus: return "plus";
        default: return "minus";
    }
}

struct QuasienergyLevel {
    int n = 0;
    LevelBranch branch = LevelBranch::zero;
    double energy = 0.0;
};

/// Doublet energy +-lambda sqrt(n (1 - eta^2)) Lambda^{3/4}.
inline double level_energy(const ModelParams& p, int n, LevelBranch branch) {
    if (n < 0) throw std::domain_error("level_energy: n must be >= 0");
    if (branch == LevelBranch::zero || n == 0) {
        if (n != 0 || branch != LevelBranch::zero) throw std::domain_error("level_energy: zero branch only at n = 0");
        return 0.0;
    }
    const double lam = capital_lambda(p);
    if (lam < 0.0) throw std::domain_error("level_energy: discrete spectrum undefined above the critical drive");
    const double e = p.lambda * std::sqrt(n * (1.0 - p.eta * p.eta)) * std::pow(lam, 0.75);
    return branch == LevelBranch::plus ? e : -e;
}

namespace detail {
inline void require_resonant(const ModelParams& p) {
    p.validate();
    if (p.delta != 0.0 || p.delta0 != 0.0) throw std::domain_error("quasienergies: requires delta = delta0 = 0");
}
}  // namespace detail

/// E_0 followed by the doublets (+, -) for n = 1..n_max.
inline std::vector<QuasienergyLevel> quasienergies(const ModelParams& p, int n_max) {
    detail::require_resonant(p);
    if (n_max < 0) throw std::domain_error("quasienergies: n_max must be >= 0");
    if (capital_lambda(p) < 0.0) throw std::domain_error("quasienergies: discrete spectrum undefined above the critical drive");
    std::vector<QuasienergyLevel> out{{0, LevelBranch::zero, 0.0}};
    for (int n = 1; n <= n_max; ++n)
        for (LevelBranch b : {LevelBranch::plus, LevelBranch::minus}) out.push_back({n, b, level_energy(p, n, b)});
    return out;
}

struct BogoliubovParams {
    double capital_lambda = 0.0;
    double nu = 0.0;          ///< oscillator scale [rad^2/time^2]
    double xi = 0.0;          ///< squeeze parameter
    double alpha = 0.0;       ///< displacement (real)
    double mu_plus = 0.0;
    double mu_minus = 0.0;
};

inline BogoliubovParams bogoliubov_params(const ModelParams& p, double energy) {
    p.validate();
    if (p.eta >= 1.0) throw std::domain_error("bogoliubov_params: requires eta < 1");
    const double lam = capital_lambda(p);
    if (lam <= 0.0) throw std::domain_error("bogoliubov_params: requires drive below critical");
    BogoliubovParams b;
    b.capital_lambda = lam;
    b.nu = p.lambda * p.lambda * (1.0 - p.eta * p.eta) * std::sqrt(lam);
    b.xi = 0.5 * std::log((1.0 + p.eta) / (1.0 - p.eta) * std::sqrt(lam));
    b.alpha = 2.0 * p.epsilon * energy / (p.lambda * p.lambda * (1.0 + p.eta) * (1.0 + p.eta) * lam);
    b.mu_plus = 0.5 * b.nu - energy * energy / lam;
    b.mu_minus = -0.5 * b.nu - energy * energy / lam;
    return b;
}

enum class DriveKind { linear, counter_rotating };

struct Resonance {
    int photons = 1;
    double delta = 0.0;
};

/// Detunings +-lambda / sqrt(n) at which n drive quanta reach the n-th doublet.
/// The counter-rotating drive adds two quanta per step, so only even n appear.
inline std::vector<Resonance> resonance_detunings(double lambda, int n_max, DriveKind kind) {
    if (n_max < 1) throw std::domain_error("resonance_detunings: n_max must be >= 1");
    std::vector<Resonance> out;
    for (int n = 1; n <= n_max; ++n) {
        if (kind == DriveKind::counter_rotating && n % 2 != 0) continue;
        const double d = lambda / std::sqrt(static_cast<double>(n));
        out.push_back({n, d});
        out.push_back({n, -d});
    }
    return out;
}

}  // namespace jcr
