#pragma once
/// @file critical.hpp
/// @brief Closed-form thresholds: critical drive, counter-rotating threshold,
///        critical couplings, and the scaled parameter map.

#include <jcr/core/params.hpp>

#include <cmath>
#include <optional>
#include <stdexcept>

namespace jcr {

/// Drive strength at which the blockade breaks down.
inline double epsilon_crit(double lambda, double eta) {
    if (!(lambda > 0.0)) throw std::domain_error("epsilon_crit: lambda must be positive");
    if (eta < 0.0 || eta > 1.0) throw std::domain_error("epsilon_crit: eta outside [0, 1]");
    return 0.5 * lambda * (1.0 + eta);
}

/// Smallest counter-rotating ratio for which the zero-drive critical couplings exist.
/// Returns 0 in the lossless limit, including delta == 0.
inline double eta_critical(double kappa, double delta) {
    if (kappa < 0.0 || !std::isfinite(kappa) || !std::isfinite(delta))
        throw std::domain_error("eta_critical: invalid kappa or delta");
    if (kappa == 0.0) return 0.0;
    if (delta == 0.0) throw std::domain_error("eta_critical: undefined for delta == 0 with kappa > 0");
    const double r = kappa / std::abs(delta);
    return r / (1.0 + std::hypot(1.0, r));
}

struct CriticalCouplings {
    double lower = 0.0;  ///< onset of the first ordered phase
    double upper = 0.0;  ///< onset of the second ordered phase
};

/// Zero-drive critical couplings. Empty when eta is below eta_critical.
/// Throws for delta * delta0 == 0 and at eta == 1, where the pair is undefined.
inline std::optional<CriticalCouplings> lambda_critical(const ModelParams& p) {
    if (p.eta < 0.0 || p.eta >= 1.0)
        throw std::domain_error("lambda_critical: requires 0 <= eta < 1");
    if (p.kappa < 0.0) throw std::domain_error("lambda_critical: kappa must be >= 0");
    if (p.delta * p.delta0 == 0.0)
        throw std::domain_error("lambda_critical: requires delta * delta0 != 0");

    const double one_m = 1.0 - p.eta * p.eta;
    const double c = one_m * one_m * p.kappa * p.kappa / (4.0 * p.delta * p.delta);
    const double disc = p.eta * p.eta - c;
    if (disc < 0.0) return std::nullopt;

    // 1 + eta^2 -+ 2 sqrt(eta^2 - c), rearranged to avoid cancellation near eta = 1
    const double root = std::sqrt(disc);
    const double shift = c == 0.0 ? 0.0 : 2.0 * c / (p.eta + root);
    const double lo = (1.0 - p.eta) * (1.0 - p.eta) + shift;
    const double hi = (1.0 + p.eta) * (1.0 + p.eta) - shift;
    const double scale = std::sqrt(std::abs(p.delta * p.delta0)) / one_m;
    return CriticalCouplings{scale * std::sqrt(lo), scale * std::sqrt(std::max(hi, 0.0))};
}

inline ScaledParams scale_params(const ModelParams& p) {
    p.validate();
    const double ec = epsilon_crit(p.lambda, p.eta);
    const double two_ec = 2.0 * ec;
    return {p.epsilon / ec, p.kappa / two_ec, p.delta / two_ec, p.delta0 / two_ec};
}

/// Inverse of scale_params given the coupling, ratio and system count.
inline ModelParams unscale_params(const ScaledParams& s, double lambda, double eta, int n_systems = 1) {
    if (s.eps_bar < 0.0 || s.kappa_bar < 0.0)
        throw std::domain_error("unscale_params: eps_bar and kappa_bar must be >= 0");
    const double ec = epsilon_crit(lambda, eta);
    const double two_ec = 2.0 * ec;
    ModelParams p;
    p.lambda = lambda;
    p.eta = eta;
    p.epsilon = s.eps_bar * ec;
    p.kappa = s.kappa_bar * two_ec;
    p.delta = s.delta_bar * two_ec;
    p.delta0 = s.delta0_bar * two_ec;
    p.n_systems = n_systems;
    p.validate();
    return p;
}

}  // namespace jcr
