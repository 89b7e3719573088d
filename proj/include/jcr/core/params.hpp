#pragma once
/// @file params.hpp
/// @brief Physical controls of the driven, damped Jaynes-Cummings-Rabi model.

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace jcr {

/// Raised when a computation cannot reach its accuracy contract.
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Short scientific rendering for diagnostics.
inline std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

/// Raised when the model is evaluated on a continuum of steady states.
class degenerate_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct ModelParams {
    double lambda   = 1.0;  ///< coupling strength [rad/time]
    double eta      = 0.0;  ///< counter-rotating ratio, 0 <= eta <= 1
    double delta    = 0.0;  ///< field-drive detuning [rad/time]
    double delta0   = 0.0;  ///< two-state detuning [rad/time]
    double kappa    = 0.0;  ///< field amplitude decay rate [1/time]
    double epsilon  = 0.0;  ///< coherent drive amplitude [rad/time]
    int    n_systems = 1;

    /// Throws std::domain_error on any violated invariant. The full-quantum
    /// module admits lambda == 0 (decoupled cavity).
    void validate(bool allow_zero_coupling = false) const {
        const double v[] = {lambda, eta, delta, delta0, kappa, epsilon};
        for (double x : v)
            if (!std::isfinite(x)) throw std::domain_error("ModelParams: non-finite field");
        if (allow_zero_coupling ? lambda < 0.0 : lambda <= 0.0)
            throw std::domain_error("ModelParams: lambda must be positive");
        if (eta < 0.0 || eta > 1.0)
            throw std::domain_error("ModelParams: eta outside [0, 1]");
        if (kappa < 0.0) throw std::domain_error("ModelParams: kappa must be >= 0");
        if (epsilon < 0.0) throw std::domain_error("ModelParams: epsilon must be >= 0");
        if (n_systems < 1) throw std::domain_error("ModelParams: n_systems must be >= 1");
    }

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Drive and rates in units of the critical drive.
struct ScaledParams {
    double eps_bar    = 0.0;  ///< epsilon / epsilon_crit
    double kappa_bar  = 0.0;  ///< kappa / (2 epsilon_crit)
    double delta_bar  = 0.0;  ///< delta / (2 epsilon_crit)
    double delta0_bar = 0.0;  ///< delta0 / (2 epsilon_crit)

    friend bool operator==(const ScaledParams&, const ScaledParams&) = default;
};

}  // namespace jcr
