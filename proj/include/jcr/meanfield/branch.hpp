#pragma once

#include <jcr/core/params.hpp>
#include <jcr/meanfield/dynamics.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace jcr {

enum class Stability { unknown, stable, unstable, marginal };

inline std::string_view to_string(Stability s) {
    switch (s) {
        case Stability::stable: return "stable";
        case Stability::unstable: return "unstable";
        case Stability::marginal: return "marginal";
        default: return "unknown";
    }
}

struct MeanFieldBranch {
    double zeta = -1.0;
    cplx alpha{0.0, 0.0};
    cplx beta{0.0, 0.0};
    Stability stability = Stability::unknown;
    double residual_poly = 0.0;          ///< relative backward error of the governing polynomial
    double residual_conservation = 0.0;  ///< |zeta^2 + |beta|^2 - 1|
    int multiplicity = 1;
    bool z2_partner = false;  ///< (-alpha, -beta, zeta) is also a steady state
    bool degenerate = false;  ///< field fixed by a limiting or gauge choice

    MeanFieldState state() const { return {alpha, beta, zeta}; }
    double phase() const { return std::arg(beta); }
    double intensity() const { return std::norm(alpha); }
};

struct SteadyStateSet {
    ModelParams params;
    std::vector<MeanFieldBranch> branches;  ///< ascending zeta
    std::vector<std::string> degeneracies;

    int n_stable() const {
        int n = 0;
        for (const auto& b : branches) n += b.stability == Stability::stable;
        return n;
    }
};

}  // namespace jcr
