#pragma once
/// @file stability.hpp
/// @brief Linear stability of mean-field steady states.

#include <jcr/meanfield/branch.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <vector>

namespace jcr {

inline double default_stability_tolerance(const ModelParams& p) {
    return 1e-8 * std::max(p.kappa, 1e-3 * p.lambda);
}

/// Growth rates of the linearized flow with the mode along the conserved
/// Bloch-sphere normal removed. Four values remain.
inline std::vector<cplx> transverse_spectrum(const MeanFieldState& s, const ModelParams& p) {
    const Jacobian5 j = maxwell_bloch_jacobian(s, p);
    Eigen::EigenSolver<Jacobian5> es(j, true);
    Eigen::Matrix<double, 5, 1> normal;
    normal << 0.0, 0.0, 2.0 * s.beta.real(), 2.0 * s.beta.imag(), 2.0 * s.zeta;
    const double nn = normal.norm();

    Eigen::Index drop = 0;
    double best = -1.0;
    for (Eigen::Index k = 0; k < 5; ++k) {
        const Eigen::Matrix<cplx, 5, 1> v = es.eigenvectors().col(k);
        const double overlap = nn > 0.0 ? std::abs(normal.cast<cplx>().dot(v)) / (nn * v.norm()) : 0.0;
        // without a usable normal, drop the eigenvalue nearest zero
        const double score = nn > 0.0 ? overlap : -std::abs(es.eigenvalues()(k));
        if (score > best) { best = score; drop = k; }
    }
    std::vector<cplx> rates;
    for (Eigen::Index k = 0; k < 5; ++k)
        if (k != drop) rates.push_back(es.eigenvalues()(k));
    return rates;
}

inline Stability stability(const MeanFieldBranch& b, const ModelParams& p, double tol = -1.0) {
    if (tol < 0.0) tol = default_stability_tolerance(p);
    bool marginal = false;
    for (const cplx& r : transverse_spectrum(b.state(), p)) {
        if (r.real() > tol) return Stability::unstable;
        if (r.real() >= -tol) marginal = true;
    }
    return marginal ? Stability::marginal : Stability::stable;
}

}  // namespace jcr
