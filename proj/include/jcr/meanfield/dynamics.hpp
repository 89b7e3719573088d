#pragma once
/// @file dynamics.hpp
/// @brief Intensive Maxwell-Bloch equations and their real linearization.

#include <jcr/core/params.hpp>

#include <Eigen/Dense>

#include <complex>

namespace jcr {

using cplx = std::complex<double>;

/// Intensive mean-field state: field alpha/sqrt(N), polarization beta/N, inversion 2<J_z>/N.
struct MeanFieldState {
    cplx alpha{0.0, 0.0};
    cplx beta{0.0, 0.0};
    double zeta = -1.0;

    /// Real coordinates (alpha_x, alpha_y, beta_x, beta_y, zeta).
    Eigen::Matrix<double, 5, 1> to_vector() const {
        Eigen::Matrix<double, 5, 1> v;
        v << alpha.real(), alpha.imag(), beta.real(), beta.imag(), zeta;
        return v;
    }
    static MeanFieldState from_vector(const Eigen::Matrix<double, 5, 1>& v) {
        return {{v(0), v(1)}, {v(2), v(3)}, v(4)};
    }
    /// zeta^2 + |beta|^2, conserved by the flow.
    double bloch_norm() const { return zeta * zeta + std::norm(beta); }
};

inline MeanFieldState maxwell_bloch_rhs(const MeanFieldState& s, const ModelParams& p) {
    const cplx i{0.0, 1.0};
    const double l = p.lambda, e = p.eta;
    MeanFieldState d;
    d.alpha = -(p.kappa + i * p.delta) * s.alpha - i * (0.5 * l) * (s.beta + e * std::conj(s.beta)) - i * p.epsilon;
    d.beta = -i * p.delta0 * s.beta + 2.0 * i * l * (s.alpha + e * std::conj(s.alpha)) * s.zeta;
    d.zeta = 2.0 * l * (std::imag(s.alpha * std::conj(s.beta)) - e * std::imag(s.alpha * s.beta));
    return d;
}

using Jacobian5 = Eigen::Matrix<double, 5, 5>;

/// Jacobian of maxwell_bloch_rhs in the real coordinates of MeanFieldState::to_vector.
inline Jacobian5 maxwell_bloch_jacobian(const MeanFieldState& s, const ModelParams& p) {
    const double l = p.lambda, e = p.eta, k = p.kappa, d = p.delta, d0 = p.delta0;
    const double ax = s.alpha.real(), ay = s.alpha.imag();
    const double bx = s.beta.real(), by = s.beta.imag(), z = s.zeta;
    const double cm = 2.0 * l * (1.0 - e), cp = 2.0 * l * (1.0 + e);
    Jacobian5 j;
    j << -k, d, 0.0, 0.5 * l * (1.0 - e), 0.0,
         -d, -k, -0.5 * l * (1.0 + e), 0.0, 0.0,
         0.0, -cm * z, 0.0, d0, -cm * ay,
         cp * z, 0.0, -d0, 0.0, cp * ax,
         -cp * by, cm * bx, cm * ay, -cp * ax, 0.0;
    return j;
}

}  // namespace jcr
