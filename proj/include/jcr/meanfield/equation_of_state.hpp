#pragma once
/// @file equation_of_state.hpp
/// @brief Polynomial equations of state for the steady-state inversion.

#include <jcr/core/critical.hpp>
#include <jcr/numerics/polynomial.hpp>

#include <cmath>
#include <stdexcept>

namespace jcr {

/// F(z) = (1 - z^2) P(z)^power - drive_sq z^2 Q(z), kept in factored form.
struct EquationOfState {
    poly::Coeffs p;
    poly::Coeffs q;
    double drive_sq = 0.0;
    int power = 2;

    double value(double z) const {
        const double pv = poly::eval(p, z);
        const double pp = power == 2 ? pv * pv : pv;
        return (1.0 - z * z) * pp - drive_sq * z * z * poly::eval(q, z);
    }

    poly::Sample sample(double z) const {
        const double pv = poly::eval(p, z), pd = poly::eval(poly::derivative(p), z);
        const double qv = poly::eval(q, z), qd = poly::eval(poly::derivative(q), z);
        const double pp = power == 2 ? pv * pv : pv;
        const double dpp = power == 2 ? 2.0 * pv * pd : pd;
        return {(1.0 - z * z) * pp - drive_sq * z * z * qv,
                -2.0 * z * pp + (1.0 - z * z) * dpp - drive_sq * (2.0 * z * qv + z * z * qd)};
    }

    /// Magnitude of the individual terms; |value| / scale is a relative backward error.
    double scale(double z) const {
        const double pa = poly::eval_abs(p, z);
        const double pp = power == 2 ? pa * pa : pa;
        return (1.0 + z * z) * pp + drive_sq * z * z * poly::eval_abs(q, z);
    }

    double residual(double z) const {
        const double s = scale(z);
        return s > 0.0 ? std::abs(value(z)) / s : std::abs(value(z));
    }

    poly::Coeffs coefficients() const {
        const poly::Coeffs pp = power == 2 ? poly::multiply(p, p) : p;
        const poly::Coeffs lhs = poly::multiply(poly::Coeffs{1.0, 0.0, -1.0}, pp);
        const poly::Coeffs rhs = poly::multiply(poly::Coeffs{0.0, 0.0, drive_sq}, q);
        return poly::add(lhs, rhs, -1.0);
    }
};

/// Generic sextic with P and Q in their raw-parameter form. Requires 1 - eta >= 1e-12.
inline EquationOfState build_sextic(const ModelParams& prm) {
    prm.validate();
    if (1.0 - prm.eta < 1e-12)
        throw std::domain_error("build_sextic: eta == 1, use the quartic eta = 1 form");
    const double l2 = prm.lambda * prm.lambda, l4 = l2 * l2;
    const double s = 1.0 - prm.eta * prm.eta, s2 = s * s;
    const double m = 1.0 - prm.eta, m2 = m * m, m4 = m2 * m2;
    const double dd0 = prm.delta * prm.delta0, d02 = prm.delta0 * prm.delta0;
    EquationOfState eos;
    eos.p = {d02 * (prm.kappa * prm.kappa + prm.delta * prm.delta) / (l4 * s2),
             2.0 * dd0 * (1.0 + prm.eta * prm.eta) / (l2 * s2), 1.0};
    eos.q = {d02 * prm.kappa * prm.kappa / (l4 * s2) + dd0 * dd0 / (l4 * m4), 2.0 * dd0 / (l2 * m2), 1.0};
    const double ec = epsilon_crit(prm.lambda, prm.eta);
    eos.drive_sq = (prm.epsilon / ec) * (prm.epsilon / ec);
    return eos;
}

/// The sextic multiplied through by (1 - eta)^4; finite for every eta in [0, 1].
inline EquationOfState regular_sextic(const ScaledParams& s, double eta) {
    const double m = 1.0 - eta, pl = 1.0 + eta;
    const double m2 = m * m, pl2 = pl * pl;
    const double dd0 = s.delta_bar * s.delta0_bar, d02 = s.delta0_bar * s.delta0_bar;
    const double k2 = s.kappa_bar * s.kappa_bar, d2 = s.delta_bar * s.delta_bar;
    EquationOfState eos;
    eos.p = {d02 * (k2 + d2) * pl2, 2.0 * dd0 * (1.0 + eta * eta), m2};
    eos.q = {d02 * k2 * m2 * pl2 + dd0 * dd0 * pl2 * pl2, 2.0 * dd0 * pl2 * m2, m2 * m2};
    eos.drive_sq = s.eps_bar * s.eps_bar;
    return eos;
}

/// Rotating-wave quartic after cancelling the common factor P = Q.
inline EquationOfState quartic_eta0(const ScaledParams& s) {
    const double dd0 = s.delta_bar * s.delta0_bar;
    const double d02 = s.delta0_bar * s.delta0_bar;
    EquationOfState eos;
    eos.p = {dd0 * dd0 + d02 * s.kappa_bar * s.kappa_bar, 2.0 * dd0, 1.0};
    eos.q = {1.0};
    eos.drive_sq = s.eps_bar * s.eps_bar;
    eos.power = 1;
    return eos;
}

/// Quantum-Rabi quartic, multiplied through by delta_bar^2 so that delta = 0 stays finite.
inline EquationOfState quartic_eta1(const ScaledParams& s) {
    EquationOfState eos;
    eos.p = {s.delta0_bar * (s.kappa_bar * s.kappa_bar + s.delta_bar * s.delta_bar), s.delta_bar};
    eos.q = {s.delta_bar * s.delta_bar};
    eos.drive_sq = s.eps_bar * s.eps_bar;
    return eos;
}

}  // namespace jcr
