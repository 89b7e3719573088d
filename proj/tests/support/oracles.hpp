#pragma once
/// Independent reference computations used by the unit and acceptance tests.
/// Nothing here calls into the library's solvers.

#include <jcr/core/params.hpp>

#include <Eigen/Dense>
#include <boost/numeric/odeint.hpp>
#include <unsupported/Eigen/KroneckerProduct>

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

/// Bisection of an increasing function on [lo, hi].
inline double bisect(const std::function<double(double)>& f, double lo, double hi, int iters = 200) {
    double flo = f(lo);
    for (int i = 0; i < iters; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) { lo = mid; flo = fm; } else { hi = mid; }
    }
    return 0.5 * (lo + hi);
}

/// Threshold ratio from the sign of 1 - (1-eta^2)^2 kappa^2 / (4 eta^2 delta^2).
inline double eta_threshold(double kappa, double delta) {
    const double r2 = kappa * kappa / (delta * delta);
    return bisect([&](double e) { return 1.0 - (1.0 - e * e) * (1.0 - e * e) / (4.0 * e * e) * r2; }, 1e-300, 1.0);
}

/// Undriven nontrivial inversions, evaluated in the textbook form with eta in the denominator.
inline std::array<double, 2> undriven_zeta(double lambda, double eta, double kappa, double delta, double delta0) {
    const double s = 1.0 - eta * eta;
    const double root = std::sqrt(1.0 - s * s / (4.0 * eta * eta) * kappa * kappa / (delta * delta));
    const double pre = -delta * delta0 / (lambda * lambda * s * s);
    return {pre * (1.0 + eta * eta - 2.0 * eta * root), pre * (1.0 + eta * eta + 2.0 * eta * root)};
}

/// Critical couplings: bisection on |zeta_pm(lambda)| - 1, which falls with lambda.
inline std::array<double, 2> critical_couplings(double eta, double kappa, double delta, double delta0) {
    std::array<double, 2> out{};
    for (int k = 0; k < 2; ++k)
        out[k] = bisect([&](double l) { return 1.0 - std::abs(undriven_zeta(l, eta, kappa, delta, delta0)[k]); },
                        1e-6, 1e6);
    return out;
}

/// (1 - z^2) P^2 - (4 eps^2 / lambda^2 (1+eta)^2) z^2 Q with P and Q written from raw parameters.
inline double sextic_raw(double z, const jcr::ModelParams& p) {
    const double l = p.lambda, e = p.eta, s = 1.0 - e * e;
    const double pz = z * z + 2.0 * p.delta * p.delta0 * (1.0 + e * e) / (l * l * s * s) * z +
                      p.delta0 * p.delta0 * (p.kappa * p.kappa + p.delta * p.delta) / (l * l * l * l * s * s);
    const double qz = z * z + 2.0 * p.delta * p.delta0 / (l * l * (1.0 - e) * (1.0 - e)) * z +
                      p.delta0 * p.delta0 * p.kappa * p.kappa / (l * l * l * l * s * s) +
                      p.delta * p.delta * p.delta0 * p.delta0 / (l * l * l * l * std::pow(1.0 - e, 4));
    const double drive = 4.0 * p.epsilon * p.epsilon / (l * l * (1.0 + e) * (1.0 + e));
    return (1.0 - z * z) * pz * pz - drive * z * z * qz;
}

/// Monomial coefficients of a degree-n polynomial from n+1 samples (Vandermonde solve).
inline std::vector<double> interpolate_coefficients(const std::function<double(double)>& f, int degree) {
    const int n = degree + 1;
    Eigen::MatrixXd v(n, n);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        const double x = std::cos(M_PI * (i + 0.5) / n);
        for (int j = 0; j < n; ++j) v(i, j) = std::pow(x, j);
        y(i) = f(x);
    }
    const Eigen::VectorXd c = v.fullPivLu().solve(y);
    return {c.data(), c.data() + n};
}

/// Sign changes of f on a uniform grid over [lo, hi]; each entry brackets a root.
inline std::vector<std::array<double, 2>> sign_changes(const std::function<double(double)>& f, double lo, double hi,
                                                       int points) {
    std::vector<std::array<double, 2>> out;
    double x0 = lo, f0 = f(lo);
    for (int i = 1; i < points; ++i) {
        const double x1 = lo + (hi - lo) * i / (points - 1);
        const double f1 = f(x1);
        if (f0 == 0.0) out.push_back({x0, x0});
        else if ((f0 < 0.0) != (f1 < 0.0) && f1 != 0.0) out.push_back({x0, x1});
        x0 = x1;
        f0 = f1;
    }
    if (f0 == 0.0) out.push_back({x0, x0});
    return out;
}

/// Mean-field flow in real coordinates, written out component by component.
struct MeanFieldFlow {
    jcr::ModelParams p;
    void operator()(const std::array<double, 5>& y, std::array<double, 5>& dy, double) const {
        const double l = p.lambda, e = p.eta;
        const double ax = y[0], ay = y[1], bx = y[2], by = y[3], z = y[4];
        dy[0] = -p.kappa * ax + p.delta * ay + 0.5 * l * (1.0 - e) * by;
        dy[1] = -p.kappa * ay - p.delta * ax - 0.5 * l * (1.0 + e) * bx - p.epsilon;
        dy[2] = p.delta0 * by - 2.0 * l * (1.0 - e) * z * ay;
        dy[3] = -p.delta0 * bx + 2.0 * l * (1.0 + e) * z * ax;
        dy[4] = 2.0 * l * ((1.0 - e) * ay * bx - (1.0 + e) * ax * by);
    }
};

/// Integrates the flow with an adaptive Dormand-Prince stepper.
inline std::array<double, 5> integrate_flow(const jcr::ModelParams& p, std::array<double, 5> y, double t_end) {
    using namespace boost::numeric::odeint;
    auto stepper = make_controlled(1e-11, 1e-11, runge_kutta_dopri5<std::array<double, 5>>());
    integrate_adaptive(stepper, MeanFieldFlow{p}, y, 0.0, t_end, 1e-3);
    return y;
}

/// Field ladder operator written out densely.
inline Eigen::MatrixXd ladder(int dim) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
    for (int n = 0; n + 1 < dim; ++n) a(n, n + 1) = std::sqrt(n + 1.0);
    return a;
}

/// lambda (a s+ + a^dag s-) + eta lambda (a^dag s+ + a s-) + eps (a + a^dag)
/// + delta a^dag a + delta0 s_z / 2, assembled by Kronecker products on
/// field (x) emitter with emitter basis (upper, lower).
inline Eigen::MatrixXd hamiltonian(const jcr::ModelParams& p, int n_fock) {
    const Eigen::MatrixXd a = ladder(n_fock + 1), ad = a.transpose();
    const Eigen::MatrixXd number = ad * a, quadrature = a + ad;
    Eigen::Matrix2d sp, sz;
    sp << 0, 1, 0, 0;
    sz << 0.5, 0, 0, -0.5;
    const Eigen::Matrix2d sm = sp.transpose(), i2 = Eigen::Matrix2d::Identity();
    const Eigen::MatrixXd iF = Eigen::MatrixXd::Identity(n_fock + 1, n_fock + 1);
    using Eigen::kroneckerProduct;
    Eigen::MatrixXd h = p.lambda * (kroneckerProduct(a, sp) + kroneckerProduct(ad, sm)).eval();
    h += p.eta * p.lambda * (kroneckerProduct(ad, sp) + kroneckerProduct(a, sm)).eval();
    h += p.epsilon * kroneckerProduct(quadrature, i2).eval();
    h += p.delta * kroneckerProduct(number, i2).eval();
    h += p.delta0 * kroneckerProduct(iF, sz).eval();
    return h;
}

/// a (x) 1 on field (x) emitter.
inline Eigen::MatrixXd mode(int n_fock) {
    return Eigen::kroneckerProduct(ladder(n_fock + 1), Eigen::Matrix2d::Identity().eval()).eval();
}

/// -i[H, rho] + kappa (2 a rho a^T - a^T a rho - rho a^T a) with dense matrices.
inline Eigen::MatrixXcd lindblad(const Eigen::MatrixXd& h, const Eigen::MatrixXd& a, double kappa,
                                 const Eigen::MatrixXcd& rho) {
    const std::complex<double> i(0.0, 1.0);
    const Eigen::MatrixXd at = a.transpose(), n = at * a;
    const Eigen::MatrixXcd hc = h.cast<std::complex<double>>(), ac = a.cast<std::complex<double>>(),
                           atc = at.cast<std::complex<double>>(), nc = n.cast<std::complex<double>>();
    return -i * (hc * rho - rho * hc) + kappa * (2.0 * ac * rho * atc - nc * rho - rho * nc);
}

/// Classical fixed-step RK4 of the master equation; delta(t) (with delta0 = delta)
/// is re-evaluated at every stage. Returns rho at each of `times`.
inline std::vector<Eigen::MatrixXcd> master_equation_rk4(const jcr::ModelParams& p, int n_fock,
                                                         const std::function<double(double)>& delta_of_t,
                                                         const Eigen::MatrixXcd& rho0,
                                                         const std::vector<double>& times, double dt) {
    const Eigen::MatrixXd a = mode(n_fock);
    auto h_at = [&](double t) {
        jcr::ModelParams q = p;
        q.delta = q.delta0 = delta_of_t(t);
        return hamiltonian(q, n_fock);
    };
    std::vector<Eigen::MatrixXcd> out;
    Eigen::MatrixXcd rho = rho0;
    double t = 0.0;
    for (double target : times) {
        while (t < target - 1e-12) {
            const double h = std::min(dt, target - t);
            const auto k1 = lindblad(h_at(t), a, p.kappa, rho);
            const auto k2 = lindblad(h_at(t + 0.5 * h), a, p.kappa, rho + 0.5 * h * k1);
            const auto k3 = lindblad(h_at(t + 0.5 * h), a, p.kappa, rho + 0.5 * h * k2);
            const auto k4 = lindblad(h_at(t + h), a, p.kappa, rho + h * k3);
            rho += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            t += h;
        }
        out.push_back(rho);
    }
    return out;
}

/// d<a^dag a>/dt from the Heisenberg equation: -2 kappa <n> plus the
/// commutator of n with the coupling and drive terms.
inline double photon_flux(const jcr::ModelParams& p, int n_fock, const Eigen::MatrixXcd& rho) {
    const Eigen::MatrixXd a = mode(n_fock), ad = a.transpose();
    Eigen::Matrix2d sp;
    sp << 0, 1, 0, 0;
    const Eigen::MatrixXd iF = Eigen::MatrixXd::Identity(n_fock + 1, n_fock + 1);
    const Eigen::MatrixXd s_plus = Eigen::kroneckerProduct(iF, sp).eval(), s_minus = s_plus.transpose();
    auto ev = [&](const Eigen::MatrixXd& o) { return (o.cast<std::complex<double>>() * rho).trace(); };
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> coupling =
        -i * p.lambda * (ev(ad * s_minus) - ev(a * s_plus)) - i * p.eta * p.lambda * (ev(ad * s_plus) - ev(a * s_minus)) -
        i * p.epsilon * (ev(ad) - ev(a));
    return (-2.0 * p.kappa * ev(ad * a) + coupling).real();
}

}  // namespace oracle
