#pragma once
/// @file liouvillian.hpp
/// @brief Master-equation generator: d rho/dt = -i[H, rho] + kappa (2 a rho a^dag - a^dag a rho - rho a^dag a).

#include <jcr/numerics/dopri5.hpp>
#include <jcr/quantum/density.hpp>
#include <jcr/quantum/operators.hpp>

#include <Eigen/Sparse>
#include <unsupported/Eigen/KroneckerProduct>

#include <complex>
#include <stdexcept>
#include <vector>

namespace jcr {

using SparseComplex = Eigen::SparseMatrix<std::complex<double>>;

inline Eigen::MatrixXcd liouvillian_apply(const Eigen::MatrixXcd& rho, const QuantumOperators& ops) {
    if (rho.rows() != ops.dim() || rho.cols() != ops.dim())
        throw std::domain_error("liouvillian_apply: shape mismatch");
    using namespace std::complex_literals;
    const double k = ops.params.kappa;
    const Eigen::MatrixXcd h_rho = ops.hamiltonian * rho;
    const Eigen::MatrixXcd rho_h = rho * ops.hamiltonian;
    const Eigen::MatrixXcd a_rho = ops.mode * rho;
    const Eigen::MatrixXcd n_rho = ops.number * rho;
    const Eigen::MatrixXcd rho_n = rho * ops.number;
    Eigen::MatrixXcd out = -1i * (h_rho - rho_h) - k * (n_rho + rho_n);
    out.noalias() += 2.0 * k * (a_rho * SparseReal(ops.mode.transpose()));
    return out;
}

inline Eigen::MatrixXcd liouvillian_apply(const DensityMatrix& rho, const QuantumOperators& ops) {
    return liouvillian_apply(rho.rho, ops);
}

/// Generator acting on column-major vec(rho), using vec(A X B) = (B^T (x) A) vec(X).
inline SparseComplex build_liouvillian(const QuantumOperators& ops) {
    using Eigen::kroneckerProduct;
    using namespace std::complex_literals;
    const SparseComplex h = ops.hamiltonian.cast<std::complex<double>>();
    const SparseComplex a = ops.mode.cast<std::complex<double>>();
    const SparseComplex n = ops.number.cast<std::complex<double>>();
    SparseComplex id(ops.dim(), ops.dim());
    id.setIdentity();
    const SparseComplex ht = h.transpose(), nt = n.transpose();
    const SparseComplex a_conj = a.conjugate();
    const double k = ops.params.kappa;
    SparseComplex l = SparseComplex(kroneckerProduct(id, h)) * std::complex<double>(-1i);
    l += SparseComplex(kroneckerProduct(ht, id)) * std::complex<double>(1i);
    if (k > 0.0) {
        l += SparseComplex(kroneckerProduct(a_conj, a)) * std::complex<double>(2.0 * k);
        l -= SparseComplex(kroneckerProduct(id, n)) * std::complex<double>(k);
        l -= SparseComplex(kroneckerProduct(nt, id)) * std::complex<double>(k);
    }
    l.prune(std::complex<double>(0.0));
    l.makeCompressed();
    return l;
}

/// Integrates the master equation and records rho at the requested times.
template <class Observe>
DensityMatrix evolve_density(const DensityMatrix& rho0, const QuantumOperators& ops, const std::vector<double>& times,
                             Observe&& observe, const StepTolerance& tol = {1e-10, 1e-8}) {
    const Eigen::Index d = ops.dim();
    auto rhs = [&](double, const Eigen::VectorXcd& y) -> Eigen::VectorXcd {
        const Eigen::Map<const Eigen::MatrixXcd> r(y.data(), d, d);
        const Eigen::MatrixXcd dr = liouvillian_apply(Eigen::MatrixXcd(r), ops);
        return Eigen::Map<const Eigen::VectorXcd>(dr.data(), d * d);
    };
    const Eigen::VectorXcd y0 = Eigen::Map<const Eigen::VectorXcd>(rho0.rho.data(), d * d);
    const Eigen::VectorXcd y = dopri5_integrate(
        rhs, y0, 0.0, times, tol, [&](double t, const Eigen::VectorXcd& v) {
            observe(t, DensityMatrix{rho0.n_fock, Eigen::Map<const Eigen::MatrixXcd>(v.data(), d, d)});
        });
    return {rho0.n_fock, Eigen::Map<const Eigen::MatrixXcd>(y.data(), d, d)};
}

}  // namespace jcr
