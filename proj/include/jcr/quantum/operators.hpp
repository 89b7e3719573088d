#pragma once
/// @file operators.hpp
/// @brief Fock-truncated operators for one two-state system coupled to the field mode.
///
/// The product basis is field (x) emitter with index 2n + s, where s = 0 is the
/// upper state and s = 1 the lower state.

#include <jcr/core/params.hpp>
#include <jcr/numerics/fock.hpp>

#include <Eigen/Sparse>
#include <unsupported/Eigen/KroneckerProduct>

#include <stdexcept>

namespace jcr {

using SparseReal = Eigen::SparseMatrix<double>;

struct QuantumOperators {
    int n_fock = 0;
    ModelParams params;

    SparseReal a, a_dagger;                       ///< field, dimension n_fock + 1
    SparseReal sigma_minus, sigma_plus, j_z;      ///< emitter, dimension 2
    SparseReal field_identity, emitter_identity;

    SparseReal mode;       ///< a (x) 1
    SparseReal number;     ///< a^dag a (x) 1
    SparseReal inversion;  ///< 1 (x) J_z
    SparseReal coupling;   ///< coupling and drive terms, independent of the detunings
    SparseReal hamiltonian;

    Eigen::Index field_dim() const { return n_fock + 1; }
    Eigen::Index dim() const { return 2 * field_dim(); }

    /// Diagonal of delta a^dag a + delta0 J_z.
    Eigen::VectorXd detuning_diagonal(double delta, double delta0) const {
        Eigen::VectorXd d(dim());
        for (Eigen::Index n = 0; n < field_dim(); ++n) {
            d(2 * n) = delta * static_cast<double>(n) + 0.5 * delta0;
            d(2 * n + 1) = delta * static_cast<double>(n) - 0.5 * delta0;
        }
        return d;
    }
};

inline QuantumOperators build_operators(const ModelParams& p, int n_fock) {
    p.validate(true);
    if (p.n_systems != 1) throw std::domain_error("build_operators: only a single two-state system is supported");
    if (n_fock < 4) throw std::domain_error("build_operators: n_fock must be >= 4");
    using Eigen::kroneckerProduct;

    QuantumOperators ops;
    ops.n_fock = n_fock;
    ops.params = p;
    ops.a = fock::annihilation_sparse(n_fock + 1);
    ops.a_dagger = ops.a.transpose();
    ops.sigma_plus.resize(2, 2);
    ops.sigma_plus.insert(0, 1) = 1.0;
    ops.sigma_minus = ops.sigma_plus.transpose();
    ops.j_z.resize(2, 2);
    ops.j_z.insert(0, 0) = 0.5;
    ops.j_z.insert(1, 1) = -0.5;
    ops.field_identity.resize(n_fock + 1, n_fock + 1);
    ops.field_identity.setIdentity();
    ops.emitter_identity.resize(2, 2);
    ops.emitter_identity.setIdentity();

    const SparseReal field_number = ops.a_dagger * ops.a;
    const SparseReal quadrature = ops.a + ops.a_dagger;
    ops.mode = kroneckerProduct(ops.a, ops.emitter_identity);
    ops.number = kroneckerProduct(field_number, ops.emitter_identity);
    ops.inversion = kroneckerProduct(ops.field_identity, ops.j_z);

    const SparseReal rotating =
        SparseReal(kroneckerProduct(ops.a, ops.sigma_plus)) + SparseReal(kroneckerProduct(ops.a_dagger, ops.sigma_minus));
    const SparseReal counter =
        SparseReal(kroneckerProduct(ops.a_dagger, ops.sigma_plus)) + SparseReal(kroneckerProduct(ops.a, ops.sigma_minus));
    ops.coupling = p.lambda * rotating + p.eta * p.lambda * counter +
                   p.epsilon * SparseReal(kroneckerProduct(quadrature, ops.emitter_identity));
    ops.coupling.prune(0.0);
    ops.hamiltonian = ops.coupling + p.delta * ops.number + p.delta0 * ops.inversion;
    ops.hamiltonian.prune(0.0);
    ops.hamiltonian.makeCompressed();
    return ops;
}

}  // namespace jcr
