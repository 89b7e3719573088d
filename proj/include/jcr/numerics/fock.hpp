#pragma once
/// @file fock.hpp
/// @brief Ladder operators on a truncated Fock space.

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <vector>

namespace jcr::fock {

/// Annihilation operator on levels 0..dim-1.
inline Eigen::MatrixXd annihilation(Eigen::Index dim) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

inline Eigen::SparseMatrix<double> annihilation_sparse(Eigen::Index dim) {
    std::vector<Eigen::Triplet<double>> t;
    for (Eigen::Index n = 1; n < dim; ++n) t.emplace_back(n - 1, n, std::sqrt(static_cast<double>(n)));
    Eigen::SparseMatrix<double> a(dim, dim);
    a.setFromTriplets(t.begin(), t.end());
    return a;
}

/// exp(g) v by Taylor series on sub-steps of unit 1-norm.
inline Eigen::VectorXd expm_action(const Eigen::SparseMatrix<double>& g, Eigen::VectorXd v) {
    double norm1 = 0.0;
    for (Eigen::Index c = 0; c < g.outerSize(); ++c) {
        double col = 0.0;
        for (Eigen::SparseMatrix<double>::InnerIterator it(g, c); it; ++it) col += std::abs(it.value());
        norm1 = std::max(norm1, col);
    }
    const int steps = std::max(1, static_cast<int>(std::ceil(norm1)));
    const double h = 1.0 / steps;
    for (int s = 0; s < steps; ++s) {
        Eigen::VectorXd term = v, sum = v;
        for (int k = 1; k < 60; ++k) {
            term = (h / k) * (g * term);
            sum += term;
            if (term.norm() <= 1e-17 * sum.norm()) break;
        }
        v = std::move(sum);
    }
    return v;
}

}  // namespace jcr::fock
