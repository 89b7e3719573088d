#pragma once
/// @file density.hpp
/// @brief Density matrices on the field (x) emitter product space.

#include <jcr/core/params.hpp>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <complex>
#include <stdexcept>
#include <string>

namespace jcr {

struct DensityTolerance {
    double trace = 1e-10;
    double hermiticity = 1e-10;
    double min_eigenvalue = -1e-8;
};

struct DensityReport {
    double trace_error = 0.0;
    double hermiticity_error = 0.0;
    double min_eigenvalue = 0.0;
    bool ok = false;
};

struct DensityMatrix {
    int n_fock = 0;
    Eigen::MatrixXcd rho;

    Eigen::Index field_dim() const { return n_fock + 1; }

    /// |psi><psi| / <psi|psi>.
    static DensityMatrix pure(const Eigen::VectorXcd& psi, int n_fock) {
        if (psi.size() != 2 * (n_fock + 1)) throw std::domain_error("DensityMatrix::pure: size mismatch");
        const double nrm = psi.squaredNorm();
        if (!(nrm > 0.0)) throw std::domain_error("DensityMatrix::pure: zero vector");
        return {n_fock, psi * psi.adjoint() / nrm};
    }

    /// |n><n| (x) |s><s| with s = 0 upper, s = 1 lower.
    static DensityMatrix basis(int n_fock, int photons, int emitter) {
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(2 * (n_fock + 1));
        psi(2 * photons + emitter) = 1.0;
        return pure(psi, n_fock);
    }

    std::complex<double> trace() const { return rho.trace(); }

    double hermiticity_error() const { return (rho - rho.adjoint()).cwiseAbs().maxCoeff(); }

    double min_eigenvalue() const {
        const Eigen::MatrixXcd h = 0.5 * (rho + rho.adjoint());
        return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(h, Eigen::EigenvaluesOnly).eigenvalues()(0);
    }

    DensityReport check(const DensityTolerance& tol = {}) const {
        DensityReport r;
        r.trace_error = std::abs(trace() - 1.0);
        r.hermiticity_error = hermiticity_error();
        r.min_eigenvalue = min_eigenvalue();
        r.ok = r.trace_error <= tol.trace && r.hermiticity_error <= tol.hermiticity &&
               r.min_eigenvalue >= tol.min_eigenvalue;
        return r;
    }

    /// Throws numerical_error when any invariant is violated.
    void require_valid(const DensityTolerance& tol = {}) const {
        const auto r = check(tol);
        if (!r.ok)
            throw numerical_error("DensityMatrix: invariant violated (trace error " + sci(r.trace_error) +
                                  ", hermiticity " + sci(r.hermiticity_error) + ", min eigenvalue " +
                                  sci(r.min_eigenvalue) + ")");
    }

    /// Reduced field state, emitter traced out.
    Eigen::MatrixXcd field_state() const {
        const Eigen::Index d = field_dim();
        Eigen::MatrixXcd f(d, d);
        for (Eigen::Index j = 0; j < d; ++j)
            for (Eigen::Index i = 0; i < d; ++i) f(i, j) = rho(2 * i, 2 * j) + rho(2 * i + 1, 2 * j + 1);
        return f;
    }

    /// Reduced emitter state (upper, lower).
    Eigen::Matrix2cd emitter_state() const {
        Eigen::Matrix2cd e = Eigen::Matrix2cd::Zero();
        for (Eigen::Index n = 0; n < field_dim(); ++n)
            for (int s = 0; s < 2; ++s)
                for (int t = 0; t < 2; ++t) e(s, t) += rho(2 * n + s, 2 * n + t);
        return e;
    }

    /// tr(O rho) for an operator on the product space.
    std::complex<double> expect(const Eigen::SparseMatrix<double>& op) const {
        std::complex<double> acc = 0.0;
        for (Eigen::Index c = 0; c < op.outerSize(); ++c)
            for (Eigen::SparseMatrix<double>::InnerIterator it(op, c); it; ++it)
                acc += it.value() * rho(it.col(), it.row());
        return acc;
    }

    double photon_number() const {
        double acc = 0.0;
        for (Eigen::Index n = 1; n < field_dim(); ++n)
            acc += static_cast<double>(n) * (rho(2 * n, 2 * n).real() + rho(2 * n + 1, 2 * n + 1).real());
        return acc;
    }

    /// <a>
    std::complex<double> field_amplitude() const {
        std::complex<double> acc = 0.0;
        for (Eigen::Index n = 1; n < field_dim(); ++n) {
            const double s = std::sqrt(static_cast<double>(n));
            acc += s * (rho(2 * n, 2 * (n - 1)) + rho(2 * n + 1, 2 * (n - 1) + 1));
        }
        return acc;
    }

    /// <sigma_z> = 2 <J_z>
    double inversion() const {
        double acc = 0.0;
        for (Eigen::Index n = 0; n < field_dim(); ++n) acc += rho(2 * n, 2 * n).real() - rho(2 * n + 1, 2 * n + 1).real();
        return acc;
    }

    /// Photon-number distribution P(n).
    Eigen::VectorXd photon_distribution() const {
        Eigen::VectorXd p(field_dim());
        for (Eigen::Index n = 0; n < field_dim(); ++n) p(n) = rho(2 * n, 2 * n).real() + rho(2 * n + 1, 2 * n + 1).real();
        return p;
    }

    /// Population of the highest `levels` Fock states.
    double top_population(int levels = 5) const {
        const Eigen::VectorXd p = photon_distribution();
        const Eigen::Index k = std::min<Eigen::Index>(levels, p.size());
        return p.tail(k).sum();
    }
};

}  // namespace jcr
