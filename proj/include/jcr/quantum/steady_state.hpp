#pragma once
/// @file steady_state.hpp
/// @brief Stationary density matrices and detuning sweeps of the photon number.

#include <jcr/numerics/parallel.hpp>
#include <jcr/quantum/liouvillian.hpp>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/OrderingMethods>
#include <Eigen/SparseLU>

#include <cmath>
#include <complex>
#include <string>
#include <vector>

namespace jcr {

enum class SolveMethod { direct, inverse_iteration, iterative };

inline std::string to_string(SolveMethod m) {
    switch (m) {
        case SolveMethod::direct: return "direct";
        case SolveMethod::inverse_iteration: return "inverse_iteration";
        case SolveMethod::iterative: return "iterative";
    }
    return "unknown";
}

struct SteadyStateOptions {
    double tol = 1e-8;               ///< residual bound, relative to kappa
    double top_population = 1e-6;    ///< allowed weight in the highest Fock levels
    int top_levels = 5;
    double growth = 1.25;            ///< n_fock multiplier per escalation
    int max_fock = 1024;
    Eigen::Index direct_limit = 300000;  ///< generator dimension above which the iterative path is used
    int inverse_iterations = 12;      ///< cap for the shifted fallback
    double inverse_shift = 1e-7;     ///< fallback shift, relative to kappa
};

struct SteadyStateResult {
    DensityMatrix state;
    SolveMethod method = SolveMethod::direct;
    double residual = 0.0;           ///< ||L rho||_F / kappa
    double raw_hermiticity = 0.0;    ///< before Hermitian projection
    double top_population = 0.0;
    int escalations = 0;
};

namespace detail {

/// Generator with row 0 replaced by the trace functional.
inline SparseComplex trace_constrained(const SparseComplex& l, Eigen::Index d) {
    std::vector<Eigen::Triplet<std::complex<double>>> t;
    t.reserve(static_cast<std::size_t>(l.nonZeros() + d));
    for (Eigen::Index c = 0; c < l.outerSize(); ++c)
        for (SparseComplex::InnerIterator it(l, c); it; ++it)
            if (it.row() != 0) t.emplace_back(it.row(), it.col(), it.value());
    for (Eigen::Index k = 0; k < d; ++k) t.emplace_back(0, k * d + k, 1.0);
    SparseComplex m(l.rows(), l.cols());
    m.setFromTriplets(t.begin(), t.end());
    m.makeCompressed();
    return m;
}

inline Eigen::MatrixXcd unvec(const Eigen::VectorXcd& x, Eigen::Index d) {
    return Eigen::Map<const Eigen::MatrixXcd>(x.data(), d, d);
}

inline double residual(const Eigen::MatrixXcd& rho, const QuantumOperators& ops) {
    return liouvillian_apply(rho, ops).norm() / ops.params.kappa;
}

inline bool acceptable(const Eigen::MatrixXcd& rho, const QuantumOperators& ops, const SteadyStateOptions& opt) {
    if (!rho.allFinite()) return false;
    const std::complex<double> tr = rho.trace();
    if (std::abs(tr - 1.0) > 1e-8) return false;
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-8) return false;
    if (residual(rho, ops) > opt.tol) return false;
    const DensityMatrix dm{ops.n_fock, 0.5 * (rho + rho.adjoint())};
    return dm.min_eigenvalue() >= -1e-8;
}

/// Inverse iteration at a small shift from |0><0| (x) |lower><lower|; keeps the
/// stationary component reached from that state when the kernel is degenerate.
inline Eigen::MatrixXcd solve_inverse_iteration(const SparseComplex& l, const QuantumOperators& ops,
                                                const SteadyStateOptions& opt) {
    const Eigen::Index d = ops.dim();
    SparseComplex shifted = l;
    const double sigma = opt.inverse_shift * ops.params.kappa;
    for (Eigen::Index k = 0; k < shifted.rows(); ++k) shifted.coeffRef(k, k) -= sigma;
    Eigen::SparseLU<SparseComplex, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(shifted);
    if (lu.info() != Eigen::Success) throw numerical_error("steady_state: shifted factorization failed");
    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(d * d);
    x(d + 1) = 1.0;  // |0, lower><0, lower| sits at (1, 1)
    for (int it = 0; it < opt.inverse_iterations; ++it) {
        Eigen::VectorXcd y = lu.solve(x);
        if (lu.info() != Eigen::Success || !y.allFinite()) throw numerical_error("steady_state: inverse iteration failed");
        std::complex<double> tr = 0.0;
        for (Eigen::Index k = 0; k < d; ++k) tr += y(k * d + k);
        y /= tr;
        const double change = (y - x).norm();
        x = std::move(y);
        if (it > 0 && change < 1e-13 * x.norm()) break;
    }
    return unvec(x, d);
}

inline Eigen::MatrixXcd solve_iterative(const SparseComplex& l, const QuantumOperators& ops,
                                        const SteadyStateOptions& opt) {
    const Eigen::Index d = ops.dim();
    const SparseComplex m = trace_constrained(l, d);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(d * d);
    rhs(0) = 1.0;
    Eigen::BiCGSTAB<SparseComplex, Eigen::IncompleteLUT<std::complex<double>>> solver;
    solver.preconditioner().setDroptol(1e-6);
    solver.preconditioner().setFillfactor(20);
    solver.setTolerance(1e-3 * opt.tol);
    solver.setMaxIterations(20000);
    solver.compute(m);
    if (solver.info() != Eigen::Success) throw numerical_error("steady_state: preconditioner setup failed");
    const Eigen::VectorXcd x = solver.solve(rhs);
    if (solver.info() != Eigen::Success)
        throw numerical_error("steady_state: iterative solve did not converge (error " +
                              sci(solver.error()) + ")");
    return unvec(x, d);
}

/// A conserved emitter quantity splits the kernel: at lambda = 0 the emitter
/// populations, at eta = 1 with delta0 = 0 the sigma_x parity.
inline bool degenerate_kernel(const ModelParams& p) { return p.lambda == 0.0 || (p.eta == 1.0 && p.delta0 == 0.0); }

inline SteadyStateResult solve_at(const QuantumOperators& ops, const SteadyStateOptions& opt) {
    const Eigen::Index d = ops.dim();
    const SparseComplex l = build_liouvillian(ops);
    Eigen::MatrixXcd rho;
    SteadyStateResult out;
    if (degenerate_kernel(ops.params)) {
        rho = solve_inverse_iteration(l, ops, opt);
        out.method = SolveMethod::inverse_iteration;
    } else if (d * d > opt.direct_limit) {
        rho = solve_iterative(l, ops, opt);
        out.method = SolveMethod::iterative;
    } else {
        const SparseComplex m = trace_constrained(l, d);
        Eigen::SparseLU<SparseComplex, Eigen::COLAMDOrdering<int>> lu;
        lu.compute(m);
        bool ok = lu.info() == Eigen::Success;
        if (ok) {
            Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(d * d);
            rhs(0) = 1.0;
            const Eigen::VectorXcd x = lu.solve(rhs);
            ok = lu.info() == Eigen::Success && x.allFinite();
            if (ok) rho = unvec(x, d);
            ok = ok && acceptable(rho, ops, opt);
        }
        if (!ok) {
            rho = solve_inverse_iteration(l, ops, opt);
            out.method = SolveMethod::inverse_iteration;
        }
    }
    out.raw_hermiticity = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (out.raw_hermiticity > 1e-8)
        throw numerical_error("steady_state: solution far from Hermitian (" + sci(out.raw_hermiticity) + ")");
    rho = 0.5 * (rho + rho.adjoint());
    rho /= rho.trace().real();
    out.residual = residual(rho, ops);
    if (!(out.residual <= opt.tol))
        throw numerical_error("steady_state: residual " + sci(out.residual) + " exceeds tolerance");
    out.state = DensityMatrix{ops.n_fock, std::move(rho)};
    out.state.require_valid();
    out.top_population = out.state.top_population(opt.top_levels);
    return out;
}

}  // namespace detail

/// Stationary state with ||d rho/dt|| <= tol kappa. The truncation grows by
/// `growth` until the top Fock levels hold less than `top_population`. When the
/// kernel is degenerate the state reached from |0>|lower> is returned.
inline SteadyStateResult steady_state(const ModelParams& p, int n_fock, const SteadyStateOptions& opt = {}) {
    p.validate(true);
    if (!(p.kappa > 0.0)) throw std::domain_error("steady_state: kappa must be positive");
    if (n_fock > opt.max_fock) throw std::domain_error("steady_state: n_fock above the escalation cap");
    int escalations = 0;
    for (;;) {
        auto r = detail::solve_at(build_operators(p, n_fock), opt);
        r.escalations = escalations;
        if (r.top_population < opt.top_population) return r;
        if (n_fock >= opt.max_fock)
            throw numerical_error("steady_state: truncation infeasible (top-level population " +
                                  sci(r.top_population) + " at n_fock " + std::to_string(n_fock) + ")");
        n_fock = std::min(opt.max_fock, static_cast<int>(std::ceil(n_fock * opt.growth)));
        ++escalations;
    }
}

inline SteadyStateResult steady_state(const ModelParams& p, int n_fock, double tol) {
    SteadyStateOptions opt;
    opt.tol = tol;
    return steady_state(p, n_fock, opt);
}

struct SweepPoint {
    double delta = 0.0;
    double photons = 0.0;
    std::complex<double> field;
    double inversion = 0.0;  ///< <sigma_z>
    int n_fock = 0;
    SolveMethod method = SolveMethod::direct;
};

struct FockPolicy {
    int initial = 40;
    SteadyStateOptions options;
};

/// Steady-state expectations along a detuning grid with delta0 = delta.
inline std::vector<SweepPoint> photon_sweep(const ModelParams& p, const std::vector<double>& delta_grid,
                                            const FockPolicy& policy = {}, unsigned threads = 0) {
    p.validate(true);
    if (!(p.kappa > 0.0)) throw std::domain_error("photon_sweep: kappa must be positive");
    for (double d : delta_grid)
        if (!std::isfinite(d)) throw std::domain_error("photon_sweep: non-finite detuning");
    std::vector<SweepPoint> out(delta_grid.size());
    parallel_for(
        delta_grid.size(),
        [&](std::size_t i) {
            ModelParams q = p;
            q.delta = q.delta0 = delta_grid[i];
            const auto r = steady_state(q, policy.initial, policy.options);
            out[i] = {delta_grid[i], r.state.photon_number(), r.state.field_amplitude(), r.state.inversion(),
                      r.state.n_fock, r.method};
        },
        threads);
    return out;
}

}  // namespace jcr
