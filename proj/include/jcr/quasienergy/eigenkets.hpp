#pragma once
/// @file eigenkets.hpp
/// @brief Displaced squeezed Fock eigenkets and a dense-diagonalization check.

#include <jcr/numerics/fock.hpp>
#include <jcr/quasienergy/spectrum.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <deque>
#include <memory>
#include <mutex>
#include <tuple>

namespace jcr {

/// Field amplitudes over |0>..|n_fock>.
struct FockVector {
    Eigen::VectorXd amplitudes;
    double tail_population = 0.0;  ///< weight lost above the truncation

    int n_fock() const { return static_cast<int>(amplitudes.size()) - 1; }
    bool truncated() const { return tail_population > 1e-8; }
};

inline int default_truncation(int n, double capital_lambda) {
    return std::max(200, static_cast<int>(std::ceil(25.0 * (n + 1) / capital_lambda)));
}

/// D(-alpha) S(xi) |k> with S(xi) = exp[(xi/2)(a^2 - a^dag^2)], evaluated in a
/// padded basis and cut back to n_fock + 1 levels.
inline FockVector displaced_squeezed(int k, double xi, double alpha, int n_fock) {
    if (k < 0 || n_fock < k) throw std::domain_error("displaced_squeezed: need 0 <= k <= n_fock");
    const Eigen::Index dim = n_fock + 1 + std::max(32, (n_fock + 1) / 2);
    const Eigen::SparseMatrix<double> a = fock::annihilation_sparse(dim);
    const Eigen::SparseMatrix<double> at = a.transpose();
    const Eigen::SparseMatrix<double> a2 = a * a, at2 = at * at;
    const Eigen::SparseMatrix<double> squeeze = 0.5 * xi * (a2 - at2);
    const Eigen::SparseMatrix<double> displace = -alpha * (at - a);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
    v(k) = 1.0;
    const Eigen::VectorXd full = fock::expm_action(displace, fock::expm_action(squeeze, v));
    FockVector out;
    out.amplitudes = full.head(n_fock + 1);
    out.tail_population = full.tail(dim - n_fock - 1).squaredNorm();
    return out;
}

/// Which quadratic factor of the uncoupled eigenproblem the ket solves:
/// `minus` carries Fock index n, `plus` carries n - 1.
enum class QuadraticFactor { plus, minus };

/// U^dag[xi, alpha(E)] |m> for the level (n, branch), m = n or n - 1.
inline FockVector eigenket_fock(int n, LevelBranch branch, const ModelParams& p, int n_fock = -1,
                                QuadraticFactor factor = QuadraticFactor::minus) {
    const double energy = level_energy(p, n, branch);
    const BogoliubovParams b = bogoliubov_params(p, energy);
    const int m = factor == QuadraticFactor::minus ? n : n - 1;
    if (m < 0) throw std::domain_error("eigenket_fock: the zero level has no plus-factor ket");
    if (n_fock < 0) n_fock = default_truncation(n, b.capital_lambda);
    return displaced_squeezed(m, b.xi, b.alpha, n_fock);
}

/// Dense resonant Hamiltonian on the product basis, index 2 * n + s with
/// s = 0 for the upper state |2> and s = 1 for the lower state |1>.
inline Eigen::MatrixXd resonant_hamiltonian(const ModelParams& p, int n_fock) {
    const Eigen::Index dim = 2 * (n_fock + 1);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    auto up = [](int n) { return 2 * n; };
    auto lo = [](int n) { return 2 * n + 1; };
    for (int n = 0; n <= n_fock; ++n) {
        if (n >= 1) {
            // a sigma_+ : |n,1> -> sqrt(n) |n-1,2>
            h(up(n - 1), lo(n)) += p.lambda * std::sqrt(n);
            // eta a^dag sigma_+ : |n-1,1> -> sqrt(n) |n,2>
            h(up(n), lo(n - 1)) += p.eta * p.lambda * std::sqrt(n);
            for (int s = 0; s < 2; ++s) h(2 * n + s, 2 * (n - 1) + s) += p.epsilon * std::sqrt(n);
        }
    }
    return h + h.transpose();
}

namespace detail {
using Diagonalization = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>;

/// Small read-only memo of recent diagonalizations.
inline std::shared_ptr<const Diagonalization> diagonalize_resonant(const ModelParams& p, int n_fock) {
    using Key = std::tuple<double, double, double, int>;
    static std::mutex mu;
    static std::deque<std::pair<Key, std::shared_ptr<const Diagonalization>>> cache;
    const Key key{p.lambda, p.eta, p.epsilon, n_fock};
    {
        std::lock_guard lock(mu);
        for (const auto& [k, d] : cache)
            if (k == key) return d;
    }
    auto d = std::make_shared<const Diagonalization>(resonant_hamiltonian(p, n_fock));
    if (d->info() != Eigen::Success) throw numerical_error("diagonalize_resonant: eigensolver failed");
    std::lock_guard lock(mu);
    cache.emplace_back(key, d);
    if (cache.size() > 6) cache.pop_front();
    return d;
}
}  // namespace detail

struct QuasienergyCheck {
    double residual = 0.0;          ///< min |E_numerical - E_level|
    double numerical_energy = 0.0;
    double overlap = 0.0;           ///< weight of the matched eigenvector in the analytic ket span
    bool truncation_warning = false;
};

/// Both emitter components of an eigenket on |0>..|n_fock>.
struct TwoComponentKet {
    Eigen::VectorXd upper;  ///< field ket paired with |2>
    Eigen::VectorXd lower;  ///< field ket paired with |1>

    double dot(const TwoComponentKet& o) const { return upper.dot(o.upper) + lower.dot(o.lower); }
};

namespace detail {
struct LevelMatch {
    QuasienergyCheck check;
    TwoComponentKet projected;  ///< matched eigenvector restricted to the analytic span
};

inline Eigen::VectorXd component(const Eigen::VectorXd& v, int s, int n_fock) {
    return Eigen::Map<const Eigen::VectorXd, 0, Eigen::InnerStride<2>>(v.data() + s, n_fock + 1);
}

inline LevelMatch match_level(const QuasienergyLevel& level, const ModelParams& p, int n_fock) {
    require_resonant(p);
    const double lam = capital_lambda(p);
    if (lam <= 0.0) throw std::domain_error("verify_quasienergy: requires drive below critical");
    if (n_fock < 0) n_fock = default_truncation(level.n, lam);
    const auto diag = diagonalize_resonant(p, n_fock);
    const Eigen::VectorXd& ev = diag->eigenvalues();
    Eigen::Index best = 0;
    (ev.array() - level.energy).abs().minCoeff(&best);

    LevelMatch out;
    out.check.numerical_energy = ev(best);
    out.check.residual = std::abs(ev(best) - level.energy);

    std::vector<FockVector> kets{eigenket_fock(level.n, level.branch, p, n_fock, QuadraticFactor::minus)};
    if (level.n > 0) kets.push_back(eigenket_fock(level.n, level.branch, p, n_fock, QuadraticFactor::plus));
    for (const auto& k : kets) out.check.truncation_warning = out.check.truncation_warning || k.truncated();

    // truncation can leave spurious eigenvalues degenerate with the level; keep the best match
    const double window = out.check.residual + 1e-9 * std::max(1.0, std::abs(level.energy));
    out.check.overlap = -1.0;
    for (Eigen::Index j = 0; j < ev.size(); ++j) {
        if (std::abs(ev(j) - level.energy) > window) continue;
        const Eigen::VectorXd v = diag->eigenvectors().col(j);
        TwoComponentKet proj{Eigen::VectorXd::Zero(n_fock + 1), Eigen::VectorXd::Zero(n_fock + 1)};
        for (const auto& k : kets) {
            proj.upper += k.amplitudes.dot(component(v, 0, n_fock)) * k.amplitudes;
            proj.lower += k.amplitudes.dot(component(v, 1, n_fock)) * k.amplitudes;
        }
        const double overlap = proj.dot(proj);
        if (overlap > out.check.overlap) {
            out.check.overlap = overlap;
            out.check.numerical_energy = ev(j);
            out.projected = std::move(proj);
        }
    }
    return out;
}
}  // namespace detail

/// Compares a closed-form level with the nearest eigenvalue of the truncated
/// resonant Hamiltonian and projects that eigenvector onto the analytic kets.
inline QuasienergyCheck verify_quasienergy(const QuasienergyLevel& level, const ModelParams& p, int n_fock = -1) {
    return detail::match_level(level, p, n_fock).check;
}

/// Two-component eigenket: the analytic field kets combined with weights read
/// off the matching numerical eigenvector, then normalized.
inline TwoComponentKet assemble_eigenket(const QuasienergyLevel& level, const ModelParams& p, int n_fock = -1) {
    auto m = detail::match_level(level, p, n_fock);
    const double norm = std::sqrt(m.projected.dot(m.projected));
    if (!(norm > 0.0)) throw numerical_error("assemble_eigenket: no eigenvector in the analytic span");
    m.projected.upper /= norm;
    m.projected.lower /= norm;
    return m.projected;
}

}  // namespace jcr
