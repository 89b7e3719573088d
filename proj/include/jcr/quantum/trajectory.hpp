#pragma once
/// @file trajectory.hpp
/// @brief Quantum-jump trajectories with a linearly scanned detuning.
///
/// Time is measured in units of 1/kappa throughout: `duration`, `times` and
/// `jump_times` hold kappa t.

#include <jcr/numerics/dopri5.hpp>
#include <jcr/numerics/parallel.hpp>
#include <jcr/numerics/rng.hpp>
#include <jcr/quantum/operators.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace jcr {

/// delta = delta0 ramps linearly from delta_start to delta_end over kappa T = duration.
struct DetuningScan {
    double delta_start = 0.0;
    double delta_end = 0.0;
    double duration = 1.0;
    int output_points = 1001;

    double delta_at(double tau) const { return delta_start + (delta_end - delta_start) * (tau / duration); }
    bool is_static() const { return delta_start == delta_end; }

    static DetuningScan fixed(double delta, double duration, int output_points = 1001) {
        return {delta, delta, duration, output_points};
    }
};

struct TrajectoryOptions {
    StepTolerance tol{1e-12, 1e-7};
    double max_norm_drop = 0.1;  ///< largest relative norm loss accepted in one step
    double jump_time_tol = 1e-10;  ///< bisection width, in units of 1/kappa
    long max_steps = 2000000000L;
};

struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<double> detuning_schedule;
    std::vector<double> photon_expect;
    std::vector<std::complex<double>> field_expect;
    std::vector<double> jump_times;
    std::uint64_t seed = 0;
    double top_population = 0.0;  ///< largest weight in the top five Fock levels over the output samples
};

namespace detail {

inline void record_observables(TrajectoryRecord& rec, const Eigen::VectorXcd& psi, double tau, double delta) {
    const Eigen::Index nf = psi.size() / 2;
    double norm = 0.0, photons = 0.0, top = 0.0;
    std::complex<double> field = 0.0;
    for (Eigen::Index n = 0; n < nf; ++n) {
        const double w = std::norm(psi(2 * n)) + std::norm(psi(2 * n + 1));
        norm += w;
        photons += static_cast<double>(n) * w;
        if (n >= nf - 5) top += w;
        if (n > 0) {
            const double s = std::sqrt(static_cast<double>(n));
            field += s * (std::conj(psi(2 * n - 2)) * psi(2 * n) + std::conj(psi(2 * n - 1)) * psi(2 * n + 1));
        }
    }
    rec.times.push_back(tau);
    rec.detuning_schedule.push_back(delta);
    rec.photon_expect.push_back(photons / norm);
    rec.field_expect.push_back(field / norm);
    rec.top_population = std::max(rec.top_population, top / norm);
}

}  // namespace detail

/// One unravelling of the master equation with jump operator sqrt(2 kappa) a and
/// drift H - i kappa a^dag a, starting from |0>|lower>. H is refreshed at the
/// start of every step from the scan and held fixed within it.
inline TrajectoryRecord mcwf_trajectory(const ModelParams& p, const DetuningScan& scan, std::uint64_t seed,
                                        int n_fock, const TrajectoryOptions& opt = {}) {
    if (!(scan.duration > 0.0) || !std::isfinite(scan.duration))
        throw std::domain_error("mcwf_trajectory: duration must be positive");
    if (!(p.kappa > 0.0)) throw std::domain_error("mcwf_trajectory: kappa must be positive");
    if (scan.output_points < 2) throw std::domain_error("mcwf_trajectory: need at least two output points");
    if (!std::isfinite(scan.delta_start) || !std::isfinite(scan.delta_end))
        throw std::domain_error("mcwf_trajectory: non-finite scan");
    using namespace std::complex_literals;
    using Vec = Eigen::VectorXcd;

    const QuantumOperators ops = build_operators(p, n_fock);
    const Eigen::SparseMatrix<std::complex<double>> coupling = ops.coupling.cast<std::complex<double>>();
    const Eigen::Index d = ops.dim();
    const double kappa = p.kappa;
    const double t_end = scan.duration / kappa;

    Eigen::VectorXd photon_diag(d);
    for (Eigen::Index n = 0; n < ops.field_dim(); ++n) photon_diag(2 * n) = photon_diag(2 * n + 1) = static_cast<double>(n);
    Vec drift_diag(d);
    auto set_detuning = [&](double delta) {
        const Eigen::VectorXd diag = ops.detuning_diagonal(delta, delta);
        drift_diag = -1i * diag.cast<std::complex<double>>() - kappa * photon_diag.cast<std::complex<double>>();
    };
    auto rhs = [&](double, const Vec& psi) -> Vec {
        Vec out = drift_diag.cwiseProduct(psi);
        out.noalias() += std::complex<double>(-1i) * (coupling * psi);
        return out;
    };
    auto jump = [&](const Vec& psi) -> Vec {
        Vec out = Vec::Zero(d);
        for (Eigen::Index n = 1; n < ops.field_dim(); ++n) {
            const double s = std::sqrt(static_cast<double>(n));
            out(2 * n - 2) = s * psi(2 * n);
            out(2 * n - 1) = s * psi(2 * n + 1);
        }
        const double nrm = out.norm();
        if (!(nrm > 0.0)) throw numerical_error("mcwf_trajectory: jump from the vacuum");
        return out / nrm;
    };

    TrajectoryRecord rec;
    rec.seed = seed;
    const int n_out = scan.output_points;
    rec.times.reserve(n_out);
    rec.detuning_schedule.reserve(n_out);
    rec.photon_expect.reserve(n_out);
    rec.field_expect.reserve(n_out);
    auto output_tau = [&](int k) { return k == n_out - 1 ? scan.duration : scan.duration * k / (n_out - 1); };

    SplitMix64 rng(seed);
    double threshold = rng.uniform();
    Vec psi = Vec::Zero(d);
    psi(1) = 1.0;
    double t = 0.0;
    set_detuning(scan.delta_start);
    detail::record_observables(rec, psi, 0.0, scan.delta_start);
    int next_out = 1;

    auto emit_until = [&](const Dopri5Step<Vec>& s, double t_stop) {
        while (next_out < n_out && output_tau(next_out) / kappa <= t_stop) {
            const double tau = output_tau(next_out);
            const double theta = std::clamp((tau / kappa - s.t) / s.h, 0.0, 1.0);
            detail::record_observables(rec, s.at(theta), tau, scan.delta_at(tau));
            ++next_out;
        }
    };

    const double rate_scale = std::max({kappa, std::abs(p.lambda) * (1.0 + p.eta), p.epsilon,
                                        std::abs(scan.delta_start), std::abs(scan.delta_end)});
    double h = 0.01 / rate_scale;
    const double h_min = 1e-14 * std::max(1.0, t_end);
    Vec k1 = rhs(t, psi);
    bool k1_current = true;
    long steps = 0;
    while (next_out < n_out) {
        if (++steps > opt.max_steps)
            throw numerical_error("mcwf_trajectory: step budget exhausted at kappa t = " + sci(t * kappa));
        h = std::min(h, t_end - t);
        if (!scan.is_static()) {
            set_detuning(scan.delta_at(t * kappa));
            k1_current = false;
        }
        if (!k1_current) k1 = rhs(t, psi);
        k1_current = true;
        const auto s = dopri5_step(rhs, t, psi, k1, h, opt.tol);
        const double n0 = psi.squaredNorm(), n1 = s.y1.squaredNorm();
        const bool error_ok = s.error <= 1.0;
        const bool drop_ok = n0 - n1 <= opt.max_norm_drop * n0;
        if (!error_ok || !drop_ok) {
            h *= error_ok ? 0.5 : (std::isfinite(s.error) ? std::max(0.2, 0.9 * std::pow(s.error, -0.2)) : 0.2);
            if (h < h_min)
                throw numerical_error("mcwf_trajectory: step size underflow at kappa t = " + sci(t * kappa) +
                                      " (error " + sci(s.error) + ", norm " + sci(n0) + ")");
            continue;
        }
        if (n1 <= threshold) {
            double lo = 0.0, hi = 1.0;
            while ((hi - lo) * h * kappa > opt.jump_time_tol) {
                const double mid = 0.5 * (lo + hi);
                if (s.at(mid).squaredNorm() > threshold) lo = mid;
                else hi = mid;
            }
            const double t_jump = t + hi * h;
            emit_until(s, t_jump);
            psi = jump(s.at(hi));
            rec.jump_times.push_back(t_jump * kappa);
            threshold = rng.uniform();
            t = t_jump;
            k1_current = false;
            continue;
        }
        emit_until(s, t + h);
        t += h;
        psi = s.y1;
        k1 = s.k7;
        h *= dopri5_factor(s.error);
        if (t >= t_end) {
            while (next_out < n_out) {
                const double tau = output_tau(next_out++);
                detail::record_observables(rec, psi, tau, scan.delta_at(tau));
            }
        }
    }
    return rec;
}

/// Distinct per-trajectory seeds drawn from one base seed.
inline std::vector<std::uint64_t> derive_seeds(std::uint64_t base, std::size_t count) {
    SplitMix64 g(base);
    std::vector<std::uint64_t> out(count);
    for (auto& s : out) s = g.next();
    return out;
}

struct EnsembleResult {
    std::vector<double> times;
    std::vector<double> detuning_schedule;
    std::vector<double> mean_photons;
    std::vector<double> stderr_photons;
    std::vector<std::complex<double>> mean_field;
    std::vector<TrajectoryRecord> records;
};

/// Averages independent trajectories, one per seed, run in parallel.
inline EnsembleResult trajectory_ensemble(const ModelParams& p, const DetuningScan& scan,
                                          const std::vector<std::uint64_t>& seeds, int n_fock,
                                          const TrajectoryOptions& opt = {}, unsigned threads = 0) {
    if (seeds.empty()) throw std::domain_error("trajectory_ensemble: need at least one trajectory");
    EnsembleResult out;
    out.records.resize(seeds.size());
    parallel_for(
        seeds.size(), [&](std::size_t i) { out.records[i] = mcwf_trajectory(p, scan, seeds[i], n_fock, opt); },
        threads);
    const auto& first = out.records.front();
    const std::size_t m = first.times.size();
    const double n = static_cast<double>(seeds.size());
    out.times = first.times;
    out.detuning_schedule = first.detuning_schedule;
    out.mean_photons.assign(m, 0.0);
    out.stderr_photons.assign(m, 0.0);
    out.mean_field.assign(m, 0.0);
    for (const auto& r : out.records)
        for (std::size_t k = 0; k < m; ++k) {
            out.mean_photons[k] += r.photon_expect[k] / n;
            out.mean_field[k] += r.field_expect[k] / n;
        }
    if (seeds.size() > 1) {
        for (std::size_t k = 0; k < m; ++k) {
            double ss = 0.0;
            for (const auto& r : out.records) ss += std::pow(r.photon_expect[k] - out.mean_photons[k], 2);
            out.stderr_photons[k] = std::sqrt(ss / (n - 1.0) / n);
        }
    }
    return out;
}

}  // namespace jcr
