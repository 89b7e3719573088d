#pragma once
/// @file steady_state.hpp
/// @brief Mean-field steady states: regime dispatch, root finding, and field reconstruction.

#include <jcr/core/critical.hpp>
#include <jcr/meanfield/branch.hpp>
#include <jcr/meanfield/equation_of_state.hpp>
#include <jcr/meanfield/stability.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

namespace jcr {

enum class Regime { zero_detuning0, zero_drive, rotating_wave, quantum_rabi, generic };

inline std::string_view to_string(Regime r) {
    switch (r) {
        case Regime::zero_detuning0: return "delta0=0";
        case Regime::zero_drive: return "epsilon=0";
        case Regime::rotating_wave: return "eta=0";
        case Regime::quantum_rabi: return "eta=1";
        default: return "generic";
    }
}

inline bool is_zero_detuning0(const ModelParams& p) {
    return std::abs(p.delta0) < 1e-12 * std::max({std::abs(p.delta), p.kappa, p.lambda});
}

inline Regime dispatch_regime(const ModelParams& p) {
    if (is_zero_detuning0(p)) return Regime::zero_detuning0;
    if (p.epsilon / epsilon_crit(p.lambda, p.eta) < 1e-14) return Regime::zero_drive;
    if (1.0 - p.eta < 1e-12) return Regime::quantum_rabi;
    if (p.eta == 0.0) return Regime::rotating_wave;
    return Regime::generic;
}

/// Governing polynomial for the driven regimes with delta0 != 0.
inline EquationOfState governing_equation(const ModelParams& p) {
    const ScaledParams s = scale_params(p);
    switch (dispatch_regime(p)) {
        case Regime::quantum_rabi: return quartic_eta1(s);
        case Regime::rotating_wave: return quartic_eta0(s);
        default: return regular_sextic(s, p.eta);
    }
}

struct SolveOptions {
    double merge_tol = 1e-8;
    bool classify = true;  ///< fill MeanFieldBranch::stability
};

namespace detail {

inline double steady_residual(const MeanFieldState& s, const ModelParams& p) {
    const MeanFieldState d = maxwell_bloch_rhs(s, p);
    const double scale = std::max({p.kappa, std::abs(p.delta), std::abs(p.delta0), p.lambda});
    return std::max({std::abs(d.alpha), std::abs(d.beta), std::abs(d.zeta)}) / scale;
}

inline MeanFieldBranch make_branch(double zeta, cplx alpha, cplx beta) {
    MeanFieldBranch b;
    b.zeta = zeta;
    b.alpha = alpha;
    b.beta = beta;
    b.residual_conservation = std::abs(zeta * zeta + std::norm(beta) - 1.0);
    return b;
}

// Representative of a Z2 pair: alpha_x > 0, or alpha_x == 0 and alpha_y >= 0.
inline void canonical_z2(MeanFieldBranch& b) {
    if (b.alpha.real() < 0.0 || (b.alpha.real() == 0.0 && b.alpha.imag() < 0.0)) {
        b.alpha = -b.alpha;
        b.beta = -b.beta;
    }
    b.z2_partner = true;
}

inline bool same_branch(const MeanFieldBranch& a, const MeanFieldBranch& b, double tol) {
    return std::abs(a.zeta - b.zeta) <= tol && std::abs(a.alpha - b.alpha) <= tol * std::max(1.0, std::abs(a.alpha));
}

inline void finalize(SteadyStateSet& set, const SolveOptions& opt) {
    auto& br = set.branches;
    std::sort(br.begin(), br.end(), [](const MeanFieldBranch& a, const MeanFieldBranch& b) {
        if (a.zeta != b.zeta) return a.zeta < b.zeta;
        return a.phase() < b.phase();
    });
    std::vector<MeanFieldBranch> merged;
    for (const auto& b : br) {
        auto it = std::find_if(merged.begin(), merged.end(),
                               [&](const MeanFieldBranch& m) { return same_branch(m, b, opt.merge_tol); });
        if (it == merged.end()) {
            merged.push_back(b);
        } else {
            it->multiplicity += b.multiplicity;
            it->degenerate = it->degenerate || b.degenerate;
            set.degeneracies.push_back("coincident roots merged at zeta=" + std::to_string(b.zeta));
        }
    }
    br = std::move(merged);
    if (opt.classify)
        for (auto& b : br) b.stability = stability(b, set.params);
}

}  // namespace detail

/// Field and polarization at a driven root zeta (epsilon > 0, delta0 != 0).
inline MeanFieldBranch reconstruct_driven(double zeta, const ModelParams& p) {
    const ScaledParams s = scale_params(p);
    const double r = (1.0 - p.eta) / (1.0 + p.eta);
    const double a = s.delta_bar + r * r * zeta / s.delta0_bar;
    const double b = s.delta_bar + zeta / s.delta0_bar;
    const double k = s.kappa_bar, half = 0.5 * s.eps_bar;
    const double det = k * k + a * b;
    bool degenerate = false;
    double ax, ay;
    if (std::abs(det) > 1e-14 * (k * k + std::abs(a * b))) {
        ax = -half * a / det;
        ay = -half * k / det;
    } else {
        Eigen::Matrix2d m;
        m << k, -a, b, k;
        const Eigen::Vector2d x = m.completeOrthogonalDecomposition().solve(Eigen::Vector2d(0.0, -half));
        ax = x(0);
        ay = x(1);
        degenerate = true;
    }
    const cplx beta{2.0 * zeta * ax / s.delta0_bar, 2.0 * r * zeta * ay / s.delta0_bar};
    MeanFieldBranch br = detail::make_branch(zeta, {ax, ay}, beta);
    br.degenerate = degenerate;
    return br;
}

/// Nontrivial undriven steady state at a root of P; empty if no real field exists.
inline std::optional<MeanFieldBranch> reconstruct_undriven(double zeta, const ModelParams& p) {
    const double l2 = p.lambda * p.lambda;
    const double dd0 = p.delta * p.delta0;
    const double cm = dd0 + l2 * (1.0 - p.eta) * (1.0 - p.eta) * zeta;
    const double cp = dd0 + l2 * (1.0 + p.eta) * (1.0 + p.eta) * zeta;
    if (zeta == 0.0 || p.delta == 0.0) return std::nullopt;
    const double n = -(p.delta0 / (4.0 * p.delta)) * (1.0 - zeta * zeta) / zeta;
    if (!(n >= -1e-14) || !std::isfinite(n)) return std::nullopt;
    const double intensity = std::max(n, 0.0);

    double ax, ay;
    bool gauge = false;
    if (p.eta > 0.0) {
        const double ax2 = std::max(0.0, -intensity * cm / (4.0 * l2 * p.eta * zeta));
        const double ay2 = std::max(0.0, intensity * cp / (4.0 * l2 * p.eta * zeta));
        ax = std::sqrt(ax2);
        // pick the sign of alpha_y that best satisfies the homogeneous rows
        const double k0 = p.delta0 * p.kappa;
        auto row_error = [&](double y) { return std::abs(k0 * ax - cm * y) + std::abs(cp * ax + k0 * y); };
        const double y = std::sqrt(ay2);
        ay = row_error(y) <= row_error(-y) ? y : -y;
    } else {
        ax = std::sqrt(intensity);
        ay = 0.0;
        gauge = true;
    }
    const cplx beta{2.0 * p.lambda * (1.0 + p.eta) * zeta * ax / p.delta0,
                    2.0 * p.lambda * (1.0 - p.eta) * zeta * ay / p.delta0};
    MeanFieldBranch br = detail::make_branch(zeta, {ax, ay}, beta);
    br.multiplicity = 2;
    br.degenerate = gauge;
    if (intensity > 0.0) detail::canonical_z2(br);
    return br;
}

/// Real roots of P inside [-1, 1] (the undriven nontrivial inversions).
inline std::vector<double> undriven_inversions(const ModelParams& p) {
    const double m = 1.0 - p.eta;
    std::vector<double> roots;
    if (m < 1e-12) {
        if (p.delta != 0.0)
            roots.push_back(-(p.delta0 / p.delta) * (p.kappa * p.kappa + p.delta * p.delta) / (4.0 * p.lambda * p.lambda));
    } else {
        const double s = 1.0 - p.eta * p.eta;
        double loss = 0.0;
        if (p.kappa > 0.0) {
            if (p.delta == 0.0) return roots;
            loss = s * s * p.kappa * p.kappa / (4.0 * p.delta * p.delta);
        }
        const double disc = p.eta * p.eta - loss;
        if (disc < -1e-14 * p.eta * p.eta) return roots;
        const double root = std::sqrt(std::max(disc, 0.0));
        const double pre = -p.delta * p.delta0 / (p.lambda * p.lambda * s * s);
        // 1 + eta^2 - 2 root == (1 - eta)^2 + 2 (eta - root), without the cancellation
        const double near = m * m + (loss > 0.0 ? 2.0 * loss / (p.eta + root) : 0.0);
        roots.push_back(pre * near);
        roots.push_back(pre * (1.0 + p.eta * p.eta + 2.0 * root));
    }
    std::vector<double> inside;
    for (double z : roots)
        if (std::abs(z) <= 1.0 + 1e-10) inside.push_back(std::clamp(z, -1.0, 1.0));
    std::sort(inside.begin(), inside.end());
    inside.erase(std::unique(inside.begin(), inside.end()), inside.end());
    return inside;
}

/// Phases phi of beta = e^{i phi} on the zeta = 0 class at delta0 = 0, in (-pi, pi].
inline std::vector<double> equatorial_phases(const ModelParams& p) {
    const double ec = epsilon_crit(p.lambda, p.eta);
    const double a = p.kappa * (1.0 - p.eta), e = p.epsilon, d = p.delta;
    const double cr = 2.0 * p.lambda * p.eta;
    auto g = [&](double phi) {
        const double c = std::cos(phi), s = std::sin(phi);
        return poly::Sample{a * (e * c + ec) - d * s * (e * (1.0 + p.eta) + cr * c),
                            -a * e * s - d * (c * (e * (1.0 + p.eta) + cr * c) - cr * s * s)};
    };
    // tan(phi/2) quartic, and its reversal in cot(phi/2) for |phi| > pi/2
    const poly::Coeffs t = {a * (e + ec), -2.0 * d * (e * (1.0 + p.eta) + cr), 2.0 * a * ec,
                            -2.0 * d * (e * (1.0 + p.eta) - cr), a * (ec - e)};
    const poly::Coeffs u(t.rbegin(), t.rend());
    double cmax = 0.0;
    for (double c : t) cmax = std::max(cmax, std::abs(c));
    if (cmax == 0.0) throw degenerate_error("equatorial_phases: every phase is a steady state");

    std::vector<double> phis;
    for (double x : poly::real_roots(t, -1.0, 1.0)) phis.push_back(2.0 * std::atan(x));
    for (double x : poly::real_roots(u, -1.0, 1.0)) phis.push_back(2.0 * std::atan2(1.0, x));
    for (double& phi : phis) {
        phi = poly::newton_polish(g, phi);
        phi = std::remainder(phi, 2.0 * std::numbers::pi);
        if (phi <= -std::numbers::pi) phi += 2.0 * std::numbers::pi;
    }
    std::sort(phis.begin(), phis.end());
    std::vector<double> unique;
    for (double phi : phis)
        if (unique.empty() || std::abs(phi - unique.back()) > 1e-9) unique.push_back(phi);
    if (unique.size() > 1 && std::abs(unique.front() + std::numbers::pi) + std::abs(unique.back() - std::numbers::pi) < 1e-9)
        unique.erase(unique.begin());
    return unique;
}

/// Field on the equatorial class for phase phi.
inline cplx equatorial_field(double phi, const ModelParams& p) {
    const cplx i{0.0, 1.0};
    const cplx den{p.kappa, p.delta};
    if (std::abs(den) == 0.0) throw degenerate_error("equatorial_field: kappa == delta == 0");
    const cplx b = std::polar(1.0, phi);
    return -i * (p.epsilon + 0.5 * p.lambda * (b + p.eta * std::conj(b))) / den;
}

struct PhaseSolution {
    double phi = 0.0;
    cplx alpha{0.0, 0.0};
};

/// Equatorial phases at delta0 = 0 above the critical drive; empty below it.
inline std::vector<PhaseSolution> solve_above_critical_phase(const ModelParams& p) {
    p.validate();
    if (!is_zero_detuning0(p)) throw std::domain_error("solve_above_critical_phase: requires delta0 == 0");
    const double ebar = p.epsilon / epsilon_crit(p.lambda, p.eta);
    if (ebar < 1.0 - 1e-14) return {};
    std::vector<PhaseSolution> out;
    for (double phi : equatorial_phases(p)) out.push_back({phi, equatorial_field(phi, p)});
    return out;
}

namespace detail {

inline void solve_zero_detuning0(SteadyStateSet& set) {
    const ModelParams& p = set.params;
    if (1.0 - p.eta < 1e-12)
        throw degenerate_error("solve_steady_states: eta == 1 with delta0 == 0 has a continuum of steady states");
    const double ebar = p.epsilon / epsilon_crit(p.lambda, p.eta);
    if (ebar <= 1.0 + 1e-12) {
        const double z = std::sqrt(std::max(0.0, 1.0 - ebar * ebar));
        for (double zeta : {-z, z}) {
            MeanFieldBranch b = make_branch(zeta, {0.0, 0.0}, {-ebar, 0.0});
            set.branches.push_back(b);
        }
    }
    const bool undriven = ebar < 1e-14;
    for (double phi : equatorial_phases(p)) {
        MeanFieldBranch b = make_branch(0.0, equatorial_field(phi, p), std::polar(1.0, phi));
        if (undriven) {
            canonical_z2(b);
            const bool seen = std::any_of(set.branches.begin(), set.branches.end(),
                                          [&](const MeanFieldBranch& o) { return same_branch(o, b, 1e-8); });
            if (seen) continue;
        }
        set.branches.push_back(b);
    }
}

inline void solve_zero_drive(SteadyStateSet& set) {
    const ModelParams& p = set.params;
    set.branches.push_back(make_branch(-1.0, {0.0, 0.0}, {0.0, 0.0}));
    set.branches.push_back(make_branch(1.0, {0.0, 0.0}, {0.0, 0.0}));
    for (double z : undriven_inversions(p)) {
        if (auto b = reconstruct_undriven(z, p)) {
            set.branches.push_back(*b);
            set.degeneracies.push_back("double root of P at zeta=" + std::to_string(z));
            if (b->degenerate) set.degeneracies.push_back("free field phase at zeta=" + std::to_string(z));
        } else {
            set.degeneracies.push_back("root of P without real field at zeta=" + std::to_string(z));
        }
    }
}

inline void solve_driven(SteadyStateSet& set) {
    const ModelParams& p = set.params;
    const ScaledParams s = scale_params(p);
    if (1.0 - p.eta < 1e-12 && s.delta_bar == 0.0 && s.kappa_bar == 0.0)
        throw degenerate_error("solve_steady_states: eta == 1, delta == kappa == 0 leaves zeta undetermined");
    const EquationOfState eos = governing_equation(p);
    const poly::Coeffs c = eos.coefficients();
    const auto roots = poly::real_roots(c, -1.0, 1.0, [&](double z) { return eos.sample(z); });
    for (double z : roots) {
        MeanFieldBranch b = reconstruct_driven(z, p);
        b.residual_poly = eos.residual(z);
        if (!std::isfinite(std::abs(b.alpha)) || b.residual_conservation > 1e-6) {
            set.degeneracies.push_back("root without consistent field at zeta=" + std::to_string(z));
            continue;
        }
        if (b.degenerate) set.degeneracies.push_back("singular field system at zeta=" + std::to_string(z));
        set.branches.push_back(b);
    }
    if (set.branches.size() < 2 && p.kappa > 0.0)
        throw numerical_error("solve_steady_states: fewer than two real roots found for a driven system");
}

}  // namespace detail

inline SteadyStateSet solve_steady_states(const ModelParams& p, const SolveOptions& opt = {}) {
    p.validate();
    SteadyStateSet set;
    set.params = p;
    switch (dispatch_regime(p)) {
        case Regime::zero_detuning0: detail::solve_zero_detuning0(set); break;
        case Regime::zero_drive: detail::solve_zero_drive(set); break;
        default: detail::solve_driven(set); break;
    }
    detail::finalize(set, opt);
    return set;
}

/// Largest violation of the five steady-state equations, relative to the largest rate.
inline double steady_state_residual(const MeanFieldBranch& b, const ModelParams& p) {
    return detail::steady_residual(b.state(), p);
}

}  // namespace jcr
