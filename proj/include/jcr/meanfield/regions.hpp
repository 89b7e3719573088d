#pragma once
/// @file regions.hpp
/// @brief Region labels, the eta = 1 analytic boundary, and phase-diagram rasters.

#include <jcr/meanfield/steady_state.hpp>
#include <jcr/numerics/parallel.hpp>

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace jcr {

struct RegionLabel {
    int n_solutions = 0;
    int n_stable = 0;
    std::string tag;  ///< "R" + n_solutions, or "degenerate"

    friend bool operator==(const RegionLabel&, const RegionLabel&) = default;
};

inline RegionLabel label_of(const SteadyStateSet& set) {
    RegionLabel r;
    r.n_solutions = static_cast<int>(set.branches.size());
    r.n_stable = set.n_stable();
    r.tag = "R" + std::to_string(r.n_solutions);
    return r;
}

inline RegionLabel classify_region(const ModelParams& p) {
    try {
        return label_of(solve_steady_states(p));
    } catch (const degenerate_error&) {
        return {0, 0, "degenerate"};
    }
}

/// Boundary drive eps_bar(delta_bar) of the four-solution region at eta = 1,
/// one entry per scaled detuning. With tie_delta0 the two detunings are equal,
/// otherwise delta0_bar is taken from p.
inline std::vector<std::optional<double>> boundary_eta1(const ModelParams& p, const std::vector<double>& delta_bar_grid,
                                                        bool tie_delta0 = true) {
    if (p.eta != 1.0) throw std::domain_error("boundary_eta1: requires eta == 1");
    const double two_ec = 2.0 * epsilon_crit(p.lambda, 1.0);
    const double kb = p.kappa / two_ec, d0b = p.delta0 / two_ec;
    std::vector<std::optional<double>> out;
    out.reserve(delta_bar_grid.size());
    for (double db : delta_bar_grid) {
        double bracket;
        if (tie_delta0) bracket = kb * kb + db * db;
        else if (db == 0.0) bracket = d0b == 0.0 ? 0.0 : INFINITY;
        else bracket = std::abs(d0b / db) * (kb * kb + db * db);
        if (bracket <= 1.0) out.emplace_back(std::pow(1.0 - std::cbrt(bracket * bracket), 1.5));
        else out.emplace_back(std::nullopt);
    }
    return out;
}

enum class Axis { eta, delta_bar, eps_bar, lambda_over_delta, delta_over_lambda };

inline std::string_view to_string(Axis a) {
    switch (a) {
        case Axis::eta: return "eta";
        case Axis::delta_bar: return "delta_bar";
        case Axis::eps_bar: return "eps_bar";
        case Axis::lambda_over_delta: return "lambda_over_delta";
        default: return "delta_over_lambda";
    }
}

inline Axis axis_from_string(std::string_view s) {
    for (Axis a : {Axis::eta, Axis::delta_bar, Axis::eps_bar, Axis::lambda_over_delta, Axis::delta_over_lambda})
        if (to_string(a) == s) return a;
    throw std::invalid_argument("unknown axis: " + std::string(s));
}

struct AxisValue {
    Axis axis;
    double value;
};

/// Applies axis values to base in a fixed order (eta, coupling, detuning, drive).
/// The scaled drive and kappa/lambda of base are preserved unless set; the
/// two-state detuning follows the cavity detuning when tie_delta0 is set.
inline ModelParams apply_axes(const ModelParams& base, std::span<const AxisValue> values, bool tie_delta0 = true) {
    ModelParams p = base;
    const double eps_bar = base.epsilon / epsilon_crit(base.lambda, base.eta);
    const double kappa_per_lambda = base.kappa / base.lambda;
    auto find = [&](Axis a) -> std::optional<double> {
        for (const auto& v : values)
            if (v.axis == a) return v.value;
        return std::nullopt;
    };
    if (auto v = find(Axis::eta)) p.eta = *v;
    if (auto v = find(Axis::lambda_over_delta)) {
        p.lambda = *v * std::abs(p.delta);
        p.kappa = kappa_per_lambda * p.lambda;
    }
    if (auto v = find(Axis::delta_over_lambda)) {
        p.delta = *v * p.lambda;
        if (tie_delta0) p.delta0 = p.delta;
    }
    if (auto v = find(Axis::delta_bar)) {
        p.delta = *v * 2.0 * epsilon_crit(p.lambda, p.eta);
        if (tie_delta0) p.delta0 = p.delta;
    }
    p.epsilon = find(Axis::eps_bar).value_or(eps_bar) * epsilon_crit(p.lambda, p.eta);
    return p;
}

struct PhaseRaster {
    Axis x_axis = Axis::delta_bar, y_axis = Axis::eps_bar;
    std::vector<double> xs, ys;
    std::vector<RegionLabel> labels;  ///< row-major, labels[iy * xs.size() + ix]

    const RegionLabel& at(std::size_t ix, std::size_t iy) const { return labels[iy * xs.size() + ix]; }
};

inline PhaseRaster phase_diagram(const ModelParams& base, Axis x_axis, const std::vector<double>& xs, Axis y_axis,
                                 const std::vector<double>& ys, unsigned threads = 0, bool tie_delta0 = true) {
    if (x_axis == y_axis) throw std::invalid_argument("phase_diagram: axes must differ");
    for (double v : xs)
        if (!std::isfinite(v)) throw std::domain_error("phase_diagram: non-finite grid value");
    for (double v : ys)
        if (!std::isfinite(v)) throw std::domain_error("phase_diagram: non-finite grid value");
    PhaseRaster r{x_axis, y_axis, xs, ys, std::vector<RegionLabel>(xs.size() * ys.size())};
    parallel_for(
        r.labels.size(),
        [&](std::size_t k) {
            const std::array<AxisValue, 2> v{AxisValue{x_axis, xs[k % xs.size()]}, AxisValue{y_axis, ys[k / xs.size()]}};
            r.labels[k] = classify_region(apply_axes(base, v, tie_delta0));
        },
        threads);
    return r;
}

}  // namespace jcr
