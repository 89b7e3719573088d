#pragma once
/// @file eta0.hpp
/// @brief Rotating-wave equation of state for the field magnitude.

#include <jcr/core/critical.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace jcr {

enum class InversionSign { minus = -1, plus = +1 };

/// Field magnitudes |alpha| solving the self-consistent rotating-wave
/// resonator response on the branch whose inversion has the given sign.
///
/// Works in u = (delta0_bar^2 + 4|alpha|^2)^(-1/2), which maps |alpha| in
/// [0, inf) onto (0, 1/|delta0_bar|]; roots are bracketed on a dense grid.
inline std::vector<double> state_equation_eta0(const ModelParams& p, InversionSign sign, int samples = 20000) {
    p.validate();
    if (p.eta != 0.0) throw std::domain_error("state_equation_eta0: requires eta == 0");
    if (p.delta0 == 0.0) throw std::domain_error("state_equation_eta0: requires delta0 != 0");
    const ScaledParams s = scale_params(p);
    const double sgn = static_cast<double>(static_cast<int>(sign)) * (s.delta0_bar > 0.0 ? 1.0 : -1.0);
    const double d02 = s.delta0_bar * s.delta0_bar;
    const double drive = 0.25 * s.eps_bar * s.eps_bar;

    // n (kappa^2 + (delta + sgn u)^2) - eps^2/4 with n = (1/u^2 - d0^2)/4
    auto h = [&](double u) {
        const double n = 0.25 * (1.0 / (u * u) - d02);
        const double w = s.delta_bar + sgn * u;
        return n * (s.kappa_bar * s.kappa_bar + w * w) - drive;
    };
    auto magnitude = [&](double u) { return std::sqrt(std::max(0.0, 0.25 * (1.0 / (u * u) - d02))); };

    std::vector<double> out;
    if (drive == 0.0) {
        out.push_back(0.0);
        return out;
    }
    const double top = 1.0 / std::abs(s.delta0_bar);
    double u0 = top, h0 = h(u0);
    for (int k = samples - 1; k >= 0; --k) {
        // quadratic spacing resolves the large-field end u -> 0
        const double t = static_cast<double>(k) / samples;
        const double u1 = top * t * t;
        if (u1 <= 0.0) break;
        const double h1 = h(u1);
        if (h1 == 0.0) {
            out.push_back(magnitude(u1));
        } else if ((h0 < 0.0) != (h1 < 0.0) && h0 != 0.0) {
            double a = u1, b = u0, ha = h1;
            for (int it = 0; it < 200 && b - a > 1e-16 * b; ++it) {
                const double m = 0.5 * (a + b), hm = h(m);
                if ((hm < 0.0) == (ha < 0.0)) { a = m; ha = hm; } else { b = m; }
            }
            out.push_back(magnitude(0.5 * (a + b)));
        }
        u0 = u1;
        h0 = h1;
    }
    return out;
}

}  // namespace jcr
