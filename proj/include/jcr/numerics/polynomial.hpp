#pragma once
/// @file polynomial.hpp
/// @brief Dense real polynomials (ascending coefficients) and real-root isolation.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <vector>

namespace jcr::poly {

using Coeffs = std::vector<double>;  ///< c[k] multiplies x^k

inline double eval(std::span<const double> c, double x) {
    double v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    return v;
}

/// Sum of |c_k| |x|^k, the natural scale of eval(c, x).
inline double eval_abs(std::span<const double> c, double x) {
    double v = 0.0;
    const double ax = std::abs(x);
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * ax + std::abs(*it);
    return v;
}

inline Coeffs multiply(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) return {};
    Coeffs r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

inline Coeffs add(std::span<const double> a, std::span<const double> b, double b_scale = 1.0) {
    Coeffs r(std::max(a.size(), b.size()), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b_scale * b[i];
    return r;
}

inline Coeffs derivative(std::span<const double> c) {
    if (c.size() <= 1) return {};
    Coeffs d(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = static_cast<double>(k) * c[k];
    return d;
}

/// Drops exactly-zero leading coefficients.
inline Coeffs trimmed(std::span<const double> c) {
    std::size_t n = c.size();
    while (n > 0 && c[n - 1] == 0.0) --n;
    return Coeffs(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(n));
}

namespace detail {

// Parlett-Reinsch diagonal similarity scaling.
inline void balance(Eigen::MatrixXd& m) {
    constexpr double radix = 2.0;
    const Eigen::Index n = m.rows();
    bool done = false;
    while (!done) {
        done = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            double c = 0.0, r = 0.0;
            for (Eigen::Index j = 0; j < n; ++j)
                if (j != i) {
                    c += std::abs(m(j, i));
                    r += std::abs(m(i, j));
                }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix, f = 1.0;
            const double s = c + r;
            while (c < g) { f *= radix; c *= radix * radix; }
            g = r * radix;
            while (c > g) { f /= radix; c /= radix * radix; }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                m.row(i) /= f;
                m.col(i) *= f;
            }
        }
    }
}

}  // namespace detail

/// All complex roots via eigenvalues of the balanced companion matrix.
inline std::vector<std::complex<double>> companion_roots(std::span<const double> coeffs) {
    const Coeffs c = trimmed(coeffs);
    if (c.size() <= 1) return {};
    const auto deg = static_cast<Eigen::Index>(c.size() - 1);
    if (deg == 1) return {{-c[0] / c[1], 0.0}};
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(deg, deg);
    for (Eigen::Index k = 0; k < deg; ++k) m(0, k) = -c[static_cast<std::size_t>(deg - 1 - k)] / c.back();
    for (Eigen::Index k = 1; k < deg; ++k) m(k, k - 1) = 1.0;
    detail::balance(m);
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    std::vector<std::complex<double>> roots;
    roots.reserve(static_cast<std::size_t>(deg));
    for (Eigen::Index k = 0; k < deg; ++k) roots.push_back(es.eigenvalues()(k));
    return roots;
}

/// Value and slope of a function that is a polynomial written in factored form.
struct Sample {
    double value = 0.0;
    double slope = 0.0;
};

/// Newton iteration on the real line; returns the last iterate.
template <class F>
double newton_polish(F&& f, double x, int max_iter = 60) {
    for (int it = 0; it < max_iter; ++it) {
        const Sample s = f(x);
        if (s.value == 0.0 || s.slope == 0.0 || !std::isfinite(s.slope)) break;
        const double step = s.value / s.slope;
        x -= step;
        if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) break;
    }
    return x;
}

/// Root of f in [a, b] given a sign change, Newton steps safeguarded by bisection.
template <class F>
double bracketed_root(F&& f, double a, double b) {
    double fa = f(a).value;
    if (fa == 0.0) return a;
    if (f(b).value == 0.0) return b;
    double x = 0.5 * (a + b);
    for (int it = 0; it < 200; ++it) {
        const Sample s = f(x);
        if (s.value == 0.0) return x;
        if ((s.value < 0.0) == (fa < 0.0)) { a = x; fa = s.value; } else { b = x; }
        double next = s.slope != 0.0 ? x - s.value / s.slope : 0.5 * (a + b);
        if (!(next > a && next < b)) next = 0.5 * (a + b);
        if (std::abs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x)) ||
            b - a <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x)))
            return next;
        x = next;
    }
    return x;
}

struct RootOptions {
    double accept_imag = 1e-8;   ///< |Im| <= accept_imag * max(1, |Re|) is taken as real
    double candidate_imag = 1e-3; ///< looser gate for candidates tested by real Newton
    double edge_slack = 1e-10;   ///< roots this far outside [lo, hi] are clamped in
};

/// Real roots of the polynomial `coeffs` in [lo, hi].
///
/// Companion eigenvalues are polished with Newton on `f`, which must evaluate
/// the same polynomial (usually in unexpanded form). A monotone-interval scan
/// between critical points then recovers any root lost to ill-conditioning.
template <class F>
std::vector<double> real_roots(std::span<const double> coeffs, double lo, double hi, F&& f,
                               const RootOptions& opt = {}) {
    const Coeffs c = trimmed(coeffs);
    std::vector<double> roots;
    if (c.size() <= 1) return roots;

    auto in_range = [&](double x) { return x >= lo - opt.edge_slack && x <= hi + opt.edge_slack; };
    auto clamp = [&](double x) { return std::clamp(x, lo, hi); };
    auto tiny = [&](double x) {
        const double v = std::abs(f(x).value);
        return v <= 1e3 * std::numeric_limits<double>::epsilon() * eval_abs(c, x);
    };

    for (const auto& z : companion_roots(c)) {
        const double re = z.real(), im = std::abs(z.imag());
        const double mag = std::max(1.0, std::abs(re));
        if (im > opt.candidate_imag * mag) continue;
        const double x = newton_polish(f, re);
        if (!std::isfinite(x) || !in_range(x)) continue;
        if (im > opt.accept_imag * mag && (!tiny(x) || std::abs(x - re) > 10.0 * im + 1e-6 * mag)) continue;
        roots.push_back(clamp(x));
    }

    // Monotone pieces between critical points hold at most one root each.
    std::vector<double> knots{lo, hi};
    const Coeffs dc = derivative(c);
    const Coeffs ddc = derivative(dc);
    auto df = [&](double x) { return Sample{eval(dc, x), eval(ddc, x)}; };
    for (const auto& z : companion_roots(dc)) {
        if (std::abs(z.imag()) > opt.candidate_imag * std::max(1.0, std::abs(z.real()))) continue;
        const double x = newton_polish(df, z.real());
        if (std::isfinite(x) && x > lo && x < hi) knots.push_back(x);
    }
    std::sort(knots.begin(), knots.end());
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
        const double a = knots[k], b = knots[k + 1];
        if (!(b > a)) continue;
        const double fa = f(a).value, fb = f(b).value;
        if (fa == 0.0) roots.push_back(a);
        if (fb == 0.0) roots.push_back(b);
        if (fa == 0.0 || fb == 0.0 || (fa < 0.0) == (fb < 0.0)) continue;
        const bool covered = std::any_of(roots.begin(), roots.end(), [&](double r) { return r >= a && r <= b; });
        if (!covered) roots.push_back(bracketed_root(f, a, b));
    }

    std::sort(roots.begin(), roots.end());
    std::vector<double> unique;
    for (double r : roots)
        if (unique.empty() || std::abs(r - unique.back()) > 1e-13 * std::max(1.0, std::abs(r))) unique.push_back(r);
    return unique;
}

/// Polynomial-only overload: polishes on the expanded coefficients.
inline std::vector<double> real_roots(std::span<const double> coeffs, double lo, double hi,
                                      const RootOptions& opt = {}) {
    const Coeffs c(coeffs.begin(), coeffs.end());
    const Coeffs d = derivative(c);
    return real_roots(c, lo, hi, [&](double x) { return Sample{eval(c, x), eval(d, x)}; }, opt);
}

/// Cauchy bound on the magnitude of every root.
inline double root_bound(std::span<const double> coeffs) {
    const Coeffs c = trimmed(coeffs);
    if (c.size() <= 1) return 0.0;
    double m = 0.0;
    for (std::size_t k = 0; k + 1 < c.size(); ++k) m = std::max(m, std::abs(c[k] / c.back()));
    return 1.0 + m;
}

}  // namespace jcr::poly
