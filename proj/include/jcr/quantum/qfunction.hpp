#pragma once
/// @file qfunction.hpp
/// @brief Husimi Q function of the reduced field state.

#include <jcr/quantum/density.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace jcr {

/// Square grid centred on the origin. half_width <= 0 selects
/// 1.5 sqrt(n_max) + 3, with n_max the highest Fock level holding weight.
struct QGridSpec {
    double half_width = 0.0;
    int points = 121;
    double occupied_level = 1e-10;  ///< weight that counts as occupied for the automatic width
    double coverage = 1e-5;         ///< boundary/peak ratio that triggers the warning
};

struct QPeak {
    std::complex<double> alpha;
    double value = 0.0;
};

struct QGrid {
    std::vector<double> alpha_re, alpha_im;
    Eigen::MatrixXd q_values;  ///< rows follow alpha_im, columns alpha_re
    bool coverage_warning = false;

    double cell_area() const {
        return (alpha_re[1] - alpha_re[0]) * (alpha_im[1] - alpha_im[0]);
    }
    double normalization() const { return q_values.sum() * cell_area(); }

    /// Strict local maxima over the 8-neighbourhood above rel_floor times the global maximum.
    std::vector<QPeak> local_maxima(double rel_floor = 1e-3) const {
        std::vector<QPeak> out;
        const double floor = rel_floor * q_values.maxCoeff();
        for (Eigen::Index i = 1; i + 1 < q_values.rows(); ++i)
            for (Eigen::Index j = 1; j + 1 < q_values.cols(); ++j) {
                const double v = q_values(i, j);
                if (v < floor) continue;
                bool peak = true;
                for (int di = -1; di <= 1 && peak; ++di)
                    for (int dj = -1; dj <= 1; ++dj)
                        if ((di || dj) && q_values(i + di, j + dj) >= v) { peak = false; break; }
                if (peak) out.push_back({{alpha_re[j], alpha_im[i]}, v});
            }
        std::sort(out.begin(), out.end(), [](const QPeak& a, const QPeak& b) { return a.value > b.value; });
        return out;
    }
};

/// Row of conj(<n|alpha>), n = 0..dim-1, so that <alpha|v> = row . v.
inline Eigen::RowVectorXcd coherent_bra(std::complex<double> alpha, Eigen::Index dim) {
    Eigen::RowVectorXcd c = Eigen::RowVectorXcd::Zero(dim);
    const double r = std::abs(alpha), phi = std::arg(alpha);
    if (r == 0.0) {
        c(0) = 1.0;
        return c;
    }
    const double log_r = std::log(r), base = -0.5 * r * r;
    for (Eigen::Index n = 0; n < dim; ++n) {
        const double nd = static_cast<double>(n);
        c(n) = std::polar(std::exp(base + nd * log_r - 0.5 * std::lgamma(nd + 1.0)), -nd * phi);
    }
    return c;
}

/// Q(alpha) = <alpha| rho_field |alpha> / pi on a square grid.
inline QGrid q_function(const DensityMatrix& rho, const QGridSpec& spec = {}) {
    if (spec.points < 3) throw std::domain_error("q_function: need at least three points per axis");
    const Eigen::MatrixXcd field = rho.field_state();
    const Eigen::MatrixXcd herm = 0.5 * (field + field.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(herm);
    const Eigen::VectorXd w = eig.eigenvalues();
    const double w_max = w.maxCoeff();

    double half = spec.half_width;
    if (half <= 0.0) {
        const Eigen::VectorXd pn = herm.diagonal().real();
        Eigen::Index n_max = 0;
        for (Eigen::Index n = 0; n < pn.size(); ++n)
            if (pn(n) > spec.occupied_level) n_max = n;
        half = 1.5 * std::sqrt(static_cast<double>(n_max)) + 3.0;
    }
    QGrid g;
    g.alpha_re.resize(spec.points);
    g.alpha_im.resize(spec.points);
    for (int k = 0; k < spec.points; ++k) g.alpha_re[k] = g.alpha_im[k] = -half + 2.0 * half * k / (spec.points - 1);
    std::vector<Eigen::Index> kept;
    for (Eigen::Index c = 0; c < w.size(); ++c)
        if (w(c) > 1e-14 * w_max) kept.push_back(c);
    Eigen::MatrixXcd vecs(herm.rows(), static_cast<Eigen::Index>(kept.size()));
    Eigen::VectorXd weights(vecs.cols());
    for (Eigen::Index k = 0; k < vecs.cols(); ++k) {
        vecs.col(k) = eig.eigenvectors().col(kept[k]);
        weights(k) = w(kept[k]);
    }
    g.q_values.resize(spec.points, spec.points);
    Eigen::MatrixXcd bras(spec.points, herm.rows());
    for (int i = 0; i < spec.points; ++i) {
        for (int j = 0; j < spec.points; ++j) bras.row(j) = coherent_bra({g.alpha_re[j], g.alpha_im[i]}, herm.rows());
        const Eigen::MatrixXd amp2 = (bras * vecs).cwiseAbs2();
        g.q_values.row(i) = (amp2 * weights).transpose();
    }
    g.q_values /= std::numbers::pi;
    const double peak = g.q_values.maxCoeff();
    const Eigen::Index last = spec.points - 1;
    const double edge = std::max({g.q_values.row(0).maxCoeff(), g.q_values.row(last).maxCoeff(),
                                  g.q_values.col(0).maxCoeff(), g.q_values.col(last).maxCoeff()});
    g.coverage_warning = edge > spec.coverage * peak;
    return g;
}

}  // namespace jcr
