//
// torlab/gaussian_wave.hpp -- the Gaussian wave Z_E on a finite window
//
// Covariance M(p,q) = rho_{p-q}(E) / rho_{0,0}(E) on a (2w+1)^2 window of
// centered offsets in row-major order; samples are circularly-symmetric
// complex Gaussian fields Z = L (g1 + i g2)/sqrt(2) with L L^T = M.
//
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "torlab/errors.hpp"
#include "torlab/rng.hpp"
#include "torlab/spectral_density.hpp"

namespace torlab {

struct Window {
    int half_width = 0;

    int side() const { return 2 * half_width + 1; }
    int size() const { return side() * side(); }
    // row-major over dx (rows) then dy (columns), offsets in [-w, w]
    int index(int dx, int dy) const {
        return (dx + half_width) * side() + (dy + half_width);
    }
    std::pair<int, int> offset(int i) const {
        return {i / side() - half_width, i % side() - half_width};
    }
};

struct WindowCovariance {
    double energy = 0.0;
    Window window;
    Eigen::MatrixXd entries;  // real symmetric, unit diagonal
    double tol = 1e-8;
};

using ComplexField = Eigen::VectorXcd;  // indexed by Window::index

inline WindowCovariance wave_covariance(double energy, const Window& window,
                                        double tol = 1e-8) {
    if (!(std::abs(energy) < 4.0) || energy == 0.0)
        throw InvalidParameter("wave_covariance: E must lie in (-4,4) minus {0}");
    WindowCovariance cov;
    cov.energy = energy;
    cov.window = window;
    cov.tol = tol;
    const int reach = 2 * window.half_width;
    const Eigen::MatrixXd table = rho_table(energy, reach, reach);
    const double rho00 = table(0, 0);
    const int m = window.size();
    cov.entries.resize(m, m);
    for (int i = 0; i < m; ++i) {
        const auto [xi, yi] = window.offset(i);
        for (int j = 0; j < m; ++j) {
            const auto [xj, yj] = window.offset(j);
            const int da = std::abs(xi - xj), db = std::abs(yi - yj);
            cov.entries(i, j) = table(da, db) / rho00;
        }
    }
    return cov;
}

// PSD square root with eigenvalue clipping: eigenvalues in [-10 tol, 0) are
// set to zero, anything more negative is an error.
inline Eigen::MatrixXd psd_sqrt(const WindowCovariance& cov) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov.entries);
    if (solver.info() != Eigen::Success)
        throw CovarianceNotPSD("wave covariance eigendecomposition failed");
    Eigen::VectorXd lam = solver.eigenvalues();
    for (int i = 0; i < lam.size(); ++i) {
        if (lam(i) < -10.0 * cov.tol)
            throw CovarianceNotPSD("wave covariance has an eigenvalue below -10 tol");
        if (lam(i) < 0.0) lam(i) = 0.0;
    }
    return solver.eigenvectors() * lam.cwiseSqrt().asDiagonal();
}

inline std::vector<ComplexField> sample_wave(const WindowCovariance& cov, int count, Rng& rng) {
    const Eigen::MatrixXd root = psd_sqrt(cov);
    const int m = cov.window.size();
    std::vector<ComplexField> fields;
    fields.reserve(count);
    const double inv_sqrt2 = 0.7071067811865475244;
    Eigen::VectorXcd g(m);
    for (int s = 0; s < count; ++s) {
        for (int i = 0; i < m; ++i)
            g(i) = Complex(rng.normal(), rng.normal()) * inv_sqrt2;
        fields.emplace_back(root * g);
    }
    return fields;
}

// Mhat(p,q) = (1/count) sum_i Z_i(p) conj(Z_i(q)); invariant under per-field
// global phases.
inline Eigen::MatrixXcd empirical_covariance(const std::vector<ComplexField>& fields) {
    if (fields.empty()) throw InvalidParameter("empirical_covariance: no fields");
    const auto m = fields.front().size();
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(m, m);
    for (const auto& z : fields) acc += z * z.adjoint();
    return acc / static_cast<double>(fields.size());
}

struct CovarianceDistance {
    double max_abs = 0.0;
    double frobenius_rel = 0.0;
};

inline CovarianceDistance covariance_distance(const Eigen::MatrixXcd& mhat,
                                              const Eigen::MatrixXd& m) {
    if (mhat.rows() != m.rows() || mhat.cols() != m.cols())
        throw InvalidParameter("covariance_distance: shape mismatch");
    CovarianceDistance d;
    d.max_abs = (mhat - m.cast<Complex>()).cwiseAbs().maxCoeff();
    d.frobenius_rel = (mhat - m.cast<Complex>()).norm() / m.norm();
    return d;
}

}  // namespace torlab
