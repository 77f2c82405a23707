//
// torlab/random_matrix.hpp -- GUE sampling, dense Hermitian eigensolver,
// perturbed operators, windowed eigenvectors, overlaps, concentration statistic
//
// The eigensolver contract is the interface: ascending eigenvalues,
// orthonormal columns, residual ||Hv - lambda v|| <= rtol ||H||.  The
// realization is LAPACKE zheevd when available, Eigen's SelfAdjointEigenSolver
// otherwise.  Desk-scale cap: N <= 4096.
//
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "torlab/errors.hpp"
#include "torlab/measure.hpp"
#include "torlab/rng.hpp"

#if defined(TORLAB_HAVE_LAPACKE)
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>
#endif

namespace torlab {

using HermitianMatrix = Eigen::MatrixXcd;

struct EigenSystem {
    Eigen::VectorXd eigenvalues;    // ascending
    Eigen::MatrixXcd eigenvectors;  // orthonormal columns
};

// W = M + M^* with M i.i.d. centered complex Gaussian entries of variance
// 1/(2N); all entries of W then have variance 1/N.
inline HermitianMatrix gue_sample(int n, Rng& rng) {
    if (n < 1) throw InvalidParameter("gue_sample: N >= 1 required");
    const double sigma = 1.0 / (2.0 * std::sqrt(static_cast<double>(n)));
    HermitianMatrix m(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            m(i, j) = Complex(rng.normal() * sigma, rng.normal() * sigma);
    return m + m.adjoint();
}

inline double eig_worst_residual(const HermitianMatrix& h, const EigenSystem& es) {
    const Eigen::MatrixXcd r =
        h * es.eigenvectors - es.eigenvectors * es.eigenvalues.asDiagonal();
    return r.colwise().norm().maxCoeff();
}

inline void validate_eigensystem(const HermitianMatrix& h, const EigenSystem& es, double rtol) {
    const double scale = std::max(es.eigenvalues.cwiseAbs().maxCoeff(), 1e-300);
    const double residual = eig_worst_residual(h, es);
    if (residual > rtol * scale)
        throw EigDidNotConverge("eigensolver residual above tolerance", residual);
    const Eigen::MatrixXcd gram =
        es.eigenvectors.adjoint() * es.eigenvectors - Eigen::MatrixXcd::Identity(h.rows(), h.cols());
    const double ortho = gram.cwiseAbs().maxCoeff();
    if (ortho > rtol) throw EigDidNotConverge("eigenvector orthogonality above tolerance", ortho);
    for (int i = 1; i < es.eigenvalues.size(); ++i)
        if (es.eigenvalues(i) < es.eigenvalues(i - 1))
            throw EigDidNotConverge("eigenvalues not ascending", 0.0);
}

// Full eigensystem of a Hermitian matrix.  The contract (ascending,
// orthonormal, residual <= rtol ||H||) is validated on every call for
// N <= 600 and on request above that.
inline EigenSystem hermitian_eig(const HermitianMatrix& h, double rtol = 1e-9, int validate = -1) {
    EigenSystem es;
#if defined(TORLAB_HAVE_LAPACKE)
    Eigen::MatrixXcd work = h;
    Eigen::VectorXd evals(h.rows());
    const auto n = static_cast<lapack_int>(h.rows());
    const lapack_int info =
        LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'U', n, work.data(), n, evals.data());
    if (info != 0) throw EigDidNotConverge("LAPACKE_zheevd failed", static_cast<double>(info));
    es.eigenvalues = std::move(evals);
    es.eigenvectors = std::move(work);
#else
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success)
        throw EigDidNotConverge("SelfAdjointEigenSolver failed");
    es.eigenvalues = solver.eigenvalues();
    es.eigenvectors = solver.eigenvectors();
#endif
    const bool do_validate = validate == 1 || (validate == -1 && h.rows() <= 600);
    if (do_validate) validate_eigensystem(h, es, rtol);
    return es;
}

// Eigenvalues only (used by norm statistics at larger N).
inline Eigen::VectorXd hermitian_eigenvalues(const HermitianMatrix& h) {
#if defined(TORLAB_HAVE_LAPACKE)
    Eigen::MatrixXcd work = h;
    Eigen::VectorXd evals(h.rows());
    const auto n = static_cast<lapack_int>(h.rows());
    const lapack_int info =
        LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'U', n, work.data(), n, evals.data());
    if (info != 0) throw EigDidNotConverge("LAPACKE_zheevd failed", static_cast<double>(info));
    return evals;
#else
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw EigDidNotConverge("SelfAdjointEigenSolver failed");
    return solver.eigenvalues();
#endif
}

inline double operator_norm(const HermitianMatrix& h) {
    const Eigen::VectorXd ev = hermitian_eigenvalues(h);
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

// A + sqrt(t) W with a fresh GUE draw.
inline HermitianMatrix perturb(const HermitianMatrix& a, double t, Rng& rng) {
    if (t < 0.0) throw InvalidParameter("perturb: t >= 0 required");
    if (t == 0.0) return a;
    return a + std::sqrt(t) * gue_sample(static_cast<int>(a.rows()), rng);
}

struct WindowedEigenpairs {
    std::vector<int> indices;
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXcd eigenvectors;  // columns, l2-norm = norm_scale, random phases
};

// All eigenpairs with eigenvalue in the half-open window [lo, hi), each vector
// scaled to norm_scale and multiplied by an independent uniform phase.
inline WindowedEigenpairs window_eigenpairs(const EigenSystem& es, double lo, double hi,
                                            double norm_scale, Rng& rng) {
    if (!(lo < hi)) throw InvalidParameter("window_eigenpairs: empty interval");
    WindowedEigenpairs out;
    for (int i = 0; i < es.eigenvalues.size(); ++i)
        if (es.eigenvalues(i) >= lo && es.eigenvalues(i) < hi) out.indices.push_back(i);
    if (out.indices.empty()) throw EmptyWindow("window_eigenpairs: no eigenvalues in window");
    out.eigenvalues.resize(out.indices.size());
    out.eigenvectors.resize(es.eigenvectors.rows(), out.indices.size());
    for (std::size_t q = 0; q < out.indices.size(); ++q) {
        out.eigenvalues(q) = es.eigenvalues(out.indices[q]);
        out.eigenvectors.col(q) =
            es.eigenvectors.col(out.indices[q]) * (norm_scale * rng.unit_phase());
    }
    return out;
}

// O(j,k) = <u_{j,0}, u_{k,t}>: writes the perturbed eigenvectors in the
// unperturbed eigenbasis.  Rows and columns are unit vectors.
inline Eigen::MatrixXcd overlap_matrix(const EigenSystem& es0, const EigenSystem& est) {
    if (es0.eigenvectors.rows() != est.eigenvectors.rows())
        throw InvalidParameter("overlap_matrix: dimension mismatch");
    return es0.eigenvectors.adjoint() * est.eigenvectors;
}

struct ConcentrationStatistic {
    double lhs = 0.0;      // (1/|K2|) sum_{k in K2} sum_{j in K, close} |v(k,j)|^2
    int k_size = 0;        // |K|
    int b = 0;             // eigenvalue count of A in the widened window
    int k2_size = 0;       // |K2|
    double bound_ratio = 0.0;  // lhs / (|K|/b)
};

// The eigenvector-concentration statistic: K collects unperturbed indices in
// [E_l + 1/N, E_u - 1/N] whose Stieltjes transform at height 1/N satisfies
// |m| <= (N t)^{-1/2}; K2 the perturbed indices in [E_l, E_u]; b counts
// unperturbed eigenvalues in [E_l - 3 sqrt(t), E_u + 3 sqrt(t)].  Only the
// overlaps of pairs with |lambda_{k,t} - lambda_{j,0}| < 1/N are evaluated.
inline ConcentrationStatistic concentration_statistic(const EigenSystem& es0,
                                                      const EigenSystem& est, double e_l,
                                                      double e_u, double t) {
    const auto n = static_cast<int>(es0.eigenvalues.size());
    const double big_n = static_cast<double>(n);
    if (t > 0.0 && t < std::exp(-std::sqrt(big_n)))
        throw InvalidParameter("concentration_statistic: t >= e^{-sqrt(N)} required");

    ConcentrationStatistic out;
    const double inv_n = 1.0 / big_n;
    std::vector<int> k_set;
    const double m_bound = (t > 0.0) ? 1.0 / std::sqrt(big_n * t)
                                     : std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
        const double lam = es0.eigenvalues(j);
        if (lam < e_l + inv_n || lam > e_u - inv_n) continue;
        Complex m = 0.0;
        for (int k = 0; k < n; ++k) m += 1.0 / Complex(es0.eigenvalues(k) - lam, -inv_n);
        m /= big_n;
        if (std::abs(m) <= m_bound) k_set.push_back(j);
    }
    out.k_size = static_cast<int>(k_set.size());
    for (int k = 0; k < n; ++k) {
        const double lam = es0.eigenvalues(k);
        if (lam >= e_l - 3.0 * std::sqrt(t) && lam <= e_u + 3.0 * std::sqrt(t)) ++out.b;
    }
    std::vector<int> k2_set;
    for (int k = 0; k < n; ++k)
        if (est.eigenvalues(k) >= e_l && est.eigenvalues(k) <= e_u) k2_set.push_back(k);
    out.k2_size = static_cast<int>(k2_set.size());
    if (k2_set.empty()) throw EmptyWindow("concentration_statistic: empty perturbed window");

    double total = 0.0;
    for (int k : k2_set) {
        const double lam_t = est.eigenvalues(k);
        for (int j : k_set) {
            if (std::abs(lam_t - es0.eigenvalues(j)) >= inv_n) continue;
            const Complex v = es0.eigenvectors.col(j).dot(est.eigenvectors.col(k));
            total += std::norm(v);
        }
    }
    out.lhs = total / static_cast<double>(k2_set.size());
    out.bound_ratio = (out.k_size > 0 && out.b > 0)
                          ? out.lhs / (static_cast<double>(out.k_size) / out.b)
                          : 0.0;
    return out;
}

}  // namespace torlab
