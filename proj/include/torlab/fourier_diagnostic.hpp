//
// torlab/fourier_diagnostic.hpp -- local Fourier transform of window fields
//
// uhat(l,s,t) = (1/l) sum_{x,y=0}^{l-1} exp(-2 pi i (x s + y t)/l) u(x,y).
// With this normalization Parseval reads sum |uhat|^2 = sum |u|^2 exactly.
// Product-phase eigenvectors show a coefficient of order l; Gaussian waves
// stay at order sqrt(l) (their variance obeys Var(l,s,t) <= c l).
//
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <vector>

#include "torlab/errors.hpp"
#include "torlab/gaussian_wave.hpp"
#include "torlab/rng.hpp"
#include "torlab/spectral_density.hpp"

namespace torlab {

struct FourierTable {
    int ell = 0;
    Eigen::MatrixXcd coefficients;  // (s,t) indexed, s row, t column
};

namespace detail {

inline void fft_pow2(std::vector<Complex>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle = -2.0 * M_PI / static_cast<double>(len);
        const Complex root(std::cos(angle), std::sin(angle));
        for (std::size_t i = 0; i < n; i += len) {
            Complex w = 1.0;
            for (std::size_t j = 0; j < len / 2; ++j) {
                const Complex u = a[i + j];
                const Complex v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= root;
            }
        }
    }
}

inline bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace detail

// Direct O(l^4) evaluation of the definition.
inline FourierTable local_fourier_direct(const Eigen::MatrixXcd& field, int ell, int origin_x = 0,
                                         int origin_y = 0) {
    if (origin_x < 0 || origin_y < 0 || origin_x + ell > field.rows() ||
        origin_y + ell > field.cols())
        throw InvalidParameter("local_fourier: window out of bounds");
    FourierTable table;
    table.ell = ell;
    table.coefficients.resize(ell, ell);
    for (int s = 0; s < ell; ++s)
        for (int t = 0; t < ell; ++t) {
            Complex acc = 0.0;
            for (int x = 0; x < ell; ++x)
                for (int y = 0; y < ell; ++y) {
                    const double phase = -2.0 * M_PI * (x * s + y * t) / ell;
                    acc += Complex(std::cos(phase), std::sin(phase)) *
                           field(origin_x + x, origin_y + y);
                }
            table.coefficients(s, t) = acc / static_cast<double>(ell);
        }
    return table;
}

// Row-column fast transform for power-of-two windows, direct otherwise.
inline FourierTable local_fourier(const Eigen::MatrixXcd& field, int ell, int origin_x = 0,
                                  int origin_y = 0) {
    if (!detail::is_pow2(ell)) return local_fourier_direct(field, ell, origin_x, origin_y);
    if (origin_x < 0 || origin_y < 0 || origin_x + ell > field.rows() ||
        origin_y + ell > field.cols())
        throw InvalidParameter("local_fourier: window out of bounds");
    FourierTable table;
    table.ell = ell;
    Eigen::MatrixXcd work(ell, ell);
    std::vector<Complex> line(ell);
    // transform rows (x -> s)
    for (int y = 0; y < ell; ++y) {
        for (int x = 0; x < ell; ++x) line[x] = field(origin_x + x, origin_y + y);
        detail::fft_pow2(line);
        for (int s = 0; s < ell; ++s) work(s, y) = line[s];
    }
    // transform columns (y -> t)
    table.coefficients.resize(ell, ell);
    for (int s = 0; s < ell; ++s) {
        for (int y = 0; y < ell; ++y) line[y] = work(s, y);
        detail::fft_pow2(line);
        for (int t = 0; t < ell; ++t) table.coefficients(s, t) = line[t] / static_cast<double>(ell);
    }
    return table;
}

struct MaxCoefficient {
    int s = 0;
    int t = 0;
    double magnitude = 0.0;
};

// Argmax over coefficients, ties broken lexicographically in (s,t).
inline MaxCoefficient max_coefficient(const FourierTable& table) {
    MaxCoefficient best;
    best.magnitude = -1.0;
    for (int s = 0; s < table.ell; ++s)
        for (int t = 0; t < table.ell; ++t) {
            const double mag = std::abs(table.coefficients(s, t));
            if (mag > best.magnitude) best = {s, t, mag};
        }
    return best;
}

// Fraction of l x l fields whose max local-Fourier coefficient reaches
// threshold_factor * l.
inline double dominant_fraction(const std::vector<Eigen::MatrixXcd>& fields, int ell,
                                double threshold_factor) {
    if (fields.empty()) throw InvalidParameter("dominant_fraction: no fields");
    int hits = 0;
    for (const auto& f : fields) {
        const auto table = local_fourier(f, ell);
        if (max_coefficient(table).magnitude >= threshold_factor * ell) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(fields.size());
}

// |sum_{x=0}^{l-1} e^{i x phi}| (Dirichlet kernel magnitude)
inline double dirichlet_magnitude(int ell, double phi) {
    const double half = 0.5 * phi;
    const double denom = std::sin(half);
    if (std::abs(denom) < 1e-14) return static_cast<double>(ell);
    return std::abs(std::sin(ell * half) / denom);
}

enum class VarianceMethod { QuadraticForm, Expectation };

struct VarianceEstimate {
    double value = 0.0;
    double stderr_est = 0.0;  // zero for the deterministic quadratic form
};

// Var(l,s,t) = E |Zhat(l,s,t)|^2 for the Gaussian wave at energy E.
//  - QuadraticForm: (1/l^2) sum over offset pairs of the window covariance
//    against the Fourier phases (deterministic);
//  - Expectation: (1/l^2) E |sum_x e^{i x s_A}|^2 |sum_y e^{i y t_B}|^2 by
//    Monte Carlo over the angle pair (A,B).
inline VarianceEstimate wave_fourier_variance(double energy, int ell, int s, int t,
                                              VarianceMethod method, int budget = 100000,
                                              std::uint64_t seed = 1,
                                              const AngleSampler* sampler = nullptr) {
    if (!(std::abs(energy) < 4.0) || energy == 0.0)
        throw InvalidParameter("wave_fourier_variance: E in (-4,4) minus {0} required");
    if (s < 0 || s >= ell || t < 0 || t >= ell)
        throw InvalidParameter("wave_fourier_variance: (s,t) must lie in {0..l-1}^2");
    VarianceEstimate out;
    if (method == VarianceMethod::QuadraticForm) {
        const Eigen::MatrixXd table = rho_table(energy, ell - 1, ell - 1);
        const double rho00 = table(0, 0);
        Complex acc = 0.0;
        for (int da = -(ell - 1); da <= ell - 1; ++da)
            for (int db = -(ell - 1); db <= ell - 1; ++db) {
                const double count =
                    static_cast<double>(ell - std::abs(da)) * (ell - std::abs(db));
                const double phase = -2.0 * M_PI * (s * da + t * db) / ell;
                acc += count * (table(std::abs(da), std::abs(db)) / rho00) *
                       Complex(std::cos(phase), std::sin(phase));
            }
        out.value = acc.real() / (static_cast<double>(ell) * ell);
        return out;
    }
    std::optional<AngleSampler> own;
    if (sampler == nullptr) {
        own.emplace(energy);
        sampler = &*own;
    }
    const AngleSampler& use = *sampler;
    Rng rng(derive_seed(seed, "wave-fourier-variance", 0));
    const double s_freq = 2.0 * M_PI * s / ell;
    const double t_freq = 2.0 * M_PI * t / ell;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < budget; ++i) {
        const auto [alpha, beta] = use.sample(rng);
        const double ds = dirichlet_magnitude(ell, alpha - s_freq);
        const double dt = dirichlet_magnitude(ell, beta - t_freq);
        const double v = ds * ds * dt * dt / (static_cast<double>(ell) * ell);
        sum += v;
        sumsq += v * v;
    }
    out.value = sum / budget;
    out.stderr_est = std::sqrt((sumsq / budget - out.value * out.value) / (budget - 1.0));
    return out;
}

// Frequencies are folded to |s| <= l/2 before geometric tests.
inline int fold_frequency(int s, int ell) { return (s > ell / 2) ? s - ell : s; }

// sup-mod-2pi distance from the folded frequency point (2 pi s / l, 2 pi t / l)
// to the level curve 2 cos(alpha) + 2 cos(beta) = E.
inline double frequency_curve_distance(double energy, int ell, int s, int t,
                                       int samples = 8192) {
    const double e_abs = std::abs(energy);
    double alpha_p = 2.0 * M_PI * fold_frequency(s, ell) / ell;
    double beta_p = 2.0 * M_PI * fold_frequency(t, ell) / ell;
    if (energy < 0.0) {
        // checkerboard symmetry maps the E<0 curve to the E>0 one
        alpha_p = alpha_p > 0.0 ? alpha_p - M_PI : alpha_p + M_PI;
        beta_p = beta_p > 0.0 ? beta_p - M_PI : beta_p + M_PI;
    }
    auto mod_dist = [](double x) {
        x = std::fmod(std::abs(x), 2.0 * M_PI);
        return std::min(x, 2.0 * M_PI - x);
    };
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= samples; ++i) {
        const double alpha = -M_PI + 2.0 * M_PI * i / samples;
        const double arg = 0.5 * (e_abs - 2.0 * std::cos(alpha));
        if (std::abs(arg) > 1.0) continue;
        const double beta = std::acos(arg);
        for (double b : {beta, -beta}) {
            const double d = std::max(mod_dist(alpha - alpha_p), mod_dist(b - beta_p));
            best = std::min(best, d);
        }
    }
    return best;
}

}  // namespace torlab
