//
// torlab/free_convolution.hpp -- free convolution with the semicircle law
//
//   v_t(l)   = inf{ v >= 0 : int dmu(x) / ((x-l)^2 + v^2) <= 1/t }
//   psi_t(l) = l - t int (x-l)/((x-l)^2 + v_t(l)^2) dmu(x)
//   p_t      = v_t(psi_t^{-1}(.)) / (pi t)
//
// Everything reduces to monotone bisection: the defining integral is
// decreasing in v, psi_t is a homeomorphism with |psi_t - id| <= sqrt(t)
// (Cauchy-Schwarz against the defining bound of v_t), so [l - sqrt(t),
// l + sqrt(t)] always brackets the inverse.
//
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <variant>
#include <vector>

#include "torlab/errors.hpp"
#include "torlab/measure.hpp"
#include "torlab/quadrature.hpp"

namespace torlab {

struct FreeConvState {
    std::variant<AtomicMeasure, DensityGrid> mu;
    double t = 0.0;
    double root_tol = 1e-10;

    template <typename F>
    double integrate(F&& f) const {
        if (std::holds_alternative<AtomicMeasure>(mu)) {
            const auto& atoms = std::get<AtomicMeasure>(mu);
            double s = 0.0;
            for (std::size_t i = 0; i < atoms.size(); ++i)
                s += atoms.weights[i].real() * f(atoms.locations[i]);
            return s;
        }
        const auto& grid = std::get<DensityGrid>(mu);
        double s = 0.0;
        for (std::size_t i = 1; i < grid.grid.size(); ++i)
            s += 0.5 *
                 (grid.values[i] * f(grid.grid[i]) + grid.values[i - 1] * f(grid.grid[i - 1])) *
                 (grid.grid[i] - grid.grid[i - 1]);
        return s;
    }

    double support_min() const {
        if (std::holds_alternative<AtomicMeasure>(mu))
            return std::get<AtomicMeasure>(mu).locations.front();
        return std::get<DensityGrid>(mu).grid.front();
    }
    double support_max() const {
        if (std::holds_alternative<AtomicMeasure>(mu))
            return std::get<AtomicMeasure>(mu).locations.back();
        return std::get<DensityGrid>(mu).grid.back();
    }
};

inline FreeConvState make_state(AtomicMeasure mu, double t, double root_tol = 1e-10) {
    if (!(t > 0.0)) throw InvalidParameter("FreeConvState: t > 0 required");
    mu.sort_atoms();
    const double mass = mu.total_weight().real();
    if (std::abs(mass - 1.0) > 1e-8)
        throw InvalidParameter("FreeConvState: mu must be a probability measure");
    FreeConvState state;
    state.mu = std::move(mu);
    state.t = t;
    state.root_tol = root_tol;
    return state;
}

inline FreeConvState make_state(const std::vector<double>& points, double t,
                                double root_tol = 1e-10) {
    AtomicMeasure mu;
    mu.locations = points;
    mu.weights.assign(points.size(), Complex(1.0 / points.size(), 0.0));
    return make_state(std::move(mu), t, root_tol);
}

inline double v_t(const FreeConvState& state, double lambda) {
    const double target = 1.0 / state.t;
    auto defect = [&](double v) {
        const double v2 = v * v;
        return state.integrate([&](double x) {
            const double d = x - lambda;
            return 1.0 / (d * d + v2);
        }) - target;
    };
    if (defect(0.0) <= 0.0) return 0.0;
    double lo = 0.0, hi = std::sqrt(state.t);
    while (hi - lo > state.root_tol) {
        const double mid = 0.5 * (lo + hi);
        (defect(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

inline double psi_t(const FreeConvState& state, double lambda) {
    const double v2 = [&] {
        const double v = v_t(state, lambda);
        return v * v;
    }();
    return lambda - state.t * state.integrate([&](double x) {
        const double d = x - lambda;
        return d / (d * d + v2);
    });
}

inline double psi_t_inverse(const FreeConvState& state, double lambda) {
    const double radius = std::sqrt(state.t);
    double lo = lambda - radius, hi = lambda + radius;
    double flo = psi_t(state, lo) - lambda;
    double fhi = psi_t(state, hi) - lambda;
    // tolerate roundoff at the bracket edges
    if (flo > 0.0 && flo < 1e-12) return lo;
    if (fhi < 0.0 && fhi > -1e-12) return hi;
    if (flo > 0.0 || fhi < 0.0)
        throw RootBracketError("psi_t_inverse: bracket failed (psi not monotone numerically)");
    while (hi - lo > state.root_tol) {
        const double mid = 0.5 * (lo + hi);
        ((psi_t(state, mid) - lambda) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// p_t(lambda) = v_t(psi_t^{-1}(lambda)) / (pi t); zero off the support.
inline double fc_density(const FreeConvState& state, double lambda) {
    return v_t(state, psi_t_inverse(state, lambda)) / (M_PI * state.t);
}

// Stieltjes transform of p_t continued to the real line:
//   Re m(l) = (psi_t^{-1}(l) - l)/t,  Im m(l) = pi p_t(l).
inline Complex fc_stieltjes_real_line(const FreeConvState& state, double lambda) {
    const double inv = psi_t_inverse(state, lambda);
    return Complex((inv - lambda) / state.t, v_t(state, inv) / state.t);
}

namespace detail {

struct FcCdfTable {
    std::vector<double> x;
    std::vector<double> cdf;  // cdf[i] = integral of p_t up to x[i]
};

inline FcCdfTable fc_cdf_table(const FreeConvState& state, int cells = 2048) {
    const double radius = 2.0 * std::sqrt(state.t);
    const double lo = state.support_min() - radius;
    const double hi = state.support_max() + radius;
    FcCdfTable table;
    table.x.resize(cells + 1);
    table.cdf.resize(cells + 1);
    std::vector<double> density(2 * cells + 1);
    for (int i = 0; i <= 2 * cells; ++i)
        density[i] = fc_density(state, lo + (hi - lo) * i / (2.0 * cells));
    table.x[0] = lo;
    table.cdf[0] = 0.0;
    const double h = (hi - lo) / cells;
    for (int i = 0; i < cells; ++i) {
        const double simpson =
            h / 6.0 * (density[2 * i] + 4.0 * density[2 * i + 1] + density[2 * i + 2]);
        table.x[i + 1] = lo + (i + 1.0) * h;
        table.cdf[i + 1] = table.cdf[i] + simpson;
    }
    return table;
}

}  // namespace detail

struct QuantileTable {
    std::vector<double> gammas;  // gamma_0 <= ... <= gamma_n
};

// Quantiles gamma_{i,t} solving int_{-inf}^{gamma_i} p_t = i/n, from a
// cumulative Simpson table inverted by monotone interpolation.
inline QuantileTable fc_quantiles(const FreeConvState& state, int n, int cells = 2048) {
    if (n < 1) throw InvalidParameter("fc_quantiles: n >= 1 required");
    const auto table = detail::fc_cdf_table(state, cells);
    const double total = table.cdf.back();
    QuantileTable out;
    out.gammas.resize(n + 1);
    out.gammas[0] = table.x.front();
    out.gammas[n] = table.x.back();
    std::size_t cursor = 0;
    for (int i = 1; i < n; ++i) {
        const double target = total * i / n;
        while (cursor + 1 < table.cdf.size() && table.cdf[cursor + 1] < target) ++cursor;
        const double c0 = table.cdf[cursor], c1 = table.cdf[cursor + 1];
        const double f = (c1 > c0) ? (target - c0) / (c1 - c0) : 0.5;
        out.gammas[i] = table.x[cursor] + f * (table.x[cursor + 1] - table.x[cursor]);
    }
    return out;
}

// CDF of p_t at lambda (for KS-style comparisons).
inline double fc_cdf(const detail::FcCdfTable& table, double lambda) {
    if (lambda <= table.x.front()) return 0.0;
    if (lambda >= table.x.back()) return 1.0;
    const auto it = std::upper_bound(table.x.begin(), table.x.end(), lambda);
    const std::size_t i = static_cast<std::size_t>(it - table.x.begin()) - 1;
    const double f = (lambda - table.x[i]) / (table.x[i + 1] - table.x[i]);
    const double total = table.cdf.back();
    return (table.cdf[i] + f * (table.cdf[i + 1] - table.cdf[i])) / total;
}

// sigma^2(q,k) = sum_j |q_j|^2 t / ((d_j - psi_t^{-1}(gamma_{k,t}))^2 +
//                                   v_t(psi_t^{-1}(gamma_{k,t}))^2)
// with mu the empirical measure of the diagonal D.
inline double sigma_sq(const Eigen::VectorXcd& q, int k, const Eigen::VectorXd& diag, double t,
                       double root_tol = 1e-10) {
    const auto n = static_cast<int>(diag.size());
    if (k < 1 || k > n) throw InvalidParameter("sigma_sq: 1 <= k <= n required");
    if (std::abs(q.norm() - 1.0) > 1e-8)
        throw InvalidParameter("sigma_sq: q must be a unit vector");
    std::vector<double> points(diag.data(), diag.data() + n);
    const auto state = make_state(points, t, root_tol);
    const auto quantiles = fc_quantiles(state, n);
    const double x_star = psi_t_inverse(state, quantiles.gammas[k]);
    const double v_star = v_t(state, x_star);
    double sigma2 = 0.0;
    for (int j = 0; j < n; ++j) {
        const double d = diag(j) - x_star;
        sigma2 += std::norm(q(j)) * t / (d * d + v_star * v_star);
    }
    return sigma2;
}

}  // namespace torlab
