//
// torlab/measure.hpp -- atomic measures, tabulated densities, Cauchy smoothing
//
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "torlab/errors.hpp"
#include "torlab/quadrature.hpp"

namespace torlab {

using Complex = std::complex<double>;

// Finitely many (location, complex weight) atoms.  Locations are kept sorted
// ascending so smoothed-transform evaluation can prune atoms far from lambda.
struct AtomicMeasure {
    std::vector<double> locations;
    std::vector<Complex> weights;

    std::size_t size() const { return locations.size(); }

    Complex total_weight() const {
        Complex s = 0.0;
        for (const auto& w : weights) s += w;
        return s;
    }

    double total_abs_weight() const {
        double s = 0.0;
        for (const auto& w : weights) s += std::abs(w);
        return s;
    }

    void sort_atoms() {
        std::vector<std::size_t> order(locations.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t i, std::size_t j) { return locations[i] < locations[j]; });
        std::vector<double> loc(locations.size());
        std::vector<Complex> w(locations.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            loc[i] = locations[order[i]];
            w[i] = weights[order[i]];
        }
        locations.swap(loc);
        weights.swap(w);
    }

    // mass of the half-open interval [lo, hi)
    Complex mass(double lo, double hi) const {
        Complex s = 0.0;
        for (std::size_t i = 0; i < locations.size(); ++i)
            if (locations[i] >= lo && locations[i] < hi) s += weights[i];
        return s;
    }
};

// Convolution of two atomic measures: atoms at pairwise location sums,
// weights multiplied.
inline AtomicMeasure convolve(const AtomicMeasure& a, const AtomicMeasure& b) {
    AtomicMeasure out;
    out.locations.reserve(a.size() * b.size());
    out.weights.reserve(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            out.locations.push_back(a.locations[i] + b.locations[j]);
            out.weights.push_back(a.weights[i] * b.weights[j]);
        }
    return out;
}

// Tabulated real density on a strictly increasing lambda grid.
struct DensityGrid {
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<double> singular_points;
    double tol = 1e-8;

    double integral() const { return trapezoid(grid, values); }
};

// kappa_eta(x) = eta / (x^2 + eta^2), i.e. pi times the Cauchy density.
struct CauchyKernel {
    double eta;
    explicit CauchyKernel(double eta_) : eta(eta_) {
        if (!(eta_ > 0.0)) throw InvalidParameter("CauchyKernel: eta must be > 0");
    }
    double operator()(double x) const { return eta / (x * x + eta * eta); }
};

// (kappa_eta * mu)(lambda) for an atomic measure: exact finite sum.  Atoms
// with (x-lambda)^2 > eta^2/trunc_tol contribute < trunc_tol per unit mass and
// are skipped when the measure is sorted (trunc_tol = 0 disables pruning).
inline Complex cauchy_smooth(const AtomicMeasure& mu, double eta, double lambda,
                             double trunc_tol = 0.0) {
    const CauchyKernel kappa(eta);
    Complex s = 0.0;
    if (trunc_tol > 0.0 && mu.size() > 64 &&
        std::is_sorted(mu.locations.begin(), mu.locations.end())) {
        const double radius = std::sqrt(eta / trunc_tol);
        const auto lo =
            std::lower_bound(mu.locations.begin(), mu.locations.end(), lambda - radius);
        const auto hi =
            std::upper_bound(mu.locations.begin(), mu.locations.end(), lambda + radius);
        for (auto it = lo; it != hi; ++it) {
            const std::size_t i = static_cast<std::size_t>(it - mu.locations.begin());
            s += mu.weights[i] * kappa(mu.locations[i] - lambda);
        }
        return s;
    }
    for (std::size_t i = 0; i < mu.size(); ++i)
        s += mu.weights[i] * kappa(mu.locations[i] - lambda);
    return s;
}

// (kappa_eta * f)(lambda) for a tabulated density, by trapezoid quadrature on
// the stored grid.
inline double cauchy_smooth(const DensityGrid& f, double eta, double lambda) {
    const CauchyKernel kappa(eta);
    double s = 0.0;
    for (std::size_t i = 1; i < f.grid.size(); ++i) {
        const double y0 = f.values[i - 1] * kappa(f.grid[i - 1] - lambda);
        const double y1 = f.values[i] * kappa(f.grid[i] - lambda);
        s += 0.5 * (y0 + y1) * (f.grid[i] - f.grid[i - 1]);
    }
    return s;
}

// Stieltjes transform sum_i w_i / (x_i - z), Im z > 0.
inline Complex stieltjes(const AtomicMeasure& mu, Complex z) {
    if (!(z.imag() > 0.0)) throw InvalidParameter("stieltjes: Im z must be > 0");
    Complex s = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) s += mu.weights[i] / (mu.locations[i] - z);
    return s;
}

}  // namespace torlab
