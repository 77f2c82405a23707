//
// torlab/quadrature.hpp -- tanh-sinh (double exponential) and adaptive Simpson rules
//
// tanh_sinh integrates over [a,b] with integrable endpoint singularities
// (inverse square roots, logs).  The integrand receives, besides the node x,
// the distances to both endpoints computed without cancellation; singular
// factors should be evaluated from those distances.
//
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace torlab {

namespace detail {

struct TanhSinhNode {
    double abscissa;  // tanh((pi/2) sinh t), in (0,1)
    double weight;    // (pi/2) cosh t / cosh^2((pi/2) sinh t)
    double one_minus_abscissa;
};

inline TanhSinhNode tanh_sinh_node(double t) {
    const double u = 1.5707963267948966 * std::sinh(t);
    const double ch = std::cosh(u);
    TanhSinhNode node;
    node.abscissa = std::tanh(u);
    node.weight = 1.5707963267948966 * std::cosh(t) / (ch * ch);
    node.one_minus_abscissa = 1.0 / (std::exp(2.0 * u) * 0.5 + 0.5);  // 2e^{-2u}/(1+e^{-2u})
    return node;
}

}  // namespace detail

// F: double(double x, double dist_to_a, double dist_to_b)
template <typename F>
double tanh_sinh(F&& f, double a, double b, double abs_tol, int max_level = 12) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    const double t_max = 4.0;

    // level 0: step 1
    double step = 1.0;
    const auto center = detail::tanh_sinh_node(0.0);
    double sum = center.weight * f(mid, half, half);
    auto add_node = [&](double t) {
        const auto node = detail::tanh_sinh_node(t);
        // x+ = mid + half*abscissa, distance to b is half*(1-abscissa)
        const double db_plus = half * node.one_minus_abscissa;
        const double x_plus = b - db_plus;
        const double da_minus = half * node.one_minus_abscissa;
        const double x_minus = a + da_minus;
        double contribution = 0.0;
        if (db_plus > 0.0 && x_plus > a && x_plus < b)
            contribution += node.weight * f(x_plus, (b - a) - db_plus, db_plus);
        if (da_minus > 0.0 && x_minus > a && x_minus < b)
            contribution += node.weight * f(x_minus, da_minus, (b - a) - da_minus);
        return contribution;
    };
    for (double t = step; t <= t_max; t += step) sum += add_node(t);

    double integral = sum * step * half;
    for (int level = 1; level <= max_level; ++level) {
        step *= 0.5;
        double extra = 0.0;
        for (double t = step; t <= t_max; t += 2.0 * step) extra += add_node(t);
        sum += extra;
        const double refined = sum * step * half;
        const double err = std::abs(refined - integral);
        integral = refined;
        if (level >= 3 && err <= abs_tol) break;
    }
    return integral;
}

// Convenience overload for integrands that do not need endpoint distances.
template <typename F>
double tanh_sinh_plain(F&& f, double a, double b, double abs_tol, int max_level = 12) {
    return tanh_sinh([&](double x, double, double) { return f(x); }, a, b, abs_tol, max_level);
}

namespace detail {

template <typename F>
double adaptive_simpson_rec(F& f, double a, double m, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

template <typename F>
double adaptive_simpson(F&& f, double a, double b, double abs_tol, int max_depth = 24) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_rec(f, a, m, b, fa, fm, fb, whole, abs_tol, max_depth);
}

// Trapezoid rule over a tabulated, strictly increasing grid.
inline double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
    return s;
}

}  // namespace torlab
