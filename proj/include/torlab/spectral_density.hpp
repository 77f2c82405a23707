//
// torlab/spectral_density.hpp -- lattice spectral densities of Z and Z^2
//
// d_a(t)      = T_|a|(t/2) 1(|t|<=2) / (pi sqrt(4-t^2))      (1-D density)
// rho_{a,b}   = d_a * d_b                                     (2-D density)
// kappa_eta   = eta/(x^2+eta^2)                               (Cauchy kernel)
//
// rho is evaluated with the substitution theta = 2 cos(s), which turns the
// d_a factor into cos(a s)/pi on [0,pi] and leaves inverse-square-root
// endpoint singularities where lambda - 2 cos(s) = +-2; the s-domain is split
// at those roots and tanh-sinh quadrature applied on each piece.
//
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "torlab/errors.hpp"
#include "torlab/measure.hpp"
#include "torlab/quadrature.hpp"
#include "torlab/rng.hpp"

namespace torlab {

struct OffsetPair {
    int a = 0;
    int b = 0;
};

inline double chebyshev_T(int n, double x) {
    n = std::abs(n);
    if (n == 0) return 1.0;
    double prev = 1.0, cur = x;
    for (int k = 1; k < n; ++k) {
        const double next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

// d_a(t); |t| = 2 exactly is a singular abscissa, |t| > 2 gives 0.
inline double chebyshev_arcsine_density(int a, double t) {
    const double at = std::abs(t);
    if (at == 2.0) throw SingularAbscissa("d_a: |t| = 2 is a singular abscissa");
    if (at > 2.0) return 0.0;
    return chebyshev_T(std::abs(a), 0.5 * t) / (M_PI * std::sqrt(4.0 - t * t));
}

// Stieltjes transform of d_a:  m_a(z) = integral d_a(x)/(x-z) dx
//                                     = -J(z)^|a| / sqrt(z^2-4),
// J(z) = (z - sqrt(z^2-4))/2 with sqrt(z^2-4) = sqrt(z-2) sqrt(z+2)
// (principal branches; valid for Im z > 0, where |J| <= 1).
inline Complex arcsine_stieltjes(int a, Complex z) {
    const Complex sq = std::sqrt(z - 2.0) * std::sqrt(z + 2.0);
    const Complex joukowski = 0.5 * (z - sq);
    Complex jp = 1.0;
    for (int k = 0; k < std::abs(a); ++k) jp *= joukowski;
    return -jp / sq;
}

// (d_a * kappa_eta)(u) = Im m_a(u + i eta), exactly.
inline double arcsine_smoothed(int a, double u, double eta) {
    return arcsine_stieltjes(a, Complex(u, eta)).imag();
}

namespace detail {

// rho_{a,b}(lambda) for lambda in (0,4): single s-interval [0, s_cut] with an
// inverse-sqrt singularity at s_cut and a boundary layer of width sqrt(lambda)
// at s = 0 (responsible for the log blow-up as lambda -> 0).
inline double rho_positive(int a, int b, double lambda, double tol) {
    const double s_cut = std::acos(0.5 * (lambda - 2.0));
    auto integrand = [&](double s, double /*dist_lo*/, double dist_hi) {
        // u = lambda - 2 cos s; both edge factors formed cancellation-free:
        // 2+u = lambda + 4 sin^2(s/2),  2-u = 4 sin((s+s_cut)/2) sin(dist/2)
        const double half_s = 0.5 * s;
        const double two_plus_u = lambda + 4.0 * std::sin(half_s) * std::sin(half_s);
        const double two_minus_u =
            4.0 * std::sin(s_cut - 0.5 * dist_hi) * std::sin(0.5 * dist_hi);
        const double u = 2.0 - two_minus_u;
        const double root = std::sqrt(two_plus_u * two_minus_u);
        return std::cos(a * s) * chebyshev_T(b, 0.5 * u) / (M_PI * M_PI * root);
    };
    return tanh_sinh(integrand, 0.0, s_cut, 0.3 * tol);
}

}  // namespace detail

// rho_{a,b}(lambda) = (d_a * d_b)(lambda) to absolute accuracy tol.
// lambda in {0, +-4} exactly -> SingularAbscissa; |lambda| > 4 -> 0.
inline double rho(int a, int b, double lambda, double tol = 1e-8) {
    if (!(tol > 0.0)) throw InvalidParameter("rho: tol must be > 0");
    if (lambda == 0.0 || std::abs(lambda) == 4.0)
        throw SingularAbscissa("rho: lambda in {0, +-4} is a singular abscissa");
    if (std::abs(lambda) > 4.0) return 0.0;
    a = std::abs(a);
    b = std::abs(b);
    if (lambda > 0.0) return detail::rho_positive(a, b, lambda, tol);
    const double sign = ((a + b) % 2 == 0) ? 1.0 : -1.0;
    return sign * detail::rho_positive(a, b, -lambda, tol);
}

// Table of rho_{a,b}(E) for 0 <= a <= amax, 0 <= b <= bmax, sharing one set of
// tanh-sinh nodes: Chebyshev and cosine factors are filled by recurrence and
// the table assembled as a matrix product.
inline Eigen::MatrixXd rho_table(double E, int amax, int bmax, int level = 8) {
    if (E == 0.0 || std::abs(E) >= 4.0)
        throw InvalidParameter("rho_table: E must lie in (-4,4) minus {0}");
    const double lambda = std::abs(E);
    const double s_cut = std::acos(0.5 * (lambda - 2.0));

    std::vector<double> s_nodes, weights, dist_hi;
    const double half = 0.5 * s_cut;
    const double step0 = std::pow(0.5, level);
    for (double t = 0.0; t <= 4.0 + 1e-12; t += step0) {
        const auto node = detail::tanh_sinh_node(t);
        const double o = half * node.one_minus_abscissa;
        if (o <= 0.0) continue;
        const double w = node.weight * step0 * half;
        // node approaching the singular end s_cut
        s_nodes.push_back(s_cut - o);
        weights.push_back(w);
        dist_hi.push_back(o);
        if (t == 0.0) continue;  // center node appears once
        // mirrored node approaching 0
        s_nodes.push_back(o);
        weights.push_back(w);
        dist_hi.push_back(s_cut - o);
    }

    const auto n = static_cast<Eigen::Index>(s_nodes.size());
    Eigen::MatrixXd cos_part(n, amax + 1), cheb_part(n, bmax + 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double s = s_nodes[i];
        const double half_s = 0.5 * s;
        const double two_plus_u = lambda + 4.0 * std::sin(half_s) * std::sin(half_s);
        const double two_minus_u =
            4.0 * std::sin(s_cut - 0.5 * dist_hi[i]) * std::sin(0.5 * dist_hi[i]);
        const double u_half = 0.5 * (2.0 - two_minus_u);
        const double base = weights[i] / (M_PI * M_PI * std::sqrt(two_plus_u * two_minus_u));

        double c_prev = 1.0, c_cur = std::cos(s);
        cos_part(i, 0) = 1.0;
        if (amax >= 1) cos_part(i, 1) = c_cur;
        for (int k = 2; k <= amax; ++k) {
            const double c_next = 2.0 * std::cos(s) * c_cur - c_prev;
            c_prev = c_cur;
            c_cur = c_next;
            cos_part(i, k) = c_cur;
        }
        double t_prev = 1.0, t_cur = u_half;
        cheb_part(i, 0) = base;
        if (bmax >= 1) cheb_part(i, 1) = base * t_cur;
        for (int k = 2; k <= bmax; ++k) {
            const double t_next = 2.0 * u_half * t_cur - t_prev;
            t_prev = t_cur;
            t_cur = t_next;
            cheb_part(i, k) = base * t_cur;
        }
    }
    Eigen::MatrixXd table = cos_part.transpose() * cheb_part;
    if (E < 0.0)
        for (int ia = 0; ia <= amax; ++ia)
            for (int ib = 0; ib <= bmax; ++ib)
                if ((ia + ib) % 2 == 1) table(ia, ib) = -table(ia, ib);
    return table;
}

// (d_a * d_b * kappa_eta)(lambda): one smooth quadrature, the inner factor
// replaced by its exact Cauchy smoothing Im m_b.
inline double rho_smoothed(int a, int b, double lambda, double eta, double tol = 1e-8) {
    if (!(eta > 0.0)) throw InvalidParameter("rho_smoothed: eta must be > 0");
    auto integrand = [&](double s) {
        return std::cos(a * s) *
               arcsine_stieltjes(std::abs(b), Complex(lambda - 2.0 * std::cos(s), eta)).imag() /
               M_PI;
    };
    return adaptive_simpson(integrand, 0.0, M_PI, 0.3 * tol);
}

// Tabulates rho_{a,b} on an n_points grid over [-4,4], clamped away from the
// singular abscissae {0, +-4} by `clamp`.
inline DensityGrid tabulate_rho(int a, int b, int n_points, double tol = 1e-8,
                                double clamp = 1e-3) {
    DensityGrid out;
    out.tol = tol;
    out.singular_points = {-4.0, 0.0, 4.0};
    out.grid.reserve(n_points);
    out.values.reserve(n_points);
    const int half_n = n_points / 2;
    for (int i = 0; i < half_n; ++i) {
        const double x = -4.0 + clamp + (0.0 - clamp - (-4.0 + clamp)) * i / (half_n - 1.0);
        out.grid.push_back(x);
    }
    for (int i = 0; i < n_points - half_n; ++i) {
        const double x = clamp + (4.0 - clamp - clamp) * i / (n_points - half_n - 1.0);
        out.grid.push_back(x);
    }
    for (double x : out.grid) out.values.push_back(rho(a, b, x, tol));
    return out;
}

// ||f_1||_p for f_1(t) = int_{-inf}^t (kappa_1 - pi delta)(s) ds, so that
// |f_1(t)| = arctan(1/|t|).  Split at t=1 and substitute u = 1/t on the tail;
// both pieces are handled by tanh-sinh (the u^{p-2} endpoint is integrable
// for p > 1).
inline double f1_norm(double p) {
    if (!(p > 1.0)) throw InvalidParameter("f1_norm: p must be > 1");
    const double near = tanh_sinh_plain(
        [&](double t) { return std::pow(std::atan(1.0 / t), p); }, 0.0, 1.0, 1e-12);
    const double far = tanh_sinh(
        [&](double, double dist_lo, double) {
            return std::pow(std::atan(dist_lo), p) / (dist_lo * dist_lo);
        },
        0.0, 1.0, 1e-12);
    return std::pow(2.0 * (near + far), 1.0 / p);
}

// c_{eps,p} = eps^{-1/p} + c_p eps^{-3/2} with c_p = 8 ||f_1||_p.
inline double continuity_constant(double epsilon, double p) {
    if (!(p > 1.0)) throw InvalidParameter("continuity_constant: p must be > 1");
    if (!(epsilon > 0.0 && epsilon <= 1.0))
        throw InvalidParameter("continuity_constant: epsilon must lie in (0,1]");
    const double c_p = 8.0 * f1_norm(p);
    return std::pow(epsilon, -1.0 / p) + c_p * std::pow(epsilon, -1.5);
}

struct AnglePair {
    double alpha;
    double beta;
};

// Samples (A,B) = (+-acos(theta/2), +-acos((E-theta)/2)) with theta having
// density d_0(u) d_0(E-u) / rho_{0,0}(E) and independent uniform signs.
// Inverse-CDF sampling of s = acos(theta/2) on a precomputed table; in the s
// variable the theta-density becomes d_0(E - 2 cos s)/pi, singular only at
// the end of the support, which the per-cell tanh-sinh absorbs.
class AngleSampler {
  public:
    explicit AngleSampler(double E, int table_size = 4096) : energy_(E) {
        if (!(std::abs(E) < 4.0) || E == 0.0)
            throw InvalidParameter("AngleSampler: E must lie in (-4,4) minus {0}");
        if (E > 0.0) {
            s_lo_ = 0.0;
            s_hi_ = std::acos(0.5 * (E - 2.0));
            singular_at_hi_ = true;  // theta -> E-2 there, so d_0(E-theta) blows up
        } else {
            s_lo_ = std::acos(0.5 * (E + 2.0));
            s_hi_ = M_PI;
            singular_at_hi_ = false;
        }
        s_edges_.resize(table_size + 1);
        for (int i = 0; i <= table_size; ++i)
            s_edges_[i] = s_lo_ + (s_hi_ - s_lo_) * i / static_cast<double>(table_size);
        cdf_.assign(table_size + 1, 0.0);
        const int last = table_size - 1;
        for (int i = 0; i < table_size; ++i) {
            const double mass = tanh_sinh(
                [&](double s, double dist_lo, double dist_hi) {
                    return density_s(s, i == 0 ? dist_lo : s - s_lo_,
                                     i == last ? dist_hi : s_hi_ - s);
                },
                s_edges_[i], s_edges_[i + 1], 1e-12, 8);
            cdf_[i + 1] = cdf_[i] + mass;
        }
        const double total = cdf_.back();
        for (auto& c : cdf_) c /= total;
    }

    double energy() const { return energy_; }

    AnglePair sample(Rng& rng) const {
        const double u = rng.uniform();
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        std::size_t cell = (it == cdf_.begin()) ? 0 : (it - cdf_.begin() - 1);
        if (cell >= s_edges_.size() - 1) cell = s_edges_.size() - 2;
        const double c0 = cdf_[cell], c1 = cdf_[cell + 1];
        const double frac = (c1 > c0) ? (u - c0) / (c1 - c0) : 0.5;
        const double s = s_edges_[cell] + frac * (s_edges_[cell + 1] - s_edges_[cell]);
        const double theta = 2.0 * std::cos(s);
        double alpha = s;
        double beta = std::acos(std::clamp(0.5 * (energy_ - theta), -1.0, 1.0));
        if (rng.uniform() < 0.5) alpha = -alpha;
        if (rng.uniform() < 0.5) beta = -beta;
        return {alpha, beta};
    }

    // Lemma 8.10 form of the marginal density of A on its support.
    double marginal_alpha_density(double alpha, double rho00) const {
        const double u = energy_ - 2.0 * std::cos(alpha);
        if (std::abs(u) >= 2.0) return 0.0;
        return chebyshev_arcsine_density(0, u) / (2.0 * M_PI * rho00);
    }

  private:
    // theta-density transported to s: d_0(E - 2 cos s)/pi, the edge factor
    // that vanishes at the singular support end built from the distance d to
    // that end (2 cos x - 2 cos y = 4 sin((x+y)/2) sin((y-x)/2)).
    double density_s(double s, double dist_lo, double dist_hi) const {
        double two_minus_u, two_plus_u;
        if (singular_at_hi_) {
            two_minus_u = 4.0 * std::sin(s_hi_ - 0.5 * dist_hi) * std::sin(0.5 * dist_hi);
            two_plus_u = energy_ + 4.0 * std::sin(0.5 * s) * std::sin(0.5 * s);
        } else {
            two_plus_u = 4.0 * std::sin(s_lo_ + 0.5 * dist_lo) * std::sin(0.5 * dist_lo);
            two_minus_u = 2.0 - energy_ + 2.0 * std::cos(s);
        }
        const double arg = std::max(two_minus_u * two_plus_u, 1e-300);
        return 1.0 / (M_PI * M_PI * std::sqrt(arg));
    }

    double energy_;
    bool singular_at_hi_;
    double s_lo_, s_hi_;
    std::vector<double> s_edges_;
    std::vector<double> cdf_;
};

inline AnglePair angle_pair_sample(const AngleSampler& sampler, Rng& rng) {
    return sampler.sample(rng);
}

}  // namespace torlab
