#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "torlab/free_convolution.hpp"
#include "torlab/random_matrix.hpp"

using namespace torlab;

namespace {

FreeConvState delta_zero_state(double t) { return make_state(std::vector<double>{0.0}, t); }

// CDF of the semicircle law with variance t (support [-2 sqrt(t), 2 sqrt(t)])
double semicircle_cdf(double t, double x) {
    const double r = 2.0 * std::sqrt(t);
    if (x <= -r) return 0.0;
    if (x >= r) return 1.0;
    return 0.5 + x * std::sqrt(4.0 * t - x * x) / (4.0 * M_PI * t) +
           std::asin(x / r) / M_PI;
}

}  // namespace

TEST_CASE("delta-zero closed forms") {
    const double t = 0.37;
    const auto state = delta_zero_state(t);
    const double rt = std::sqrt(t);

    SECTION("v_t is the semicircle half-height") {
        CHECK(v_t(state, 0.0) == Catch::Approx(rt).margin(1e-8));
        for (double lambda : {0.1, 0.3, 0.5}) {
            const double expected =
                (std::abs(lambda) < rt) ? std::sqrt(t - lambda * lambda) : 0.0;
            REQUIRE(v_t(state, lambda) == Catch::Approx(expected).margin(1e-8));
        }
        CHECK(v_t(state, rt + 0.01) == 0.0);
        CHECK(v_t(state, -2.0) == 0.0);
    }
    SECTION("psi doubles inside the bulk, psi-inverse halves") {
        for (double lambda : {-0.4, -0.1, 0.2, 0.5}) {
            REQUIRE(psi_t(state, lambda) == Catch::Approx(2.0 * lambda).margin(1e-8));
        }
        for (double lambda : {-0.9, 0.3, 1.1}) {
            REQUIRE(psi_t_inverse(state, lambda) ==
                    Catch::Approx(0.5 * lambda).margin(1e-8));
        }
    }
    SECTION("density at the center") {
        CHECK(fc_density(state, 0.0) == Catch::Approx(1.0 / (M_PI * rt)).margin(1e-6));
    }
    SECTION("quantiles match the closed-form semicircle CDF") {
        const int n = 16;
        const auto q = fc_quantiles(state, n);
        REQUIRE(q.gammas.size() == n + 1);
        CHECK(std::abs(q.gammas[n / 2]) < 1e-8);
        for (int i = 1; i < n; ++i) {
            REQUIRE(q.gammas[i] >= q.gammas[i - 1]);
            REQUIRE(semicircle_cdf(t, q.gammas[i]) ==
                    Catch::Approx(static_cast<double>(i) / n).margin(2e-5));
        }
    }
    SECTION("sigma^2 against the delta-zero closed form") {
        const int n = 10;
        Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
        Eigen::VectorXcd q(n);
        for (int i = 0; i < n; ++i) q(i) = Complex(0.3 * i - 1.0, 0.2);
        q.normalize();
        const int k = 7;
        const auto state10 = make_state(std::vector<double>(n, 0.0), t);
        const auto quant = fc_quantiles(state10, n);
        const double xs = psi_t_inverse(state10, quant.gammas[k]);
        const double vs = v_t(state10, xs);
        const double expected = t / (xs * xs + vs * vs);
        CHECK(sigma_sq(q, k, diag, t) == Catch::Approx(expected).epsilon(1e-8));
        CHECK(sigma_sq(q, k, diag, t) > 0.0);
    }
}

TEST_CASE("general-measure structure") {
    AtomicMeasure two;
    two.locations = {-1.0, 1.0};
    two.weights = {Complex(0.5, 0.0), Complex(0.5, 0.0)};
    const auto state = make_state(two, 0.3);
    const double rt = std::sqrt(0.3);

    SECTION("v_t bounded by sqrt(t) everywhere") {
        for (double lambda = -2.5; lambda <= 2.5; lambda += 0.1)
            REQUIRE(v_t(state, lambda) <= rt + 1e-12);
    }
    SECTION("psi is strictly monotone on a grid and |psi - id| <= sqrt(t)") {
        double prev = psi_t(state, -3.0);
        for (double lambda = -2.9; lambda <= 3.0; lambda += 0.05) {
            const double cur = psi_t(state, lambda);
            REQUIRE(cur > prev);
            REQUIRE(std::abs(cur - lambda) <= rt + 1e-10);
            prev = cur;
        }
    }
    SECTION("symmetric measure fixes zero") {
        CHECK(psi_t(state, 0.0) == Catch::Approx(0.0).margin(1e-12));
        // t = 0.3 leaves a spectral gap around zero (v_t(0) = 0); the median
        // sits inside the gap where the CDF is flat at 1/2
        const auto table = detail::fc_cdf_table(state, 2048);
        const auto q = fc_quantiles(state, 8);
        CHECK(fc_cdf(table, q.gammas[4]) == Catch::Approx(0.5).margin(1e-6));
        // a connected-support t pins the median at zero exactly
        const auto merged = make_state(std::vector<double>{-1.0, 1.0}, 1.2);
        const auto qm = fc_quantiles(merged, 8);
        CHECK(std::abs(qm.gammas[4]) < 1e-8);
    }
    SECTION("inverse property") {
        for (double lambda : {-1.7, -0.4, 0.9, 1.9}) {
            const double inv = psi_t_inverse(state, lambda);
            REQUIRE(psi_t(state, inv) == Catch::Approx(lambda).margin(1e-9));
            REQUIRE(std::abs(inv - lambda) <= rt + 1e-9);
        }
    }
    SECTION("density integrates to one") {
        const auto table = detail::fc_cdf_table(state, 8192);
        CHECK(std::abs(table.cdf.back() - 1.0) <= 1e-6);
    }
    SECTION("density nonnegative, zero far outside") {
        CHECK(fc_density(state, 5.0) == 0.0);
        for (double lambda = -2.5; lambda <= 2.5; lambda += 0.25)
            REQUIRE(fc_density(state, lambda) >= 0.0);
    }
}

TEST_CASE("asymmetric two-atom measure normalizes") {
    AtomicMeasure mu;
    mu.locations = {-0.7, 1.2};
    mu.weights = {Complex(0.3, 0.0), Complex(0.7, 0.0)};
    const auto state = make_state(mu, 0.17);
    const auto table = detail::fc_cdf_table(state, 8192);
    CHECK(std::abs(table.cdf.back() - 1.0) <= 1e-6);
}

TEST_CASE("exchange identity: Re m from principal value of p_t") {
    AtomicMeasure mu;
    mu.locations = {-0.8, 0.1, 1.1};
    mu.weights = {Complex(0.25, 0.0), Complex(0.4, 0.0), Complex(0.35, 0.0)};
    const double t = 0.25;
    const auto state = make_state(mu, t);
    const double lo = state.support_min() - 2.0 * std::sqrt(t);
    const double hi = state.support_max() + 2.0 * std::sqrt(t);

    for (double lambda : {-0.5, 0.3, 0.9}) {
        const Complex m = fc_stieltjes_real_line(state, lambda);
        CHECK(m.imag() == Catch::Approx(M_PI * fc_density(state, lambda)).margin(1e-8));

        // principal-value quadrature of p_t(x)/(x - lambda), independent route
        const double delta = 5e-3;
        auto f = [&](double x) { return fc_density(state, x) / (x - lambda); };
        const double outer = adaptive_simpson(f, lo, lambda - delta, 1e-8, 18) +
                             adaptive_simpson(f, lambda + delta, hi, 1e-8, 18);
        const double deriv =
            (fc_density(state, lambda + delta) - fc_density(state, lambda - delta)) /
            (2.0 * delta);
        const double pv = outer + 2.0 * delta * deriv;  // inner strip, linearized
        CHECK(m.real() == Catch::Approx(pv).margin(5e-3));
    }
}

TEST_CASE("flow consistency: spectrum of D + sqrt(t) W matches p_t") {
    const int n = 200;
    const double t = 0.1;
    Eigen::VectorXd diag(n);
    for (int i = 0; i < n; ++i) diag(i) = -1.0 + 2.0 * i / (n - 1.0);
    std::vector<double> points(diag.data(), diag.data() + n);
    const auto state = make_state(points, t);
    const auto table = detail::fc_cdf_table(state, 2048);

    Rng rng(derive_seed(21, "flowks", 0));
    HermitianMatrix d = diag.asDiagonal().toDenseMatrix().cast<Complex>();
    double mean_ks = 0.0;
    const int draws = 10;
    for (int i = 0; i < draws; ++i) {
        const Eigen::VectorXd ev = hermitian_eigenvalues(perturb(d, t, rng));
        double ks = 0.0;
        for (int j = 0; j < n; ++j) {
            const double cdf = fc_cdf(table, ev(j));
            ks = std::max(ks, std::abs(cdf - (j + 1.0) / n));
            ks = std::max(ks, std::abs(cdf - static_cast<double>(j) / n));
        }
        mean_ks += ks;
    }
    mean_ks /= draws;
    CHECK(mean_ks <= 0.05);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(make_state(std::vector<double>{0.0}, -1.0), InvalidParameter);
    AtomicMeasure bad;
    bad.locations = {0.0};
    bad.weights = {Complex(0.5, 0.0)};
    CHECK_THROWS_AS(make_state(bad, 0.1), InvalidParameter);
    Eigen::VectorXcd q = Eigen::VectorXcd::Ones(4);  // norm 2, not unit
    CHECK_THROWS_AS(sigma_sq(q, 1, Eigen::VectorXd::Zero(4), 0.1), InvalidParameter);
    CHECK_THROWS_AS(sigma_sq(q.normalized(), 5, Eigen::VectorXd::Zero(4), 0.1),
                    InvalidParameter);
}

TEST_CASE("grid-backed measure agrees with a fine atomic approximation") {
    // uniform density on [-1, 1]
    DensityGrid grid;
    const int pts = 2001;
    for (int i = 0; i < pts; ++i) {
        grid.grid.push_back(-1.0 + 2.0 * i / (pts - 1.0));
        grid.values.push_back(0.5);
    }
    FreeConvState gstate;
    gstate.mu = grid;
    gstate.t = 0.2;
    gstate.root_tol = 1e-10;

    std::vector<double> atoms(400);
    for (int i = 0; i < 400; ++i) atoms[i] = -1.0 + 2.0 * (i + 0.5) / 400.0;
    const auto astate = make_state(atoms, 0.2);

    for (double lambda : {-0.9, 0.0, 0.7}) {
        REQUIRE(v_t(gstate, lambda) == Catch::Approx(v_t(astate, lambda)).margin(2e-3));
        REQUIRE(psi_t(gstate, lambda) == Catch::Approx(psi_t(astate, lambda)).margin(2e-3));
    }
}
