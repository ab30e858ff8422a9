#include <doctest.h>

#include <random>

#include "fcpd/cusum.hpp"
#include "fcpd/tuning.hpp"
#include "oracles.hpp"

namespace {

Eigen::VectorXd random_vector(int n, std::uint64_t seed, double scale = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, scale);
    Eigen::VectorXd y(n);
    for (int t = 0; t < n; ++t) y[t] = normal(rng);
    return y;
}

}  // namespace

TEST_CASE("cusum process centres and accumulates") {
    SUBCASE("constant input gives the zero process") {
        Eigen::VectorXd T = fcpd::cusum_process(Eigen::VectorXd::Constant(8, 3.0));
        CHECK(T.cwiseAbs().maxCoeff() < 1e-12);
    }

    SUBCASE("an equal-halves step peaks exactly at the step") {
        Eigen::VectorXd y(10);
        y << 0, 0, 0, 0, 0, 1, 1, 1, 1, 1;
        Eigen::VectorXd T = fcpd::cusum_process(y);
        int argmax = 0;
        for (int k = 1; k < 10; ++k)
            if (std::abs(T[k]) > std::abs(T[argmax])) argmax = k;
        CHECK(argmax + 1 == 5);
        CHECK(std::abs(T[9]) < 1e-10);
    }

    SUBCASE("random input matches the direct-summation oracle") {
        Eigen::VectorXd y = random_vector(10, 3);
        Eigen::VectorXd T = fcpd::cusum_process(y);
        Eigen::VectorXd naive = oracles::cusum_process_naive(y);
        CHECK((T - naive).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("long-run variance is the residual sample variance") {
    Eigen::VectorXd y(4);
    y << 1, 2, 3, 4;
    CHECK(fcpd::long_run_variance(y, y) == 0.0);

    Eigen::VectorXd theta(2);
    theta << 0.0, 0.0;
    Eigen::VectorXd resid(2);
    resid << -1.0, 1.0;
    CHECK(fcpd::long_run_variance(resid, theta) == doctest::Approx(2.0).epsilon(1e-15));

    Eigen::VectorXd a = random_vector(25, 17);
    Eigen::VectorXd b = random_vector(25, 18);
    Eigen::VectorXd r = a - b;
    double mean = r.mean();
    double direct = 0.0;
    for (int t = 0; t < 25; ++t) direct += (r[t] - mean) * (r[t] - mean);
    direct /= 24.0;
    CHECK(fcpd::long_run_variance(a, b) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("kolmogorov distribution function") {
    CHECK(fcpd::kolmogorov_cdf(0.0) == 0.0);
    CHECK(fcpd::kolmogorov_cdf(-2.0) == 0.0);
    CHECK(std::abs(fcpd::kolmogorov_cdf(10.0) - 1.0) <= 1e-12);
    CHECK(fcpd::kolmogorov_cdf(1.358) == doctest::Approx(0.95).epsilon(1e-3));

    SUBCASE("matches the theta-function form") {
        for (double t = 0.25; t <= 3.0; t += 0.125) {
            CHECK(fcpd::kolmogorov_cdf(t) ==
                  doctest::Approx(oracles::kolmogorov_cdf_theta(t)).epsilon(1e-9));
        }
    }

    SUBCASE("monotone nondecreasing") {
        double prev = 0.0;
        for (int i = 0; i <= 2000; ++i) {
            double v = fcpd::kolmogorov_cdf(i * 0.002);
            CHECK(v >= prev);
            CHECK(v <= 1.0);
            prev = v;
        }
    }
}

TEST_CASE("cusum test brings the pieces together") {
    SUBCASE("constant input accepts the null") {
        fcpd::CusumResult r = fcpd::cusum_test(Eigen::VectorXd::Constant(12, 4.0),
                                               Eigen::VectorXd::Constant(12, 4.0));
        CHECK(r.statistic == 0.0);
        CHECK(r.p_value == 1.0);
        CHECK(r.sigma_hat == 0.0);
        CHECK(r.location == 1);
    }

    SUBCASE("a strong mean shift is found near its true location") {
        int n = 400;
        std::mt19937_64 rng(2024);
        std::normal_distribution<double> normal(0.0, 1.0);
        Eigen::VectorXd y(n);
        for (int t = 0; t < n; ++t) y[t] = normal(rng) + (t >= 200 ? 5.0 : 0.0);
        Eigen::VectorXd theta = fcpd::theta_star(y, {200});

        fcpd::CusumResult r = fcpd::cusum_test(y, theta);
        CHECK(std::abs(r.location - 200) <= 5);
        CHECK(r.p_value < 1e-6);

        // Brute-force argmax over every split point.
        Eigen::VectorXd T = oracles::cusum_process_naive(y);
        int argmax = 0;
        for (int k = 1; k < n - 1; ++k)
            if (std::abs(T[k]) > std::abs(T[argmax])) argmax = k;
        CHECK(r.location == argmax + 1);
    }
}

TEST_CASE("cusum decisions are scale equivariant") {
    Eigen::VectorXd y = random_vector(60, 5150);
    Eigen::VectorXd theta = Eigen::VectorXd::Constant(60, y.mean());
    fcpd::CusumResult base = fcpd::cusum_test(y, theta);
    fcpd::CusumResult scaled = fcpd::cusum_test(3.5 * y, 3.5 * theta);

    CHECK(scaled.statistic == doctest::Approx(base.statistic).epsilon(1e-12));
    CHECK(scaled.p_value == doctest::Approx(base.p_value).epsilon(1e-12));
    CHECK(scaled.location == base.location);
}

TEST_CASE("reversing the series mirrors the location") {
    Eigen::VectorXd y = random_vector(41, 99);
    Eigen::VectorXd theta = Eigen::VectorXd::Constant(41, y.mean());
    fcpd::CusumResult base = fcpd::cusum_test(y, theta);
    fcpd::CusumResult rev = fcpd::cusum_test(y.reverse(), theta.reverse());

    CHECK(rev.statistic == doctest::Approx(base.statistic).epsilon(1e-10));
    CHECK(rev.location == 41 - base.location);
}

TEST_CASE("p-value decreases as the statistic grows") {
    double prev = 1.0;
    for (double g = 0.0; g <= 4.0; g += 0.05) {
        double p = 1.0 - fcpd::kolmogorov_cdf(g);
        CHECK(p <= prev + 1e-15);
        prev = p;
    }
}
