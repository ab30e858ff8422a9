#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "fcpd/errors.hpp"
#include "fcpd/fused_lasso.hpp"
#include "fcpd/parallel.hpp"
#include "fcpd/regionalization.hpp"
#include "fcpd/tuning.hpp"
#include "oracles.hpp"

TEST_CASE("segment means fill between changepoints") {
    SUBCASE("two segments of a ramp") {
        Eigen::VectorXd y(6);
        y << 1, 2, 3, 10, 11, 12;
        Eigen::VectorXd theta = fcpd::theta_star(y, {3});
        Eigen::VectorXd expected(6);
        expected << 2, 2, 2, 11, 11, 11;
        CHECK((theta - expected).lpNorm<Eigen::Infinity>() == 0.0);
    }

    SUBCASE("no changepoints means the grand mean") {
        Eigen::VectorXd y(4);
        y << 0, 4, 4, 0;
        Eigen::VectorXd theta = fcpd::theta_star(y, {});
        for (int t = 0; t < 4; ++t) CHECK(theta[t] == 2.0);
    }

    SUBCASE("matches the naive per-segment loop on random input") {
        std::mt19937_64 rng(303);
        std::normal_distribution<double> normal(0.0, 3.0);
        Eigen::VectorXd y(60);
        for (int t = 0; t < 60; ++t) y[t] = normal(rng);
        std::vector<int> taus = {7, 20, 21, 59};
        Eigen::VectorXd theta = fcpd::theta_star(y, taus);
        Eigen::VectorXd expected = oracles::theta_star_naive(y, taus);
        CHECK((theta - expected).lpNorm<Eigen::Infinity>() < 1e-12);
    }

    SUBCASE("projection is idempotent") {
        std::mt19937_64 rng(304);
        std::normal_distribution<double> normal(0.0, 1.0);
        Eigen::VectorXd y(30);
        for (int t = 0; t < 30; ++t) y[t] = normal(rng);
        std::vector<int> taus = {10, 18};
        Eigen::VectorXd once = fcpd::theta_star(y, taus);
        Eigen::VectorXd twice = fcpd::theta_star(once, taus);
        CHECK((once - twice).lpNorm<Eigen::Infinity>() < 1e-12);
    }

    SUBCASE("unsorted changepoints are rejected") {
        Eigen::VectorXd y = Eigen::VectorXd::Zero(10);
        CHECK_THROWS_AS(fcpd::theta_star(y, {5, 3}), fcpd::InternalError);
    }
}

TEST_CASE("information criterion trades fit against segment count") {
    SUBCASE("a perfect fit with no changepoints scores zero") {
        Eigen::VectorXd y = Eigen::VectorXd::Constant(8, 3.0);
        CHECK(fcpd::bic(y, {}) == 0.0);
    }

    SUBCASE("the residual term is the squared distance to segment means") {
        Eigen::VectorXd y(4);
        y << 0, 2, 0, 2;
        // grand mean 1, SSE = 4, no changepoints
        CHECK(fcpd::bic(y, {}) == doctest::Approx(4.0).epsilon(1e-15));
    }

    SUBCASE("each changepoint costs log(n)") {
        Eigen::VectorXd y(4);
        y << 0, 0, 5, 5;
        double with_cp = fcpd::bic(y, {2});
        CHECK(with_cp == doctest::Approx(std::log(4.0)).epsilon(1e-12));
        double two_cp = fcpd::bic(y, {1, 2});
        CHECK(two_cp - with_cp == doctest::Approx(std::log(4.0)).epsilon(1e-12));
    }
}

TEST_CASE("grid search on a constant series keeps the empty model") {
    Eigen::VectorXd y = Eigen::VectorXd::Constant(25, 1.5);
    fcpd::TuningResult result = fcpd::grid_search(y, fcpd::TuningGrid::standard(), 0.001);
    CHECK(result.changepoints.empty());
    CHECK(result.bic == 0.0);
    // every cell ties at bic 0 with zero changepoints, so the largest
    // lambda = 5.0 * sqrt(25) and c = 5 * sqrt(25) win
    CHECK(result.lambda == doctest::Approx(25.0).epsilon(1e-12));
    CHECK(result.c == 25);
}

TEST_CASE("grid search recovers a clean step") {
    int n = 400;
    std::mt19937_64 rng(505);
    std::normal_distribution<double> normal(0.0, 0.4);
    Eigen::VectorXd y(n);
    for (int t = 0; t < n; ++t) y[t] = (t >= 200 ? 4.0 : 0.0) + normal(rng);

    fcpd::TuningResult result = fcpd::grid_search(y, fcpd::TuningGrid::standard(), 0.001);
    REQUIRE(result.changepoints.size() == 1);
    CHECK(std::abs(result.changepoints[0] - 200) <= 5);
}

TEST_CASE("parallel and reference searches select the same cell") {
    fcpd::TuningGrid grid = fcpd::TuningGrid::ranged(0.5, 3.0, 0.5);

    auto check_match = [&](const Eigen::VectorXd& y) {
        fcpd::TuningResult fast = fcpd::grid_search(y, grid, 0.001);
        fcpd::TuningResult slow = fcpd::grid_search_reference(y, grid, 0.001);
        CHECK(fast.lambda == slow.lambda);
        CHECK(fast.c == slow.c);
        CHECK(fast.changepoints == slow.changepoints);
        CHECK(fast.bic == doctest::Approx(slow.bic).epsilon(1e-12));
    };

    SUBCASE("constant input") { check_match(Eigen::VectorXd::Constant(50, -2.0)); }

    SUBCASE("step input") {
        Eigen::VectorXd y(120);
        std::mt19937_64 rng(606);
        std::normal_distribution<double> normal(0.0, 0.5);
        for (int t = 0; t < 120; ++t) y[t] = (t >= 60 ? 3.0 : 0.0) + normal(rng);
        check_match(y);
    }

    SUBCASE("pure noise") {
        Eigen::VectorXd y(120);
        std::mt19937_64 rng(607);
        std::normal_distribution<double> normal(0.0, 1.0);
        for (int t = 0; t < 120; ++t) y[t] = normal(rng);
        check_match(y);
    }

    // Oversubscribes a single-core machine so the threaded code path really
    // runs instead of falling back to the serial loop.
    SUBCASE("forced multithreaded run") {
        const char* saved = std::getenv("FCPD_THREADS");
        std::string previous = saved ? saved : "";
        setenv("FCPD_THREADS", "3", 1);
#ifdef FCPD_HAVE_OPENMP
        CHECK(fcpd::thread_budget() == 3);
#endif
        Eigen::VectorXd y(150);
        std::mt19937_64 rng(608);
        std::normal_distribution<double> normal(0.0, 0.7);
        for (int t = 0; t < 150; ++t) y[t] = (t >= 50 ? 2.0 : 0.0) + (t >= 100 ? -2.5 : 0.0) + normal(rng);
        check_match(y);
        if (saved)
            setenv("FCPD_THREADS", previous.c_str(), 1);
        else
            unsetenv("FCPD_THREADS");
    }
}

TEST_CASE("the selected cell minimises the criterion over the grid") {
    // independent re-evaluation of every cell through the public pieces
    int n = 40;
    std::mt19937_64 rng(708);
    std::normal_distribution<double> normal(0.0, 0.6);
    Eigen::VectorXd y(n);
    for (int t = 0; t < n; ++t) y[t] = (t >= 20 ? 2.5 : 0.0) + normal(rng);

    fcpd::TuningGrid grid = fcpd::TuningGrid::ranged(0.5, 2.0, 0.5);
    fcpd::TuningResult picked = fcpd::grid_search(y, grid, 0.01);

    double best = std::numeric_limits<double>::infinity();
    bool picked_seen = false;
    for (double r : grid.r_values) {
        double lambda = r * std::sqrt(static_cast<double>(n));
        fcpd::PiecewiseFit fit = fcpd::tv_denoise(y, lambda);
        std::vector<int> jumps = fcpd::jump_set(fit, fcpd::default_jump_tolerance(y));
        for (double k : grid.k_values) {
            int c = std::max(1, static_cast<int>(std::lround(k * std::sqrt(n))));
            fcpd::PipelineResult pipe =
                fcpd::run_amoc_pipeline(y, fit.theta, jumps, c, 0.01);
            double score = fcpd::bic(y, pipe.significant);
            best = std::min(best, score);
            if (lambda == picked.lambda && c == picked.c) {
                picked_seen = true;
                CHECK(score == doctest::Approx(picked.bic).epsilon(1e-12));
                CHECK(pipe.significant == picked.changepoints);
            }
        }
    }
    CHECK(picked_seen);
    CHECK(picked.bic <= best + 1e-9);
}

TEST_CASE("grid construction and input validation") {
    fcpd::TuningGrid standard = fcpd::TuningGrid::standard();
    REQUIRE(standard.r_values.size() == 49);
    CHECK(standard.r_values.front() == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(standard.r_values.back() == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(standard.k_values.size() == 49);

    Eigen::VectorXd short_series(1);
    short_series << 1.0;
    CHECK_THROWS_AS(fcpd::grid_search(short_series, standard, 0.001), fcpd::DataError);

    Eigen::VectorXd with_nan(5);
    with_nan << 1, 2, std::nan(""), 4, 5;
    CHECK_THROWS_AS(fcpd::grid_search(with_nan, standard, 0.001), fcpd::DataError);

    fcpd::TuningGrid empty_grid;
    Eigen::VectorXd ok = Eigen::VectorXd::Zero(10);
    CHECK_THROWS_AS(fcpd::grid_search(ok, empty_grid, 0.001), fcpd::DataError);
}
