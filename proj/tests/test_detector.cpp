#include <doctest.h>

#include <cmath>

#include "fcpd/detector.hpp"
#include "fcpd/errors.hpp"
#include "fcpd/simulation.hpp"

namespace {

fcpd::FunctionalSeries noisy_mean_shift(int n, int shift_at, int m, unsigned seed) {
    fcpd::Scenario scenario;
    scenario.grid_size = m;
    scenario.seed = seed;
    scenario.transform = fcpd::PathTransform::log_sum;

    fcpd::SegmentSpec before;
    before.mean_index = 1;
    before.length = shift_at;
    fcpd::SegmentSpec after;
    after.mean_index = 2;
    after.length = n - shift_at;
    scenario.segments = {before, after};
    return fcpd::generate_series(scenario).first;
}

}  // namespace

TEST_CASE("detection is deterministic") {
    fcpd::FunctionalSeries series = noisy_mean_shift(300, 150, 20, 42);
    fcpd::DetectorConfig config;
    config.grid = fcpd::TuningGrid::ranged(0.5, 3.0, 0.5);

    std::string first = fcpd::emit_report(fcpd::detect(series, config));
    std::string second = fcpd::emit_report(fcpd::detect(series, config));
    CHECK(first == second);
}

TEST_CASE("raising alpha never removes detections") {
    fcpd::FunctionalSeries series = noisy_mean_shift(240, 120, 16, 7);
    fcpd::DetectorConfig config;
    config.override_tvn = fcpd::TunedParams{std::sqrt(240.0), 15};
    config.override_fpc1 = fcpd::TunedParams{std::sqrt(240.0), 15};

    config.alpha = 0.001;
    fcpd::ChangepointReport strict = fcpd::detect(series, config);
    config.alpha = 0.05;
    fcpd::ChangepointReport loose = fcpd::detect(series, config);

    for (int cp : strict.changepoints)
        CHECK(std::count(loose.changepoints.begin(), loose.changepoints.end(), cp) == 1);
    CHECK(loose.changepoints.size() >= strict.changepoints.size());

    // candidate p-values do not depend on alpha, only the cut does
    REQUIRE(strict.tvn_candidates.size() == loose.tvn_candidates.size());
    for (std::size_t i = 0; i < strict.tvn_candidates.size(); ++i)
        CHECK(strict.tvn_candidates[i].raw_p == loose.tvn_candidates[i].raw_p);
}

TEST_CASE("time reversal relocates a detection to the mirror point") {
    fcpd::FunctionalSeries series = noisy_mean_shift(300, 150, 20, 11);
    int n = series.n();

    Eigen::MatrixXd reversed_values = series.values().colwise().reverse();
    fcpd::FunctionalSeries reversed(reversed_values, series.grid());

    fcpd::DetectorConfig config;
    config.alpha = 0.01;
    config.override_tvn = fcpd::TunedParams{2.0 * std::sqrt(300.0), 17};
    config.override_fpc1 = fcpd::TunedParams{2.0 * std::sqrt(300.0), 17};

    fcpd::ChangepointReport forward = fcpd::detect(series, config);
    fcpd::ChangepointReport backward = fcpd::detect(reversed, config);

    REQUIRE(forward.changepoints.size() == 1);
    REQUIRE(backward.changepoints.size() == 1);
    // the split between t and t+1 maps to the split between n-t and n-t+1
    CHECK(std::abs(backward.changepoints[0] - (n - forward.changepoints[0])) <= 1);
}

TEST_CASE("a constant series reports no changepoints and a degenerate score path") {
    Eigen::MatrixXd values = Eigen::MatrixXd::Constant(10, 4, 2.0);
    fcpd::FunctionalSeries series(values, fcpd::FunctionalSeries::default_grid(4));

    fcpd::DetectorConfig config;
    config.grid = fcpd::TuningGrid::ranged(1.0, 2.0, 0.5);
    fcpd::ChangepointReport report = fcpd::detect(series, config);

    CHECK(report.changepoints.empty());
    CHECK(report.fpc1_degenerate);
    CHECK(report.fpc1_candidates.empty());
    CHECK_FALSE(report.tuned_fpc1.has_value());
    CHECK(report.tuned_tvn.has_value());
    REQUIRE(report.tvn_candidates.size() == 1);
    CHECK(report.tvn_candidates[0].raw_p == 1.0);
}

TEST_CASE("config validation rejects bad levels") {
    fcpd::DetectorConfig config;
    config.alpha = 0.0;
    CHECK_THROWS_AS(config.validate(), fcpd::DataError);
    config.alpha = 1.0;
    CHECK_THROWS_AS(config.validate(), fcpd::DataError);
    config.alpha = 0.5;
    CHECK_NOTHROW(config.validate());
    config.grid.r_values.clear();
    config.grid.k_values.clear();
    CHECK_THROWS_AS(config.validate(), fcpd::DataError);
}

TEST_CASE("a planted mid-series mean change is found near the truth") {
    fcpd::Scenario scenario;
    scenario.grid_size = 50;
    scenario.seed = 99;
    fcpd::SegmentSpec a;
    a.mean_index = 1;
    a.length = 1000;
    fcpd::SegmentSpec b;
    b.mean_index = 2;
    b.length = 1000;
    scenario.segments = {a, b};

    auto [series, truth] = fcpd::generate_series(scenario);
    REQUIRE(truth == std::vector<int>{1000});

    fcpd::DetectorConfig config;
    fcpd::ChangepointReport report = fcpd::detect(series, config);

    REQUIRE(!report.changepoints.empty());
    bool near = false;
    for (int cp : report.changepoints)
        if (std::abs(cp - 1000) <= 25) near = true;
    CHECK(near);
    CHECK(report.changepoints.size() <= 3);
}
