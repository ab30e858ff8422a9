#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fcpd/projections.hpp"
#include "fcpd/series.hpp"

namespace fcpd {

struct MaternParams {
    double sigma2 = 1.0;
    double range = 0.2;
    double smoothness = 1.0;
};

enum class ProcessFamily { gaussian, student_t };
enum class PathTransform { identity, log_sum };

// One stationary stretch of the generated series. mean_index 0 is the zero
// mean, 1..5 pick one of the bump mean functions.
struct SegmentSpec {
    int mean_index = 0;
    MaternParams matern;
    int length = 1;
    ProcessFamily family = ProcessFamily::gaussian;
    double df = 3.0;
};

// Full generative description of one synthetic series. True changepoints
// are the cumulative segment lengths (excluding the last).
struct Scenario {
    std::vector<SegmentSpec> segments;
    PathTransform transform = PathTransform::log_sum;
    int grid_size = 50;
    std::uint64_t seed = 0;

    // Adjacent segments must differ in mean or covariance parameters.
    void validate() const;
};

// Stationary Matern kernel evaluated on the grid; the diagonal uses the
// analytic zero-distance limit.
CovarianceMatrix matern_cov(const Eigen::VectorXd& grid, const MaternParams& params);

// mean + L z with L L^T = cov (eigen factorization, tolerant of
// semidefiniteness) and z standard normal.
Eigen::VectorXd sample_gp(const Eigen::VectorXd& mean, const CovarianceMatrix& cov,
                          std::mt19937_64& rng);

// Multivariate t via scale mixture: mean + (zero-mean GP draw) *
// sqrt(df / chi2_df). cov is the scale matrix, not the covariance.
Eigen::VectorXd sample_tp(const Eigen::VectorXd& mean, const CovarianceMatrix& cov, double df,
                          std::mt19937_64& rng);

// Elementwise log(1 + exp(z)), overflow-safe.
Eigen::VectorXd log_sum_transform(const Eigen::VectorXd& z);

// Bump mean functions indexed 1..5, evaluated at t in [0,1].
double psi(int index, double t);

// Draws the whole series segment by segment and applies the path transform
// last. Returns the series and the true changepoints.
std::pair<FunctionalSeries, std::vector<int>> generate_series(const Scenario& scenario);

enum class ScenarioKind { none, sparse, dense };
enum class VariedParameter { mean, variance, range };

// Recipe for randomly drawing a Scenario: which parameter walks across the
// value grid, how many changepoints, and the segment-length range. Unset
// optionals fall back to the kind's defaults (sparse: 5 changepoints,
// lengths U[5000,10000]; dense: 50, U[500,1000]).
struct ScenarioDesign {
    ScenarioKind kind = ScenarioKind::none;
    VariedParameter varied = VariedParameter::mean;
    ProcessFamily family = ProcessFamily::gaussian;
    PathTransform transform = PathTransform::log_sum;
    int grid_size = 50;
    double df = 3.0;
    int none_length = 2000;
    std::optional<int> num_changepoints;
    std::optional<std::pair<int, int>> segment_length;
};

std::vector<double> variance_grid();
std::vector<double> range_grid();

// Draws segment parameters (no immediate repeats in the varied parameter)
// and segment lengths for the design. Fixed parameters: mean-change runs
// use sigma2 = 1, r = 0.2; variance-change use zero mean, r = 0.2;
// range-change use zero mean, sigma2 = 1; smoothness is 1 throughout.
Scenario sample_scenario(const ScenarioDesign& design, std::mt19937_64& rng);

struct SimulationSpec {
    ScenarioDesign design;
    std::uint64_t seed = 0;
    int replicates = 1;
};

// Reads the scenario JSON (kind, varied, family, transform, seed,
// replicates, plus optional grid_size / df / length overrides).
SimulationSpec parse_simulation_spec(const std::string& json_text);

}  // namespace fcpd
