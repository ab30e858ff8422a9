#pragma once

#include <Eigen/Dense>
#include <vector>

namespace fcpd {

// Multipliers of sqrt(n) for the penalty (r -> lambda) and the linkage
// (k -> c). The standard grid runs 0.2..5.0 in steps of 0.1.
struct TuningGrid {
    std::vector<double> r_values;
    std::vector<double> k_values;

    static TuningGrid standard();
    static TuningGrid ranged(double lo, double hi, double step);
};

// Piecewise segment means: segment i spans tau_{i-1}+1 .. tau_i with
// tau_0 = 0 and tau_{m+1} = n, so every index is counted once.
Eigen::VectorXd theta_star(const Eigen::VectorXd& y, const std::vector<int>& taus);

// sum_t (y_t - theta*_t)^2 + |taus| * log(n).
double bic(const Eigen::VectorXd& y, const std::vector<int>& taus);

struct TuningResult {
    double lambda = 0.0;
    int c = 1;
    std::vector<int> changepoints;
    double bic = 0.0;
};

// Brute-force search over the grid: for each (lambda, c) run the full
// single-projection pipeline at level alpha and score the resulting
// changepoints by BIC. Fused-lasso fits are shared across all c for one
// lambda; grid cells are evaluated concurrently with a deterministic
// selection (ties prefer fewer changepoints, then larger lambda, then
// larger c).
TuningResult grid_search(const Eigen::VectorXd& y, const TuningGrid& grid, double alpha);

// Serial, uncached evaluation of the same search; kept as the reference
// the parallel kernel is tested and benchmarked against.
TuningResult grid_search_reference(const Eigen::VectorXd& y, const TuningGrid& grid,
                                   double alpha);

}  // namespace fcpd
