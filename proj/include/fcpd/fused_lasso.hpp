#pragma once

#include <Eigen/Dense>
#include <vector>

namespace fcpd {

// Piecewise-constant minimizer of ||y - theta||^2 + lambda * sum |theta_{t+1} - theta_t|.
struct PiecewiseFit {
    Eigen::VectorXd theta;
    double lambda = 0.0;
};

// Exact global minimizer via a direct taut-string style sweep; O(n) on
// typical inputs.
PiecewiseFit tv_denoise(const Eigen::VectorXd& y, double lambda);

// Objective value of a candidate theta for the same problem.
double tv_objective(const Eigen::VectorXd& y, const Eigen::VectorXd& theta, double lambda);

// Default tolerance separating fused plateaus from floating-point ripple:
// 1e-9 * (max(y) - min(y)).
double default_jump_tolerance(const Eigen::VectorXd& y);

// 1-based indices t with |theta_{t+1} - theta_t| > tol, strictly increasing.
std::vector<int> jump_set(const PiecewiseFit& fit, double tol);

}  // namespace fcpd
