#pragma once

#include <Eigen/Dense>

namespace fcpd {

struct CusumResult {
    double statistic = 0.0;
    double p_value = 1.0;
    int location = 1;
    double sigma_hat = 0.0;
};

// Scaled partial-sum process: entry k (1-based) is n^{-1/2} sum_{t<=k} (y_t - ybar).
Eigen::VectorXd cusum_process(const Eigen::VectorXd& y);

// Sample variance (divisor n-1) of the residual y - theta_hat.
double long_run_variance(const Eigen::VectorXd& y, const Eigen::VectorXd& theta_hat);

// Distribution function of the supremum of a standard Brownian bridge.
double kolmogorov_cdf(double t);

// At-most-one-change test: statistic max_{k<n} |T_n(k)| / sigma_hat, location
// the smallest maximizer, p-value from the Kolmogorov limit. A zero sigma_hat
// yields statistic 0 and p-value 1.
CusumResult cusum_test(const Eigen::VectorXd& y, const Eigen::VectorXd& theta_hat);

}  // namespace fcpd
