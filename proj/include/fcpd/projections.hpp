#pragma once

#include <Eigen/Dense>

#include "fcpd/series.hpp"

namespace fcpd {

// Pooled empirical covariance of the curves on the grid. Symmetric within
// 1e-10, smallest eigenvalue above -1e-8.
struct CovarianceMatrix {
    Eigen::MatrixXd values;
};

// Leading eigenfunction of the covariance operator, evaluated on the grid.
// Unit trapezoid-weighted L2 norm; the largest-magnitude entry is positive.
struct Eigenfunction {
    Eigen::VectorXd values;
    double eigenvalue = 0.0;
};

// Discrete total variation of each curve: sum_j |f_t(s_{j+1}) - f_t(s_j)|.
ProjectedSeries tvn_projection(const FunctionalSeries& series);

// Entry (j,k) = 1/(n-1) sum_t (f_t(s_j) - fbar(s_j))(f_t(s_k) - fbar(s_k)).
CovarianceMatrix empirical_covariance(const FunctionalSeries& series);

// Trapezoid quadrature weights for the grid.
Eigen::VectorXd trapezoid_weights(const Eigen::VectorXd& grid);

// Solves the trapezoid-weighted eigenproblem for the covariance operator and
// returns the leading pair. Throws DataError("degenerate covariance") when
// the covariance has no positive leading eigenvalue.
Eigenfunction leading_eigenfunction(const CovarianceMatrix& cov, const Eigen::VectorXd& grid);

// Score of each centered curve against the leading eigenfunction, by
// trapezoid quadrature.
ProjectedSeries fpc1_projection(const FunctionalSeries& series);

}  // namespace fcpd
