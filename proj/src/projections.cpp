#include "fcpd/projections.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "fcpd/errors.hpp"

namespace fcpd {

ProjectedSeries tvn_projection(const FunctionalSeries& series) {
    const Eigen::MatrixXd& X = series.values();
    Eigen::VectorXd out(series.n());
    for (int t = 0; t < series.n(); ++t) {
        double tv = 0.0;
        for (int j = 1; j < series.m(); ++j) tv += std::abs(X(t, j) - X(t, j - 1));
        out[t] = tv;
    }
    return {out, Projection::tvn};
}

CovarianceMatrix empirical_covariance(const FunctionalSeries& series) {
    const Eigen::MatrixXd& X = series.values();
    Eigen::RowVectorXd mean = X.colwise().mean();
    Eigen::MatrixXd centered = X.rowwise() - mean;
    Eigen::MatrixXd cov = centered.transpose() * centered / (series.n() - 1.0);
    cov = ((cov + cov.transpose()) / 2.0).eval();
    return {cov};
}

Eigen::VectorXd trapezoid_weights(const Eigen::VectorXd& grid) {
    int m = static_cast<int>(grid.size());
    require(m >= 2, "trapezoid weights need at least 2 grid points");
    Eigen::VectorXd w(m);
    w[0] = (grid[1] - grid[0]) / 2.0;
    for (int j = 1; j + 1 < m; ++j) w[j] = (grid[j + 1] - grid[j - 1]) / 2.0;
    w[m - 1] = (grid[m - 1] - grid[m - 2]) / 2.0;
    return w;
}

Eigenfunction leading_eigenfunction(const CovarianceMatrix& cov, const Eigen::VectorXd& grid) {
    const Eigen::MatrixXd& C = cov.values;
    require(C.rows() == C.cols(), "covariance matrix must be square");
    require(C.rows() == grid.size(), "covariance size must match grid");
    if ((C - C.transpose()).cwiseAbs().maxCoeff() > 1e-10)
        throw DataError("covariance matrix is not symmetric");

    Eigen::VectorXd w = trapezoid_weights(grid);
    Eigen::VectorXd sqw = w.cwiseSqrt();

    // Weighted operator eigenproblem C W phi = lambda phi, symmetrized as
    // B u = lambda u with B = W^{1/2} C W^{1/2}, phi = W^{-1/2} u.
    Eigen::MatrixXd B = sqw.asDiagonal() * C * sqw.asDiagonal();
    B = ((B + B.transpose()) / 2.0).eval();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(B);
    require(solver.info() == Eigen::Success, "eigendecomposition failed");

    int last = static_cast<int>(B.rows()) - 1;
    double lambda1 = solver.eigenvalues()[last];
    if (!(lambda1 > 0.0)) throw DataError("degenerate covariance");
    if (solver.eigenvalues()[0] < -1e-8)
        throw DataError("covariance matrix is not positive semi-definite");

    Eigen::VectorXd u = solver.eigenvectors().col(last);
    Eigen::VectorXd phi = u.cwiseQuotient(sqw);

    int peak = 0;
    for (int j = 1; j < phi.size(); ++j)
        if (std::abs(phi[j]) > std::abs(phi[peak])) peak = j;
    if (phi[peak] < 0.0) phi = -phi;

    double residual = (C * w.cwiseProduct(phi) - lambda1 * phi).norm();
    require(residual <= 1e-8 * lambda1, "eigenfunction residual above tolerance");

    return {phi, lambda1};
}

ProjectedSeries fpc1_projection(const FunctionalSeries& series) {
    Eigenfunction ef = leading_eigenfunction(empirical_covariance(series), series.grid());
    Eigen::VectorXd w = trapezoid_weights(series.grid());
    Eigen::RowVectorXd mean = series.values().colwise().mean();
    Eigen::MatrixXd centered = series.values().rowwise() - mean;
    Eigen::VectorXd scores = centered * w.cwiseProduct(ef.values);
    return {scores, Projection::fpc1};
}

}  // namespace fcpd
