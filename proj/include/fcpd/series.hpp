#pragma once

#include <Eigen/Dense>
#include <string>

namespace fcpd {

// A functional time series sampled on a shared grid: row t holds curve t
// evaluated at the grid points. Grid points live in (0,1) and are strictly
// increasing.
class FunctionalSeries {
public:
    FunctionalSeries(Eigen::MatrixXd values, Eigen::VectorXd grid);

    int n() const { return static_cast<int>(values_.rows()); }
    int m() const { return static_cast<int>(values_.cols()); }

    const Eigen::MatrixXd& values() const { return values_; }
    const Eigen::VectorXd& grid() const { return grid_; }

    // Midpoint grid (j - 1/2)/m for j = 1..m.
    static Eigen::VectorXd default_grid(int m);

private:
    Eigen::MatrixXd values_;
    Eigen::VectorXd grid_;
};

enum class Projection { tvn, fpc1 };

std::string projection_name(Projection p);

// A univariate summary of the series, one value per curve.
struct ProjectedSeries {
    Eigen::VectorXd values;
    Projection source;
};

}  // namespace fcpd
