#include "fcpd/series.hpp"

#include <cmath>
#include <utility>

#include "fcpd/errors.hpp"

namespace fcpd {

FunctionalSeries::FunctionalSeries(Eigen::MatrixXd values, Eigen::VectorXd grid)
    : values_(std::move(values)), grid_(std::move(grid)) {
    if (values_.rows() < 3)
        throw DataError("functional series needs at least 3 curves, got " +
                        std::to_string(values_.rows()));
    if (values_.cols() < 2)
        throw DataError("functional series needs at least 2 grid points, got " +
                        std::to_string(values_.cols()));
    if (grid_.size() != values_.cols())
        throw DataError("grid size " + std::to_string(grid_.size()) +
                        " does not match curve length " + std::to_string(values_.cols()));
    for (int j = 0; j < grid_.size(); ++j) {
        if (!std::isfinite(grid_[j]) || grid_[j] <= 0.0 || grid_[j] >= 1.0)
            throw DataError("grid point " + std::to_string(j + 1) + " must lie in (0,1)");
        if (j > 0 && grid_[j] <= grid_[j - 1])
            throw DataError("grid points must be strictly increasing (violated at point " +
                            std::to_string(j + 1) + ")");
    }
    if (!values_.allFinite()) throw DataError("series values must be finite");
}

Eigen::VectorXd FunctionalSeries::default_grid(int m) {
    if (m < 2) throw DataError("grid needs at least 2 points");
    Eigen::VectorXd g(m);
    for (int j = 0; j < m; ++j) g[j] = (j + 0.5) / m;
    return g;
}

std::string projection_name(Projection p) {
    switch (p) {
        case Projection::tvn: return "tvn";
        case Projection::fpc1: return "fpc1";
    }
    throw InternalError("unknown projection");
}

}  // namespace fcpd
