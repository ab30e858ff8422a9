#include "fcpd/fused_lasso.hpp"

#include <cmath>
#include <limits>

#include "fcpd/errors.hpp"

namespace fcpd {

namespace {

// Direct non-iterative solver (Condat-style dual sweep) for
//   min_x 1/2 ||y - x||^2 + lam * sum |x_{k+1} - x_k|.
// Maintains a candidate segment [k0, k] with running lower/upper line
// bounds (vmin, vmax) and dual slacks (umin, umax); flushes the segment
// whenever a jump becomes unavoidable.
void tv1d_half_weight(const double* y, double* x, int n, double lam) {
    int k = 0, k0 = 0, kminus = 0, kplus = 0;
    double umin = lam, umax = -lam;
    double vmin = y[0] - lam, vmax = y[0] + lam;
    const double twolam = 2.0 * lam;
    for (;;) {
        while (k == n - 1) {
            if (umin < 0.0) {
                do x[k0++] = vmin; while (k0 <= kminus);
                umax = (vmin = y[kminus = k = k0]) + (umin = lam) - vmax;
            } else if (umax > 0.0) {
                do x[k0++] = vmax; while (k0 <= kplus);
                umin = (vmax = y[kplus = k = k0]) + (umax = -lam) - vmin;
            } else {
                vmin += umin / (k - k0 + 1);
                do x[k0++] = vmin; while (k0 <= k);
                return;
            }
        }
        if ((umin += y[k + 1] - vmin) < -lam) {
            do x[k0++] = vmin; while (k0 <= kminus);
            vmax = (vmin = y[kplus = kminus = k = k0]) + twolam;
            umin = lam;
            umax = -lam;
        } else if ((umax += y[k + 1] - vmax) > lam) {
            do x[k0++] = vmax; while (k0 <= kplus);
            vmin = (vmax = y[kplus = kminus = k = k0]) - twolam;
            umin = lam;
            umax = -lam;
        } else {
            ++k;
            if (umin >= lam) {
                vmin += (umin - lam) / (k - k0 + 1);
                kminus = k;
                umin = lam;
            }
            if (umax <= -lam) {
                vmax += (umax + lam) / (k - k0 + 1);
                kplus = k;
                umax = -lam;
            }
        }
    }
}

}  // namespace

PiecewiseFit tv_denoise(const Eigen::VectorXd& y, double lambda) {
    if (y.size() < 1) throw DataError("tv_denoise needs a nonempty input");
    if (!y.allFinite()) throw DataError("tv_denoise input must be finite");
    if (!std::isfinite(lambda) || lambda < 0.0)
        throw DataError("tv_denoise penalty must be finite and nonnegative");

    PiecewiseFit fit;
    fit.lambda = lambda;
    if (lambda == 0.0 || y.size() == 1) {
        fit.theta = y;
        return fit;
    }
    fit.theta.resize(y.size());
    // The sweep solves the 1/2-weighted form, so the penalty is halved to
    // match the unweighted objective ||y - theta||^2 + lambda * TV(theta).
    tv1d_half_weight(y.data(), fit.theta.data(), static_cast<int>(y.size()), lambda / 2.0);
    return fit;
}

double tv_objective(const Eigen::VectorXd& y, const Eigen::VectorXd& theta, double lambda) {
    require(y.size() == theta.size(), "objective needs equal-length inputs");
    double sse = (y - theta).squaredNorm();
    double tv = 0.0;
    for (int t = 1; t < theta.size(); ++t) tv += std::abs(theta[t] - theta[t - 1]);
    return sse + lambda * tv;
}

double default_jump_tolerance(const Eigen::VectorXd& y) {
    if (y.size() == 0) return std::numeric_limits<double>::min();
    double range = y.maxCoeff() - y.minCoeff();
    return std::max(1e-9 * range, std::numeric_limits<double>::min());
}

std::vector<int> jump_set(const PiecewiseFit& fit, double tol) {
    require(tol > 0.0, "jump tolerance must be positive");
    std::vector<int> jumps;
    for (int t = 1; t < fit.theta.size(); ++t)
        if (std::abs(fit.theta[t] - fit.theta[t - 1]) > tol) jumps.push_back(t);
    return jumps;
}

}  // namespace fcpd
