#include "fcpd/tuning.hpp"

#include <algorithm>
#include <cmath>

#include "fcpd/errors.hpp"
#include "fcpd/fused_lasso.hpp"
#include "fcpd/parallel.hpp"
#include "fcpd/regionalization.hpp"

namespace fcpd {

TuningGrid TuningGrid::standard() { return ranged(0.2, 5.0, 0.1); }

TuningGrid TuningGrid::ranged(double lo, double hi, double step) {
    if (!(lo > 0.0) || !(step > 0.0) || hi < lo)
        throw DataError("tuning grid needs 0 < lo <= hi and step > 0");
    std::vector<double> values;
    int count = static_cast<int>(std::floor((hi - lo) / step + 0.5)) + 1;
    for (int i = 0; i < count; ++i) {
        double v = lo + i * step;
        if (v > hi + step / 2.0) break;
        values.push_back(v);
    }
    return {values, values};
}

Eigen::VectorXd theta_star(const Eigen::VectorXd& y, const std::vector<int>& taus) {
    int n = static_cast<int>(y.size());
    int prev = 0;
    Eigen::VectorXd out(n);
    auto fill_segment = [&](int lo, int hi) {
        // segment spans 1-based indices lo..hi
        double mean = y.segment(lo - 1, hi - lo + 1).mean();
        out.segment(lo - 1, hi - lo + 1).setConstant(mean);
    };
    for (int tau : taus) {
        require(tau > prev && tau < n, "changepoints must be sorted and inside 1..n-1");
        fill_segment(prev + 1, tau);
        prev = tau;
    }
    fill_segment(prev + 1, n);
    return out;
}

double bic(const Eigen::VectorXd& y, const std::vector<int>& taus) {
    double sse = (y - theta_star(y, taus)).squaredNorm();
    return sse + static_cast<double>(taus.size()) * std::log(static_cast<double>(y.size()));
}

namespace {

struct CellResult {
    double bic_value = 0.0;
    int num_changepoints = 0;
    double lambda = 0.0;
    int c = 1;
    std::vector<int> changepoints;
};

CellResult evaluate_cell(const Eigen::VectorXd& y, const PiecewiseFit& fit, int c,
                         double alpha) {
    std::vector<int> jumps = jump_set(fit, default_jump_tolerance(y));
    PipelineResult pipe = run_amoc_pipeline(y, fit.theta, jumps, c, alpha);
    CellResult cell;
    cell.bic_value = bic(y, pipe.significant);
    cell.num_changepoints = static_cast<int>(pipe.significant.size());
    cell.lambda = fit.lambda;
    cell.c = c;
    cell.changepoints = std::move(pipe.significant);
    return cell;
}

// Total order for deterministic selection: smaller BIC, then fewer
// changepoints, then larger lambda, then larger c.
bool better(const CellResult& a, const CellResult& b) {
    if (a.bic_value != b.bic_value) return a.bic_value < b.bic_value;
    if (a.num_changepoints != b.num_changepoints) return a.num_changepoints < b.num_changepoints;
    if (a.lambda != b.lambda) return a.lambda > b.lambda;
    return a.c > b.c;
}

TuningResult to_result(CellResult best) {
    return TuningResult{best.lambda, best.c, std::move(best.changepoints), best.bic_value};
}

void check_inputs(const Eigen::VectorXd& y, const TuningGrid& grid) {
    if (y.size() < 2) throw DataError("grid search needs at least 2 observations");
    if (!y.allFinite()) throw DataError("grid search input must be finite");
    if (grid.r_values.empty() || grid.k_values.empty())
        throw DataError("tuning grid must be nonempty");
    for (double r : grid.r_values)
        if (!(r > 0.0)) throw DataError("penalty multipliers must be positive");
    for (double k : grid.k_values)
        if (!(k > 0.0)) throw DataError("linkage multipliers must be positive");
}

}  // namespace

TuningResult grid_search(const Eigen::VectorXd& y, const TuningGrid& grid, double alpha) {
    check_inputs(y, grid);
    double sqn = std::sqrt(static_cast<double>(y.size()));

    int nl = static_cast<int>(grid.r_values.size());
    std::vector<PiecewiseFit> fits(nl);
    parallel_for(nl, [&](int i) { fits[i] = tv_denoise(y, grid.r_values[i] * sqn); });

    // Distinct linkages only: equal c implies an identical pipeline run.
    std::vector<int> cs;
    for (double k : grid.k_values)
        cs.push_back(std::max(1, static_cast<int>(std::lround(k * sqn))));
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());

    int nc = static_cast<int>(cs.size());
    std::vector<CellResult> cells(static_cast<std::size_t>(nl) * nc);
    parallel_for(nl * nc, [&](int t) {
        cells[t] = evaluate_cell(y, fits[t / nc], cs[t % nc], alpha);
    });

    const CellResult* best = &cells[0];
    for (const CellResult& cell : cells)
        if (better(cell, *best)) best = &cell;
    return to_result(*best);
}

TuningResult grid_search_reference(const Eigen::VectorXd& y, const TuningGrid& grid,
                                   double alpha) {
    check_inputs(y, grid);
    double sqn = std::sqrt(static_cast<double>(y.size()));

    CellResult best;
    bool have_best = false;
    for (double r : grid.r_values) {
        for (double k : grid.k_values) {
            PiecewiseFit fit = tv_denoise(y, r * sqn);
            int c = std::max(1, static_cast<int>(std::lround(k * sqn)));
            CellResult cell = evaluate_cell(y, fit, c, alpha);
            if (!have_best || better(cell, best)) {
                best = std::move(cell);
                have_best = true;
            }
        }
    }
    return to_result(std::move(best));
}

}  // namespace fcpd
