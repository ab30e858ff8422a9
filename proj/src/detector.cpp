#include "fcpd/detector.hpp"

#include <string>
#include <utility>

#include "fcpd/errors.hpp"
#include "fcpd/fused_lasso.hpp"
#include "fcpd/projections.hpp"
#include "fcpd/regionalization.hpp"

namespace fcpd {

void DetectorConfig::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DataError("alpha must lie in (0,1)");
    if (grid.r_values.empty() || grid.k_values.empty())
        throw DataError("tuning grid must be nonempty");
    for (const std::optional<TunedParams>& o : {override_tvn, override_fpc1}) {
        if (!o) continue;
        if (!(o->lambda > 0.0)) throw DataError("lambda override must be positive");
        if (o->c < 1) throw DataError("linkage override must be at least 1");
    }
}

namespace {

struct ProjectionOutcome {
    TunedParams params;
    std::vector<RegionCandidate> candidates;
};

ProjectionOutcome run_projection(const Eigen::VectorXd& y,
                                 const std::optional<TunedParams>& override_params,
                                 const TuningGrid& grid, double alpha) {
    ProjectionOutcome outcome;
    if (override_params) {
        outcome.params = *override_params;
    } else {
        TuningResult tuned = grid_search(y, grid, alpha);
        outcome.params = TunedParams{tuned.lambda, tuned.c};
    }
    PiecewiseFit fit = tv_denoise(y, outcome.params.lambda);
    std::vector<int> jumps = jump_set(fit, default_jump_tolerance(y));
    PipelineResult pipe = run_amoc_pipeline(y, fit.theta, jumps, outcome.params.c, alpha);
    outcome.candidates = std::move(pipe.candidates);
    return outcome;
}

}  // namespace

ChangepointReport detect(const FunctionalSeries& series, const DetectorConfig& config) {
    config.validate();

    ChangepointReport report;
    report.alpha = config.alpha;

    ProjectedSeries tvn = tvn_projection(series);
    ProjectionOutcome tvn_out =
        run_projection(tvn.values, config.override_tvn, config.grid, config.alpha);
    report.tuned_tvn = tvn_out.params;
    report.tvn_candidates = std::move(tvn_out.candidates);

    try {
        ProjectedSeries fpc = fpc1_projection(series);
        ProjectionOutcome fpc_out =
            run_projection(fpc.values, config.override_fpc1, config.grid, config.alpha);
        report.tuned_fpc1 = fpc_out.params;
        report.fpc1_candidates = std::move(fpc_out.candidates);
    } catch (const DataError& e) {
        if (std::string(e.what()).find("degenerate covariance") == std::string::npos) throw;
        report.fpc1_degenerate = true;
    }

    report.changepoints =
        finalize(report.tvn_candidates, report.fpc1_candidates, config.alpha);
    report.validate();
    return report;
}

}  // namespace fcpd
