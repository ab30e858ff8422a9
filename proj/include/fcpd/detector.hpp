#pragma once

#include <optional>

#include "fcpd/report.hpp"
#include "fcpd/series.hpp"
#include "fcpd/tuning.hpp"

namespace fcpd {

struct DetectorConfig {
    double alpha = 0.001;
    TuningGrid grid = TuningGrid::standard();
    // When set, skip tuning for that projection and use these values
    // directly. Exists so invariance tests can hold (lambda, c) fixed.
    std::optional<TunedParams> override_tvn;
    std::optional<TunedParams> override_fpc1;

    void validate() const;
};

// End-to-end detection: project (TVN and first principal component score),
// tune per projection, run the fused-lasso / region / CUSUM / BH pipeline
// per projection, then merge. A constant series (degenerate covariance)
// yields TVN-only results with fpc1_degenerate set.
ChangepointReport detect(const FunctionalSeries& series, const DetectorConfig& config);

}  // namespace fcpd
