#pragma once

#include <Eigen/Dense>
#include <limits>
#include <vector>

namespace fcpd {

// Jump indices grouped left to right: gaps of at most `linkage` steps stay in
// one changeset, larger gaps start a new one.
struct ChangesetPartition {
    std::vector<std::vector<int>> changesets;
    int linkage = 1;
};

// Closed interval [lo, hi] of time indices assigned to one changeset.
// changeset_index is -1 for the whole-series fallback region.
struct Region {
    int lo = 1;
    int hi = 1;
    int changeset_index = -1;
};

// Outcome of the at-most-one-change test on one region, in global
// coordinates. adjusted_p is NaN until bh_adjust has run.
struct RegionCandidate {
    Region region;
    int location = 1;
    double statistic = 0.0;
    double raw_p = 1.0;
    double adjusted_p = std::numeric_limits<double>::quiet_NaN();
};

ChangesetPartition agglomerate(const std::vector<int>& jumps, int c);

// One region per changeset: [max(prev)+1, min(next)-1] with virtual
// neighbours 0 and n+1. An empty partition yields the single region [1, n].
std::vector<Region> build_regions(const ChangesetPartition& partition, int n);

// Runs the at-most-one-change test on each region restriction of y and
// theta_hat; regions may be evaluated concurrently, output order matches
// input order.
std::vector<RegionCandidate> detect_in_regions(const Eigen::VectorXd& y,
                                               const Eigen::VectorXd& theta_hat,
                                               const std::vector<Region>& regions);

// Benjamini-Hochberg step-up adjusted p-values, returned in input order.
std::vector<double> bh_adjust(const std::vector<double>& pvals);

// Merge significant candidates from both projections: sort ascending and
// drop exact duplicates.
std::vector<int> finalize(const std::vector<RegionCandidate>& candidates_tvn,
                          const std::vector<RegionCandidate>& candidates_fpc1,
                          double alpha);

// Full single-projection pass: fused lasso fit (supplied by the caller as
// theta_hat), jumps -> changesets -> regions -> region tests -> BH.
struct PipelineResult {
    std::vector<RegionCandidate> candidates;
    std::vector<int> significant;
};

PipelineResult run_amoc_pipeline(const Eigen::VectorXd& y, const Eigen::VectorXd& theta_hat,
                                 const std::vector<int>& jumps, int c, double alpha);

}  // namespace fcpd
