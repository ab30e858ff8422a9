#include "fcpd/regionalization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fcpd/cusum.hpp"
#include "fcpd/errors.hpp"
#include "fcpd/parallel.hpp"

namespace fcpd {

ChangesetPartition agglomerate(const std::vector<int>& jumps, int c) {
    require(c >= 1, "linkage must be at least 1");
    for (std::size_t i = 1; i < jumps.size(); ++i)
        require(jumps[i] > jumps[i - 1], "jump set must be strictly increasing");

    ChangesetPartition partition;
    partition.linkage = c;
    for (int jump : jumps) {
        if (partition.changesets.empty() || jump - partition.changesets.back().back() > c)
            partition.changesets.emplace_back();
        partition.changesets.back().push_back(jump);
    }
    return partition;
}

std::vector<Region> build_regions(const ChangesetPartition& partition, int n) {
    int M = static_cast<int>(partition.changesets.size());
    if (M == 0) return {Region{1, n, -1}};

    std::vector<Region> regions(M);
    for (int j = 0; j < M; ++j) {
        require(!partition.changesets[j].empty(), "changesets must be nonempty");
        require(partition.changesets[j].back() < n, "changeset elements must be below n");
        int prev_sup = j == 0 ? 0 : partition.changesets[j - 1].back();
        int next_inf = j == M - 1 ? n + 1 : partition.changesets[j + 1].front();
        regions[j] = Region{prev_sup + 1, next_inf - 1, j};
    }
    return regions;
}

std::vector<RegionCandidate> detect_in_regions(const Eigen::VectorXd& y,
                                               const Eigen::VectorXd& theta_hat,
                                               const std::vector<Region>& regions) {
    require(y.size() == theta_hat.size(), "series and fit must have equal length");
    int n = static_cast<int>(y.size());
    std::vector<RegionCandidate> candidates(regions.size());
    parallel_for(static_cast<int>(regions.size()), [&](int i) {
        const Region& region = regions[i];
        require(region.lo >= 1 && region.hi <= n && region.lo < region.hi,
                "region bounds out of range");
        int len = region.hi - region.lo + 1;
        CusumResult r = cusum_test(y.segment(region.lo - 1, len),
                                   theta_hat.segment(region.lo - 1, len));
        candidates[i] = RegionCandidate{region, region.lo - 1 + r.location, r.statistic,
                                        r.p_value,
                                        std::numeric_limits<double>::quiet_NaN()};
    });
    return candidates;
}

std::vector<double> bh_adjust(const std::vector<double>& pvals) {
    int M = static_cast<int>(pvals.size());
    for (double p : pvals)
        require(p >= 0.0 && p <= 1.0, "p-values must lie in [0,1]");

    std::vector<int> order(M);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return pvals[a] < pvals[b]; });

    std::vector<double> adjusted(M);
    double running = 1.0;
    for (int rank = M; rank >= 1; --rank) {
        double value = std::min(1.0, M * pvals[order[rank - 1]] / rank);
        running = std::min(running, value);
        adjusted[order[rank - 1]] = running;
    }
    return adjusted;
}

std::vector<int> finalize(const std::vector<RegionCandidate>& candidates_tvn,
                          const std::vector<RegionCandidate>& candidates_fpc1,
                          double alpha) {
    std::vector<int> merged;
    auto keep = [&](const std::vector<RegionCandidate>& candidates) {
        for (const RegionCandidate& cand : candidates) {
            require(!std::isnan(cand.adjusted_p), "finalize needs adjusted p-values");
            if (cand.adjusted_p <= alpha) merged.push_back(cand.location);
        }
    };
    keep(candidates_tvn);
    keep(candidates_fpc1);
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    return merged;
}

PipelineResult run_amoc_pipeline(const Eigen::VectorXd& y, const Eigen::VectorXd& theta_hat,
                                 const std::vector<int>& jumps, int c, double alpha) {
    ChangesetPartition partition = agglomerate(jumps, c);
    std::vector<Region> regions = build_regions(partition, static_cast<int>(y.size()));
    PipelineResult result;
    result.candidates = detect_in_regions(y, theta_hat, regions);

    std::vector<double> pvals(result.candidates.size());
    for (std::size_t i = 0; i < result.candidates.size(); ++i)
        pvals[i] = result.candidates[i].raw_p;
    std::vector<double> adjusted = bh_adjust(pvals);
    for (std::size_t i = 0; i < result.candidates.size(); ++i)
        result.candidates[i].adjusted_p = adjusted[i];

    result.significant = finalize(result.candidates, {}, alpha);
    return result;
}

}  // namespace fcpd
