#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fcpd/regionalization.hpp"

namespace fcpd {

struct TunedParams {
    double lambda = 0.0;
    int c = 1;
};

// Final detection output: merged changepoints plus per-projection
// diagnostics. A changepoint at t means the distribution differs between
// t and t+1 (1-based).
struct ChangepointReport {
    std::vector<int> changepoints;
    double alpha = 0.001;
    std::optional<TunedParams> tuned_tvn;
    std::optional<TunedParams> tuned_fpc1;
    std::vector<RegionCandidate> tvn_candidates;
    std::vector<RegionCandidate> fpc1_candidates;
    bool fpc1_degenerate = false;

    // Checks ordering, dedup, and p-value coherence; throws InternalError.
    void validate() const;
};

// Serializes with deterministic key order; emit -> parse -> emit is
// byte-identical.
std::string emit_report(const ChangepointReport& report);

ChangepointReport parse_report(const std::string& text);

}  // namespace fcpd
