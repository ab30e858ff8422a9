#include "fcpd/report.hpp"

#include <cmath>
#include <json.hpp>
#include <limits>

#include "fcpd/errors.hpp"

namespace fcpd {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json tuned_to_json(const std::optional<TunedParams>& tuned) {
    if (!tuned) return nullptr;
    ordered_json j;
    j["lambda"] = tuned->lambda;
    j["c"] = tuned->c;
    return j;
}

ordered_json candidates_to_json(const std::vector<RegionCandidate>& candidates) {
    ordered_json arr = ordered_json::array();
    for (const RegionCandidate& cand : candidates) {
        ordered_json j;
        j["region"] = {cand.region.lo, cand.region.hi};
        j["location"] = cand.location;
        j["statistic"] = cand.statistic;
        j["p_raw"] = cand.raw_p;
        if (std::isnan(cand.adjusted_p))
            j["p_adjusted"] = nullptr;
        else
            j["p_adjusted"] = cand.adjusted_p;
        arr.push_back(j);
    }
    return arr;
}

std::optional<TunedParams> tuned_from_json(const ordered_json& j) {
    if (j.is_null()) return std::nullopt;
    if (!j.is_object() || !j.contains("lambda") || !j.contains("c"))
        throw DataError("tuned parameters must hold lambda and c");
    return TunedParams{j.at("lambda").get<double>(), j.at("c").get<int>()};
}

std::vector<RegionCandidate> candidates_from_json(const ordered_json& arr) {
    if (!arr.is_array()) throw DataError("per_projection entries must be arrays");
    std::vector<RegionCandidate> candidates;
    for (const ordered_json& j : arr) {
        RegionCandidate cand;
        const ordered_json& region = j.at("region");
        if (!region.is_array() || region.size() != 2)
            throw DataError("candidate region must be a [lo, hi] pair");
        cand.region.lo = region[0].get<int>();
        cand.region.hi = region[1].get<int>();
        cand.region.changeset_index = -1;
        cand.location = j.at("location").get<int>();
        cand.statistic = j.at("statistic").get<double>();
        cand.raw_p = j.at("p_raw").get<double>();
        const ordered_json& adj = j.at("p_adjusted");
        cand.adjusted_p =
            adj.is_null() ? std::numeric_limits<double>::quiet_NaN() : adj.get<double>();
        candidates.push_back(cand);
    }
    return candidates;
}

}  // namespace

void ChangepointReport::validate() const {
    require(alpha > 0.0 && alpha < 1.0, "report alpha must lie in (0,1)");
    for (std::size_t i = 1; i < changepoints.size(); ++i)
        require(changepoints[i] > changepoints[i - 1],
                "report changepoints must be strictly increasing");

    auto check = [](const std::vector<RegionCandidate>& candidates) {
        for (const RegionCandidate& cand : candidates) {
            require(cand.region.lo <= cand.location && cand.location < cand.region.hi,
                    "candidate location must sit inside its region");
            require(cand.raw_p >= 0.0 && cand.raw_p <= 1.0, "raw p-value out of range");
            if (!std::isnan(cand.adjusted_p))
                require(cand.adjusted_p >= cand.raw_p - 1e-12 && cand.adjusted_p <= 1.0,
                        "adjusted p-value out of range");
        }
    };
    check(tvn_candidates);
    check(fpc1_candidates);

    for (int cp : changepoints) {
        bool backed = false;
        for (const std::vector<RegionCandidate>* list : {&tvn_candidates, &fpc1_candidates})
            for (const RegionCandidate& cand : *list)
                if (cand.location == cp && !std::isnan(cand.adjusted_p) &&
                    cand.adjusted_p <= alpha)
                    backed = true;
        require(backed, "every changepoint needs a significant candidate");
    }
}

std::string emit_report(const ChangepointReport& report) {
    report.validate();
    ordered_json j;
    j["changepoints"] = report.changepoints;
    j["alpha"] = report.alpha;
    j["tuned"]["tvn"] = tuned_to_json(report.tuned_tvn);
    j["tuned"]["fpc1"] = tuned_to_json(report.tuned_fpc1);
    j["fpc1_degenerate"] = report.fpc1_degenerate;
    j["per_projection"]["tvn"] = candidates_to_json(report.tvn_candidates);
    j["per_projection"]["fpc1"] = candidates_to_json(report.fpc1_candidates);
    return j.dump(2) + "\n";
}

ChangepointReport parse_report(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("invalid report JSON: ") + e.what());
    }
    try {
        ChangepointReport report;
        report.changepoints = j.at("changepoints").get<std::vector<int>>();
        report.alpha = j.at("alpha").get<double>();
        report.tuned_tvn = tuned_from_json(j.at("tuned").at("tvn"));
        report.tuned_fpc1 = tuned_from_json(j.at("tuned").at("fpc1"));
        report.fpc1_degenerate = j.at("fpc1_degenerate").get<bool>();
        report.tvn_candidates = candidates_from_json(j.at("per_projection").at("tvn"));
        report.fpc1_candidates = candidates_from_json(j.at("per_projection").at("fpc1"));
        report.validate();
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("report JSON missing fields: ") + e.what());
    }
}

}  // namespace fcpd
