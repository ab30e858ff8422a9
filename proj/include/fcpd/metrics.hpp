#pragma once

#include <optional>
#include <vector>

namespace fcpd {

// |#X - #Y|.
int annotation_error(const std::vector<int>& X, const std::vector<int>& Y);

// 2/(nm) sum|X_i - Y_j| - 1/n^2 sum|X_i - X_j| - 1/m^2 sum|Y_i - Y_j|,
// clamped at 0. Requires both sets nonempty.
double energy_distance(const std::vector<double>& X, const std::vector<double>& Y);

// Scores a detection against the truth. energy is missing when exactly one
// of the sets is empty (the distance is undefined there); both empty scores
// energy 0.
struct ErrorSummary {
    int annotation = 0;
    std::optional<double> energy;
};

ErrorSummary score_changepoints(const std::vector<int>& detected, const std::vector<int>& truth);

}  // namespace fcpd
