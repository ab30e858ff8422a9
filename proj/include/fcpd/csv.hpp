#pragma once

#include <string>

#include "fcpd/series.hpp"

namespace fcpd {

// Reads a comma-separated file with rows = time, columns = grid points.
// When has_header is true the first line must hold "s=<value>" cells giving
// the grid; otherwise the default uniform grid on (0,1) is used. Errors
// report 1-based (row, column) positions counted over file lines.
FunctionalSeries load_csv(const std::string& path, bool has_header);

// Writes the series in the same layout; the header row is emitted when
// write_header is true. Values are printed with shortest round-trip
// precision so save followed by load reproduces them exactly.
void save_csv(const FunctionalSeries& series, const std::string& path,
              bool write_header = true);

}  // namespace fcpd
