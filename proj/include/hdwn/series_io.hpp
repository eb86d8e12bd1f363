#pragma once

#include "hdwn/series.hpp"

#include <filesystem>
#include <iosfwd>

namespace hdwn {

// Series files: one row per time point, one comma-separated column per
// series, optional single header row.

SeriesMatrix read_series_csv(const std::filesystem::path& path, bool has_header);
SeriesMatrix parse_series_csv(std::istream& in, bool has_header);

/// Values with 17 significant digits; header "x1,...,xp" when requested.
void write_series_csv(std::ostream& out, const SeriesMatrix& x, bool header = false);
void write_series_csv(const std::filesystem::path& path, const SeriesMatrix& x,
                      bool header = false);

}  // namespace hdwn
