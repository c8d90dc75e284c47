#pragma once

#include <string>
#include <vector>

#include "lelosc/modeid.hpp"
#include "lelosc/timeseries.hpp"

namespace lelosc {

/// Column-oriented numeric CSV content.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns; ///< one vector per header entry
};

/// Writes comma-separated columns with a header row, 17 significant digits,
/// LF line endings. Throws ParseError (filesystem) on failure to open.
void write_csv(const std::string& path, const CsvTable& table);

/// Writes a series as (time_s, <name>[_<unit>]) rows.
void write_series_csv(const std::string& path, const TimeSeries& series);

/// Reads a numeric CSV with a mandatory header row. Throws ParseError on
/// malformed content (ragged rows, non-numeric fields, empty body).
[[nodiscard]] CsvTable read_csv(const std::string& path);

/// Interprets a 2-column table as a uniformly sampled series. Throws
/// ParseError on non-uniform time steps (1e-6 relative).
[[nodiscard]] TimeSeries series_from_table(const CsvTable& table);

/// Interprets a 7-column table (t, va, vb, vc, ia, ib, ic) as a three-phase
/// record. Throws ParseError on shape or uniformity violations.
[[nodiscard]] ThreePhaseRecord three_phase_from_table(const CsvTable& table);

} // namespace lelosc
