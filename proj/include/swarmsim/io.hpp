#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "swarmsim/harness.hpp"

namespace swarmsim {

/// Shortest text form of a double that round-trips exactly: printf "%.17g".
std::string format_double(double v);

/// Writes `text` to `path` atomically: the bytes land in a sibling
/// temporary file which is then renamed over the target, so readers never
/// observe a partial file.  Throws std::runtime_error on I/O failure.
void atomic_write_text(const std::filesystem::path& path, const std::string& text);

/// Record table as CSV: a header row, then one comma-separated line per
/// record with '.' decimal separators, fields in TrialRecord declaration
/// order with `status` last.
std::string records_to_csv(const std::vector<TrialRecord>& records);

/// Record table as a JSON array of flat objects with the same field names
/// and order as the CSV columns.
std::string records_to_json(const std::vector<TrialRecord>& records);

/// Cell summaries as CSV: cell coordinates, counts, then
/// <field>_mean/_sd/_min/_max for every summarized output field.
std::string summaries_to_csv(const std::vector<CellSummary>& cells);

/// Scale fits plus the fitted power law as CSV / JSON.
std::string scale_fits_to_csv(const FitCorrectionResult& result);
std::string fit_result_to_json(const FitCorrectionResult& result);

}  // namespace swarmsim
