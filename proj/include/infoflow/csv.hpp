#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "infoflow/panel.hpp"

namespace infoflow {

struct CsvOptions {
  char delimiter = ',';
  bool has_header = true;
  /// Name of a time column to drop from the panel and infer dt from.
  std::optional<std::string> time_column;
  /// Treat a leading header column named "t" or "time" as the time column.
  bool detect_time_column = false;
  std::optional<double> dt_override;
};

/// Relative tolerance on time-step uniformity when dt is inferred.
inline constexpr double kTimeGridTolerance = 1e-6;

TimeSeriesPanel ingest_csv(const std::string& path, const CsvOptions& options = {});
TimeSeriesPanel parse_csv(std::istream& in, const CsvOptions& options = {});

/// Writes the panel as CSV with 17 significant digits, so ingest recovers
/// every value bit-for-bit. With `time_column`, a leading "t" column holds
/// t0 + m dt.
void write_csv(std::ostream& out, const TimeSeriesPanel& panel, bool time_column = false,
               char delimiter = ',');

}  // namespace infoflow
