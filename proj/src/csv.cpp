#include "infoflow/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "infoflow/error.hpp"

namespace infoflow {
namespace {

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t");
  return std::string(text.substr(first, last - first + 1));
}

std::vector<std::string> split_record(const std::string& line, char delimiter, std::size_t row) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delimiter) {
      fields.push_back(trim(field));
      field.clear();
    } else {
      field += c;
    }
  }
  if (quoted)
    throw Error(ErrorKind::parse, "unterminated quote on row " + std::to_string(row));
  fields.push_back(trim(field));
  return fields;
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t column) {
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  if (!cell.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (cell.empty() || ec != std::errc() || ptr != end)
    throw Error(ErrorKind::parse, "non-numeric cell '" + cell + "' at row " +
                                      std::to_string(row) + ", column " +
                                      std::to_string(column));
  if (!std::isfinite(value))
    throw Error(ErrorKind::validation, "non-finite cell '" + cell + "' at row " +
                                           std::to_string(row) + ", column " +
                                           std::to_string(column));
  return value;
}

bool is_time_name(std::string name) {
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return name == "t" || name == "time";
}

}  // namespace

TimeSeriesPanel parse_csv(std::istream& in, const CsvOptions& options) {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t row = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = split_record(line, options.delimiter, row);
    if (options.has_header && header.empty()) {
      header = std::move(fields);
      width = header.size();
      continue;
    }
    if (width == 0) width = fields.size();
    if (fields.size() != width)
      throw Error(ErrorKind::parse, "row " + std::to_string(row) + " has " +
                                        std::to_string(fields.size()) + " fields, expected " +
                                        std::to_string(width));
    std::vector<double> values(width);
    for (std::size_t c = 0; c < width; ++c) values[c] = parse_cell(fields[c], row, c + 1);
    rows.push_back(std::move(values));
  }
  if (rows.size() < 2)
    throw Error(ErrorKind::insufficient_data,
                "need at least 2 data rows, found " + std::to_string(rows.size()));

  std::optional<std::size_t> time_index;
  if (options.time_column) {
    if (!options.has_header) throw Error(ErrorKind::usage, "a named time column requires a header");
    const auto it = std::find(header.begin(), header.end(), *options.time_column);
    if (it == header.end())
      throw Error(ErrorKind::format, "time column '" + *options.time_column + "' not found");
    time_index = static_cast<std::size_t>(it - header.begin());
  } else if (options.detect_time_column && options.has_header && !header.empty() &&
             is_time_name(header.front())) {
    time_index = 0;
  }

  const std::size_t d = width - (time_index ? 1 : 0);
  if (d == 0) throw Error(ErrorKind::format, "no data columns besides the time column");
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < width; ++c) {
    if (time_index && c == *time_index) continue;
    labels.push_back(options.has_header ? header[c] : "c" + std::to_string(labels.size()));
  }

  SeriesMatrix values(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(rows.size()));
  for (std::size_t m = 0; m < rows.size(); ++m) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < width; ++c) {
      if (time_index && c == *time_index) continue;
      values(static_cast<Eigen::Index>(r++), static_cast<Eigen::Index>(m)) = rows[m][c];
    }
  }

  double dt = 1.0;
  double t0 = 0.0;
  if (time_index) {
    const std::size_t n = rows.size();
    t0 = rows.front()[*time_index];
    const double step = (rows.back()[*time_index] - t0) / static_cast<double>(n - 1);
    if (!(step > 0.0)) throw Error(ErrorKind::format, "time column is not increasing");
    for (std::size_t m = 1; m < n; ++m) {
      const double diff = rows[m][*time_index] - rows[m - 1][*time_index];
      if (std::abs(diff - step) > kTimeGridTolerance * step)
        throw Error(ErrorKind::format, "non-uniform time column at data row " +
                                           std::to_string(m + 1));
    }
    dt = step;
  }
  if (options.dt_override) dt = *options.dt_override;
  return TimeSeriesPanel(std::move(labels), std::move(values), dt, t0);
}

TimeSeriesPanel ingest_csv(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open '" + path + "'");
  return parse_csv(in, options);
}

void write_csv(std::ostream& out, const TimeSeriesPanel& panel, bool time_column,
               char delimiter) {
  char buffer[64];
  const auto emit = [&](double v) {
    std::snprintf(buffer, sizeof buffer, "%.17g", v);
    out << buffer;
  };
  bool first = true;
  if (time_column) {
    out << 't';
    first = false;
  }
  for (const auto& label : panel.labels()) {
    if (!first) out << delimiter;
    out << label;
    first = false;
  }
  out << '\n';
  for (std::size_t m = 0; m < panel.samples(); ++m) {
    first = true;
    if (time_column) {
      emit(panel.t0() + static_cast<double>(m) * panel.dt());
      first = false;
    }
    for (std::size_t i = 0; i < panel.dims(); ++i) {
      if (!first) out << delimiter;
      emit(panel(i, m));
      first = false;
    }
    out << '\n';
  }
}

}  // namespace infoflow
