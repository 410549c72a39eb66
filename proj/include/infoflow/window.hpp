#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "infoflow/estimator.hpp"
#include "infoflow/significance.hpp"

namespace infoflow {

struct WindowOptions {
  std::size_t window = 0;
  std::size_t step = 0;
  std::size_t k = 1;
  /// (source, target) pairs; every ordered pair when empty.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  /// Surrogate p values per window when n_surrogates > 0.
  std::size_t n_surrogates = 0;
  std::uint64_t seed = 0;
  SurrogateMethod method = SurrogateMethod::circular_shift;
  bool normalize = false;
};

struct WindowRow {
  std::size_t start = 0;
  /// Time stamp of the window midpoint, t0 + (start + (W - 1) / 2) dt.
  double center = 0.0;
  /// One entry per pair; absent when the window cannot be estimated.
  std::vector<std::optional<FlowEstimate>> flows;
};

struct WindowedFlowSeries {
  std::size_t window_length = 0;
  std::size_t step = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<WindowRow> rows;
};

/// Number of windows floor((n - W) / S) + 1.
std::size_t window_count(std::size_t n, std::size_t window, std::size_t step);

/// Running-window flow analysis. Windows run in parallel; row order and
/// values do not depend on the schedule (window w uses surrogate substream
/// w of the seed). Windows too short for the estimator or with a singular
/// covariance yield absent entries.
WindowedFlowSeries sliding_window_flows(const TimeSeriesPanel& panel, const WindowOptions& options);

}  // namespace infoflow
