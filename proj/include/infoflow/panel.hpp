#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace infoflow {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
/// Component-major sample storage: row = series, column = time index.
using SeriesMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// d named series sampled on a uniform grid with step dt.
///
/// Immutable after construction. The constructor validates shape, labels,
/// step and finiteness, so every panel in circulation satisfies the
/// estimator's data contract.
class TimeSeriesPanel {
 public:
  TimeSeriesPanel(std::vector<std::string> labels, SeriesMatrix values, double dt,
                  double t0 = 0.0);

  std::size_t dims() const noexcept { return static_cast<std::size_t>(values_.rows()); }
  std::size_t samples() const noexcept { return static_cast<std::size_t>(values_.cols()); }
  double dt() const noexcept { return dt_; }
  /// Time stamp of sample 0.
  double t0() const noexcept { return t0_; }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const SeriesMatrix& values() const noexcept { return values_; }
  double operator()(std::size_t series, std::size_t index) const {
    return values_(static_cast<Eigen::Index>(series), static_cast<Eigen::Index>(index));
  }

  /// Index of the series with this label; throws ErrorKind::usage if absent.
  std::size_t index_of(const std::string& label) const;

  /// Contiguous sub-panel [first, first + count).
  TimeSeriesPanel slice(std::size_t first, std::size_t count) const;

  /// Copy with one series replaced (same length).
  TimeSeriesPanel with_series(std::size_t series, const Vector& replacement) const;

 private:
  std::vector<std::string> labels_;
  SeriesMatrix values_;
  double dt_;
  double t0_;
};

struct DifferencedSeries {
  Vector values;
  std::size_t k = 1;
  std::string source_label;
};

/// Euler forward difference (x[m+k] - x[m]) / (k dt), m = 0 .. n-k-1.
DifferencedSeries forward_difference(const TimeSeriesPanel& panel, std::size_t series,
                                     std::size_t k);

}  // namespace infoflow
