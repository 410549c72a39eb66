#include "infoflow/panel.hpp"

#include <cmath>
#include <set>

#include "infoflow/error.hpp"

namespace infoflow {

TimeSeriesPanel::TimeSeriesPanel(std::vector<std::string> labels, SeriesMatrix values, double dt,
                                 double t0)
    : labels_(std::move(labels)), values_(std::move(values)), dt_(dt), t0_(t0) {
  if (values_.rows() < 1) throw Error(ErrorKind::input, "panel needs at least one series");
  if (values_.cols() < 2)
    throw Error(ErrorKind::insufficient_data, "panel needs at least 2 samples, got " +
                                                  std::to_string(values_.cols()));
  if (labels_.size() != static_cast<std::size_t>(values_.rows()))
    throw Error(ErrorKind::input, "label count does not match series count");
  if (!(dt_ > 0.0) || !std::isfinite(dt_))
    throw Error(ErrorKind::validation, "time step must be positive and finite");
  std::set<std::string> seen;
  for (const auto& label : labels_) {
    if (!seen.insert(label).second)
      throw Error(ErrorKind::validation, "duplicate series label '" + label + "'");
  }
  for (Eigen::Index r = 0; r < values_.rows(); ++r) {
    for (Eigen::Index c = 0; c < values_.cols(); ++c) {
      if (!std::isfinite(values_(r, c)))
        throw Error(ErrorKind::validation, "non-finite value in series '" +
                                               labels_[static_cast<std::size_t>(r)] +
                                               "' at index " + std::to_string(c));
    }
  }
}

std::size_t TimeSeriesPanel::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  throw Error(ErrorKind::usage, "no series named '" + label + "'");
}

TimeSeriesPanel TimeSeriesPanel::slice(std::size_t first, std::size_t count) const {
  if (first + count > samples())
    throw Error(ErrorKind::usage, "slice exceeds panel length");
  SeriesMatrix part = values_.middleCols(static_cast<Eigen::Index>(first),
                                         static_cast<Eigen::Index>(count));
  return TimeSeriesPanel(labels_, std::move(part), dt_,
                         t0_ + static_cast<double>(first) * dt_);
}

TimeSeriesPanel TimeSeriesPanel::with_series(std::size_t series, const Vector& replacement) const {
  if (series >= dims() || static_cast<std::size_t>(replacement.size()) != samples())
    throw Error(ErrorKind::input, "replacement series has wrong index or length");
  SeriesMatrix copy = values_;
  copy.row(static_cast<Eigen::Index>(series)) = replacement.transpose();
  return TimeSeriesPanel(labels_, std::move(copy), dt_, t0_);
}

DifferencedSeries forward_difference(const TimeSeriesPanel& panel, std::size_t series,
                                     std::size_t k) {
  const std::size_t n = panel.samples();
  if (k < 1 || k >= n)
    throw Error(ErrorKind::invalid_stride, "stride k must satisfy 1 <= k < n (k=" +
                                               std::to_string(k) + ", n=" + std::to_string(n) + ")");
  if (series >= panel.dims()) throw Error(ErrorKind::usage, "series index out of range");
  const double span = static_cast<double>(k) * panel.dt();
  DifferencedSeries out;
  out.k = k;
  out.source_label = panel.labels()[series];
  out.values.resize(static_cast<Eigen::Index>(n - k));
  for (std::size_t m = 0; m + k < n; ++m)
    out.values[static_cast<Eigen::Index>(m)] = (panel(series, m + k) - panel(series, m)) / span;
  return out;
}

}  // namespace infoflow
