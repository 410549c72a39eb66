#include "infoflow/estimator.hpp"

#include <cmath>

#include "infoflow/error.hpp"
#include "parallel_for.hpp"
#include "infoflow/significance.hpp"

namespace infoflow {
namespace {

void require_nonsingular(const CovarianceSet& cov) {
  if (cov.near_singular)
    throw Error(ErrorKind::singular_covariance,
                "sample covariance matrix is singular (det C = " + std::to_string(cov.det_C) + ")");
}

double lag1_autocorrelation(const Vector& r) {
  const Eigen::Index n = r.size();
  if (n < 3) return 0.0;
  const double mean = r.mean();
  double num = 0.0;
  double den = 0.0;
  for (Eigen::Index m = 0; m < n; ++m) {
    const double c = r[m] - mean;
    den += c * c;
    if (m + 1 < n) num += c * (r[m + 1] - mean);
  }
  return den > 0.0 ? num / den : 0.0;
}

Vector residuals(const TimeSeriesPanel& panel, std::size_t target, std::size_t k,
                 double intercept, const Vector& coefficients) {
  const auto n_eff = static_cast<Eigen::Index>(panel.samples() - k);
  const DifferencedSeries diff = forward_difference(panel, target, k);
  Vector fitted = (coefficients.transpose() * panel.values().leftCols(n_eff)).transpose();
  return diff.values - fitted - Vector::Constant(n_eff, intercept);
}

}  // namespace

Vector cramer_coefficients(const CovarianceSet& cov, std::size_t target) {
  require_nonsingular(cov);
  const Vector c = cov.cross(target);
  const auto d = static_cast<Eigen::Index>(cov.dims());
  Vector a(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    double sum = 0.0;
    for (Eigen::Index m = 0; m < d; ++m) sum += cov.cofactors(j, m) * c[m];
    a[j] = sum / cov.det_C;
  }
  return a;
}

FlowEstimate estimate_flow(const CovarianceSet& cov, std::size_t source, std::size_t target) {
  if (source == target)
    throw Error(ErrorKind::invalid_pair, "source equals target; use the self-influence estimator");
  if (source >= cov.dims() || target >= cov.dims())
    throw Error(ErrorKind::usage, "series index out of range");
  require_nonsingular(cov);
  const auto i = static_cast<Eigen::Index>(target);
  const auto j = static_cast<Eigen::Index>(source);
  FlowEstimate out;
  out.source = source;
  out.target = target;
  out.k = cov.k;
  out.n_eff = cov.n_eff;
  const double cij = cov.C(i, j);
  if (cij == 0.0) {
    out.value = 0.0;
    return out;
  }
  const Vector c = cov.cross(target);
  double sum = 0.0;
  for (Eigen::Index m = 0; m < c.size(); ++m) sum += cov.cofactors(j, m) * c[m];
  out.value = sum / cov.det_C * cij / cov.C(i, i);
  return out;
}

FlowEstimate estimate_flow(const TimeSeriesPanel& panel, std::size_t source, std::size_t target,
                           std::size_t k) {
  if (source == target)
    throw Error(ErrorKind::invalid_pair, "source equals target; use the self-influence estimator");
  return estimate_flow(covariance_set(panel, k, {target}), source, target);
}

SelfInfluenceEstimate estimate_self_influence(const CovarianceSet& cov, std::size_t target) {
  const Vector a = cramer_coefficients(cov, target);
  SelfInfluenceEstimate out;
  out.value = a[static_cast<Eigen::Index>(target)];
  out.target = target;
  out.k = cov.k;
  out.n_eff = cov.n_eff;
  return out;
}

SelfInfluenceEstimate estimate_self_influence(const TimeSeriesPanel& panel, std::size_t target,
                                              std::size_t k) {
  return estimate_self_influence(covariance_set(panel, k, {target}), target);
}

LinearModelFit fit_linear_model(const TimeSeriesPanel& panel, std::size_t target, std::size_t k) {
  if (k < 1) throw Error(ErrorKind::invalid_stride, "stride k must be at least 1");
  require_window(panel.samples(), panel.dims(), k);
  if (target >= panel.dims()) throw Error(ErrorKind::usage, "target index out of range");
  const auto d = static_cast<Eigen::Index>(panel.dims());
  const auto n_eff = static_cast<Eigen::Index>(panel.samples() - k);

  Matrix design(n_eff, d + 1);
  design.col(0).setOnes();
  design.rightCols(d) = panel.values().leftCols(n_eff).transpose();
  const DifferencedSeries diff = forward_difference(panel, target, k);

  const Eigen::ColPivHouseholderQR<Matrix> qr(design);
  if (qr.rank() < d + 1)
    throw Error(ErrorKind::singular_covariance, "regression design matrix is rank deficient");
  const Vector beta = qr.solve(diff.values);

  LinearModelFit fit;
  fit.target = target;
  fit.k = k;
  fit.n_eff = static_cast<std::size_t>(n_eff);
  fit.intercept = beta[0];
  fit.coefficients = beta.tail(d);
  const Vector r = diff.values - design * beta;
  fit.residual_variance = r.squaredNorm() / static_cast<double>(n_eff);
  fit.noise_intensity = static_cast<double>(k) * panel.dt() * fit.residual_variance;
  const auto x = panel.values().row(static_cast<Eigen::Index>(target)).head(n_eff);
  const double mean = x.mean();
  fit.target_variance = (x.array() - mean).square().sum() / static_cast<double>(n_eff - 1);
  fit.residual_lag1 = lag1_autocorrelation(r);
  return fit;
}

LinearModelFit fit_from_moments(const TimeSeriesPanel& panel, const CovarianceSet& cov,
                                std::size_t target) {
  const Vector a = cramer_coefficients(cov, target);
  const Eigen::Index col = cov.column_of(target);
  const double n_eff = static_cast<double>(cov.n_eff);
  LinearModelFit fit;
  fit.target = target;
  fit.k = cov.k;
  fit.n_eff = cov.n_eff;
  fit.coefficients = a;
  fit.intercept = cov.deriv_mean[col] - a.dot(cov.mean);
  const double explained = a.dot(cov.deriv_cross.col(col));
  fit.residual_variance = std::max(0.0, (cov.deriv_var[col] - explained) * (n_eff - 1.0) / n_eff);
  fit.noise_intensity = static_cast<double>(cov.k) * panel.dt() * fit.residual_variance;
  fit.target_variance = cov.C(static_cast<Eigen::Index>(target), static_cast<Eigen::Index>(target));
  fit.residual_lag1 = lag1_autocorrelation(residuals(panel, target, cov.k, fit.intercept, a));
  return fit;
}

double normalize_flow(const FlowEstimate& flow, const SelfInfluenceEstimate& self,
                      const LinearModelFit& fit) {
  if (self.target != flow.target || fit.target != flow.target || self.k != flow.k ||
      fit.k != flow.k)
    throw Error(ErrorKind::input, "normalization inputs must share target and stride");
  const double noise =
      fit.target_variance > 0.0 ? fit.noise_intensity / (2.0 * fit.target_variance) : 0.0;
  const double z = std::abs(flow.value) + std::abs(self.value) + std::abs(noise);
  if (!(z > 0.0)) throw Error(ErrorKind::degenerate_normalizer, "normalizer is zero");
  return flow.value / z;
}

FlowMatrix::FlowMatrix(std::vector<std::string> labels, CovarianceSet cov,
                       std::vector<FlowEstimate> flows, std::vector<SelfInfluenceEstimate> self,
                       std::vector<LinearModelFit> fits, double dt)
    : labels_(std::move(labels)),
      cov_(std::move(cov)),
      flows_(std::move(flows)),
      self_(std::move(self)),
      fits_(std::move(fits)),
      dt_(dt) {
  const std::size_t d = labels_.size();
  if (flows_.size() != d * (d - 1) || self_.size() != d || fits_.size() != d)
    throw Error(ErrorKind::input, "flow matrix parts do not match the dimension");
}

std::size_t FlowMatrix::slot(std::size_t source, std::size_t target) const {
  const std::size_t d = dims();
  if (source >= d || target >= d) throw Error(ErrorKind::usage, "series index out of range");
  if (source == target)
    throw Error(ErrorKind::invalid_pair, "no flow entry on the diagonal; see self_influence()");
  return target * (d - 1) + (source < target ? source : source - 1);
}

const FlowEstimate& FlowMatrix::flow(std::size_t source, std::size_t target) const {
  return flows_[slot(source, target)];
}

FlowEstimate& FlowMatrix::flow(std::size_t source, std::size_t target) {
  return flows_[slot(source, target)];
}

FlowMatrix estimate_flow_matrix(const TimeSeriesPanel& panel, const FlowMatrixOptions& options) {
  const std::size_t d = panel.dims();
  if (d < 2) throw Error(ErrorKind::input, "a flow matrix needs at least 2 series");
  CovarianceSet cov = covariance_set(panel, options.k);
  if (cov.near_singular)
    throw Error(ErrorKind::singular_covariance,
                "sample covariance matrix is singular (det C = " + std::to_string(cov.det_C) + ")");

  std::vector<FlowEstimate> flows(d * (d - 1));
  std::vector<SelfInfluenceEstimate> self(d);
  std::vector<LinearModelFit> fits(d);

  detail::parallel_for(static_cast<long>(d), d >= 8, [&](long ti) {
    const auto i = static_cast<std::size_t>(ti);
    fits[i] = fit_from_moments(panel, cov, i);
    self[i] = estimate_self_influence(cov, i);
    if (options.significance) {
      const SignificanceReport r = self_influence_significance(fits[i], cov, self[i]);
      self[i].std_error = r.std_error;
      self[i].p_value = r.p_asymptotic;
    }
    for (std::size_t j = 0; j < d; ++j) {
      if (j == i) continue;
      FlowEstimate f = estimate_flow(cov, j, i);
      if (options.significance) attach(f, asymptotic_significance(fits[i], cov, f));
      if (options.normalize) f.normalized = normalize_flow(f, self[i], fits[i]);
      flows[i * (d - 1) + (j < i ? j : j - 1)] = f;
    }
  });
  return FlowMatrix(panel.labels(), std::move(cov), std::move(flows), std::move(self),
                    std::move(fits), panel.dt());
}

}  // namespace infoflow
