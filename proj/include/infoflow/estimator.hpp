#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "infoflow/covariance.hpp"
#include "infoflow/panel.hpp"

namespace infoflow {

/// One directed information-flow rate, in nats per unit time.
struct FlowEstimate {
  double value = 0.0;
  std::size_t source = 0;
  std::size_t target = 0;
  std::optional<double> std_error;
  std::optional<double> p_value_asymptotic;
  std::optional<double> p_value_surrogate;
  std::optional<double> normalized;
  std::size_t k = 1;
  std::size_t n_eff = 0;

  /// Surrogate p when present, otherwise the asymptotic p.
  std::optional<double> p_value() const {
    return p_value_surrogate ? p_value_surrogate : p_value_asymptotic;
  }
};

/// Rate at which a component's own dynamics change its marginal entropy.
struct SelfInfluenceEstimate {
  double value = 0.0;
  std::size_t target = 0;
  std::size_t k = 1;
  std::size_t n_eff = 0;
  std::optional<double> std_error;
  std::optional<double> p_value;
};

/// Least-squares fit of the differenced target on an intercept and all series.
struct LinearModelFit {
  std::size_t target = 0;
  double intercept = 0.0;
  Vector coefficients;
  /// Mean squared residual on the derivative scale.
  double residual_variance = 0.0;
  /// Estimated g_ii = (k dt) * residual_variance.
  double noise_intensity = 0.0;
  /// Window variance C_ii of the target series.
  double target_variance = 0.0;
  /// Lag-1 autocorrelation of the residuals.
  double residual_lag1 = 0.0;
  std::size_t k = 1;
  std::size_t n_eff = 0;
};

/// Cramer's-rule drift coefficients of the target: (1/det C) sum_m D_jm C_{m,d target}.
Vector cramer_coefficients(const CovarianceSet& cov, std::size_t target);

FlowEstimate estimate_flow(const CovarianceSet& cov, std::size_t source, std::size_t target);
FlowEstimate estimate_flow(const TimeSeriesPanel& panel, std::size_t source, std::size_t target,
                           std::size_t k = 1);

SelfInfluenceEstimate estimate_self_influence(const CovarianceSet& cov, std::size_t target);
SelfInfluenceEstimate estimate_self_influence(const TimeSeriesPanel& panel, std::size_t target,
                                              std::size_t k = 1);

/// Householder-QR least squares on the explicit design matrix [1, X].
LinearModelFit fit_linear_model(const TimeSeriesPanel& panel, std::size_t target,
                                std::size_t k = 1);

/// The same fit assembled from window moments (Cramer coefficients). Residual
/// autocorrelation needs the samples, so `panel` must be the one `cov` came from.
LinearModelFit fit_from_moments(const TimeSeriesPanel& panel, const CovarianceSet& cov,
                                std::size_t target);

/// Relative importance T / (|T| + |dH*/dt| + |g_ii / (2 C_ii)|), in [-1, 1].
double normalize_flow(const FlowEstimate& flow, const SelfInfluenceEstimate& self,
                      const LinearModelFit& fit);

struct FlowMatrixOptions {
  std::size_t k = 1;
  bool significance = true;
  bool normalize = false;
};

/// All ordered-pair flows plus per-target self-influence and fits.
class FlowMatrix {
 public:
  FlowMatrix(std::vector<std::string> labels, CovarianceSet cov, std::vector<FlowEstimate> flows,
             std::vector<SelfInfluenceEstimate> self, std::vector<LinearModelFit> fits, double dt);

  std::size_t dims() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  double dt() const noexcept { return dt_; }
  std::size_t k() const noexcept { return cov_.k; }
  std::size_t n_eff() const noexcept { return cov_.n_eff; }
  const CovarianceSet& covariance() const noexcept { return cov_; }

  /// Off-diagonal flows, ordered by target then source.
  const std::vector<FlowEstimate>& flows() const noexcept { return flows_; }
  std::vector<FlowEstimate>& flows() noexcept { return flows_; }
  const FlowEstimate& flow(std::size_t source, std::size_t target) const;
  FlowEstimate& flow(std::size_t source, std::size_t target);

  const std::vector<SelfInfluenceEstimate>& self_influence() const noexcept { return self_; }
  const std::vector<LinearModelFit>& fits() const noexcept { return fits_; }

 private:
  std::size_t slot(std::size_t source, std::size_t target) const;

  std::vector<std::string> labels_;
  CovarianceSet cov_;
  std::vector<FlowEstimate> flows_;
  std::vector<SelfInfluenceEstimate> self_;
  std::vector<LinearModelFit> fits_;
  double dt_;
};

/// One covariance pass shared by every target. Targets are processed in
/// parallel; with `significance`, asymptotic standard errors and p values are
/// attached to every flow and self-influence.
FlowMatrix estimate_flow_matrix(const TimeSeriesPanel& panel, const FlowMatrixOptions& options = {});

}  // namespace infoflow
