#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "infoflow/covariance.hpp"
#include "infoflow/estimator.hpp"

namespace infoflow {

struct SignificanceReport {
  double std_error = 0.0;
  double z_score = 0.0;
  double p_asymptotic = 1.0;
  std::optional<double> p_surrogate;
  std::size_t n_surrogates = 0;
  double alpha = 0.05;
  /// Zero residual variance: the fit is exact and the standard error is 0.
  bool degenerate = false;
  /// Lag-1 residual autocorrelation above kSerialCorrelationFlag.
  bool serial_correlation = false;
};

inline constexpr double kSerialCorrelationFlag = 0.2;
inline constexpr std::size_t kMinSurrogates = 19;

/// Two-sided standard-normal tail probability.
double two_sided_p(double z);

/// Standard error of drift coefficient `series` in the fit of `fit.target`,
/// from the inverse Fisher information of the linear-Gaussian model:
/// sqrt(residual_variance * (C^-1)_jj / n_eff).
double coefficient_std_error(const CovarianceSet& cov, const LinearModelFit& fit,
                             std::size_t series);

/// Delta method with C_ij / C_ii held fixed: se(T) = |C_ij / C_ii| se(a_ij).
SignificanceReport asymptotic_significance(const LinearModelFit& fit, const CovarianceSet& cov,
                                           const FlowEstimate& flow);

/// Same machinery applied to the self-influence coefficient a_ii.
SignificanceReport self_influence_significance(const LinearModelFit& fit,
                                               const CovarianceSet& cov,
                                               const SelfInfluenceEstimate& self);

enum class SurrogateMethod { circular_shift, permutation };

std::string_view to_string(SurrogateMethod method) noexcept;
SurrogateMethod surrogate_method_from_string(std::string_view name);

struct SurrogateOptions {
  std::size_t n_surrogates = 199;
  std::uint64_t seed = 0;
  SurrogateMethod method = SurrogateMethod::circular_shift;
};

/// Nonparametric p value for the flow source -> target.
///
/// Each surrogate rebuilds the source series (a circular rotation by at
/// least n/10 positions, or a full permutation) and refits the target. The
/// surrogate flow keeps the observed C_ij / C_ii factor, so the surrogates
/// probe the coupling coefficient rather than the correlation the rebuild
/// destroys. p = (1 + #{|T_surr| >= |T|}) / (n_surrogates + 1). Surrogate s
/// draws from its own substream of `seed`, so the result does not depend on
/// the evaluation order.
SignificanceReport surrogate_significance(const TimeSeriesPanel& panel, std::size_t source,
                                          std::size_t target, std::size_t k,
                                          const SurrogateOptions& options);

/// Surrogate flows in surrogate order (exposed for diagnostics and tests).
Vector surrogate_flows(const TimeSeriesPanel& panel, std::size_t source, std::size_t target,
                       std::size_t k, const SurrogateOptions& options);

void attach(FlowEstimate& flow, const SignificanceReport& report);

}  // namespace infoflow
