#include "infoflow/significance.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "infoflow/error.hpp"
#include "infoflow/rng.hpp"
#include "parallel_for.hpp"

namespace infoflow {
namespace {

SignificanceReport from_estimate(double value, double std_error, double residual_variance,
                                 double residual_lag1) {
  SignificanceReport r;
  r.std_error = std_error;
  r.serial_correlation = std::abs(residual_lag1) > kSerialCorrelationFlag;
  if (residual_variance == 0.0 || std_error == 0.0) {
    r.degenerate = true;
    r.std_error = 0.0;
    r.z_score = value == 0.0 ? 0.0 : std::copysign(INFINITY, value);
    r.p_asymptotic = value == 0.0 ? 1.0 : 0.0;
    return r;
  }
  r.z_score = value / std_error;
  r.p_asymptotic = two_sided_p(r.z_score);
  return r;
}

Vector rebuild_source(const Vector& x, SurrogateMethod method, Rng& rng) {
  const auto n = static_cast<std::uint64_t>(x.size());
  Vector out(x.size());
  if (method == SurrogateMethod::circular_shift) {
    const std::uint64_t lo = (n + 9) / 10;
    const std::uint64_t offset = lo + rng.below(n - 2 * lo + 1);
    for (std::uint64_t m = 0; m < n; ++m)
      out[static_cast<Eigen::Index>(m)] = x[static_cast<Eigen::Index>((m + offset) % n)];
  } else {
    out = x;
    for (std::uint64_t m = n - 1; m > 0; --m) {
      const std::uint64_t swap = rng.below(m + 1);
      std::swap(out[static_cast<Eigen::Index>(m)], out[static_cast<Eigen::Index>(swap)]);
    }
  }
  return out;
}

}  // namespace

double two_sided_p(double z) { return std::erfc(std::abs(z) / std::sqrt(2.0)); }

double coefficient_std_error(const CovarianceSet& cov, const LinearModelFit& fit,
                             std::size_t series) {
  if (cov.near_singular)
    throw Error(ErrorKind::singular_covariance, "sample covariance matrix is singular");
  if (cov.n_eff <= cov.dims() + 2)
    throw Error(ErrorKind::insufficient_data, "asymptotic inference needs n_eff > d + 2");
  const auto j = static_cast<Eigen::Index>(series);
  const double inverse_jj = cov.cofactors(j, j) / cov.det_C;
  return std::sqrt(fit.residual_variance * inverse_jj / static_cast<double>(cov.n_eff));
}

SignificanceReport asymptotic_significance(const LinearModelFit& fit, const CovarianceSet& cov,
                                           const FlowEstimate& flow) {
  if (fit.target != flow.target) throw Error(ErrorKind::input, "fit and flow targets differ");
  const auto i = static_cast<Eigen::Index>(flow.target);
  const auto j = static_cast<Eigen::Index>(flow.source);
  const double factor = std::abs(cov.C(i, j) / cov.C(i, i));
  const double se = factor * coefficient_std_error(cov, fit, flow.source);
  return from_estimate(flow.value, se, fit.residual_variance, fit.residual_lag1);
}

SignificanceReport self_influence_significance(const LinearModelFit& fit,
                                               const CovarianceSet& cov,
                                               const SelfInfluenceEstimate& self) {
  if (fit.target != self.target) throw Error(ErrorKind::input, "fit and estimate targets differ");
  const double se = coefficient_std_error(cov, fit, self.target);
  return from_estimate(self.value, se, fit.residual_variance, fit.residual_lag1);
}

std::string_view to_string(SurrogateMethod method) noexcept {
  return method == SurrogateMethod::circular_shift ? "circular_shift" : "permutation";
}

SurrogateMethod surrogate_method_from_string(std::string_view name) {
  if (name == "circular_shift") return SurrogateMethod::circular_shift;
  if (name == "permutation") return SurrogateMethod::permutation;
  throw Error(ErrorKind::usage, "unknown surrogate method '" + std::string(name) + "'");
}

Vector surrogate_flows(const TimeSeriesPanel& panel, std::size_t source, std::size_t target,
                       std::size_t k, const SurrogateOptions& options) {
  if (source == target)
    throw Error(ErrorKind::invalid_pair, "source equals target; surrogate test needs two series");
  if (options.n_surrogates < kMinSurrogates)
    throw Error(ErrorKind::resolution, "at least " + std::to_string(kMinSurrogates) +
                                           " surrogates are required, got " +
                                           std::to_string(options.n_surrogates));
  const CovarianceSet observed = covariance_set(panel, k, {target});
  const auto i = static_cast<Eigen::Index>(target);
  const auto j = static_cast<Eigen::Index>(source);
  const double factor = observed.C(i, j) / observed.C(i, i);
  const Vector x = panel.values().row(j).transpose();

  Vector flows(static_cast<Eigen::Index>(options.n_surrogates));
  detail::parallel_for(static_cast<long>(options.n_surrogates), true, [&](long s) {
    Rng rng(substream_seed(options.seed, static_cast<std::uint64_t>(s)));
    const TimeSeriesPanel shuffled = panel.with_series(source, rebuild_source(x, options.method, rng));
    const CovarianceSet cov = covariance_set(shuffled, k, {target});
    flows[s] = cramer_coefficients(cov, target)[j] * factor;
  });
  return flows;
}

SignificanceReport surrogate_significance(const TimeSeriesPanel& panel, std::size_t source,
                                          std::size_t target, std::size_t k,
                                          const SurrogateOptions& options) {
  const FlowEstimate flow = estimate_flow(panel, source, target, k);
  const Vector flows = surrogate_flows(panel, source, target, k, options);
  const double observed = std::abs(flow.value);
  std::size_t exceed = 0;
  for (Eigen::Index s = 0; s < flows.size(); ++s) {
    if (std::abs(flows[s]) >= observed) ++exceed;
  }
  SignificanceReport r;
  r.n_surrogates = options.n_surrogates;
  r.p_surrogate =
      static_cast<double>(1 + exceed) / static_cast<double>(options.n_surrogates + 1);
  return r;
}

void attach(FlowEstimate& flow, const SignificanceReport& report) {
  if (report.n_surrogates > 0) {
    flow.p_value_surrogate = report.p_surrogate;
    return;
  }
  flow.std_error = report.std_error;
  flow.p_value_asymptotic = report.p_asymptotic;
}

}  // namespace infoflow
