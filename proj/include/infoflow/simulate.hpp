#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "infoflow/analytic.hpp"
#include "infoflow/panel.hpp"

namespace infoflow {

struct SimulationSpec {
  LinearSDE sys;
  std::size_t n = 0;
  double dt = 0.01;
  std::size_t burn_in = 10000;
  std::uint64_t seed = 0;
  /// Initial state; zero when empty.
  Vector x0;
  /// Series names; x1..xd when empty.
  std::vector<std::string> labels;
};

/// |X| beyond this aborts a run as numerically unstable.
inline constexpr double kExplosionBound = 1e12;

/// X_{m+1} = X_m + (f + A X_m) dt + B sqrt(dt) xi_m, keeping the n states
/// after the first burn_in steps. Same seed, same panel, bit for bit.
TimeSeriesPanel euler_maruyama(const SimulationSpec& spec);

/// Euler-Maruyama run whose drift switches from spec.sys to `after` at
/// output sample `switch_at` (burn-in runs under spec.sys).
TimeSeriesPanel euler_maruyama_switching(const SimulationSpec& spec, const LinearSDE& after,
                                         std::size_t switch_at);

/// Directed edge between 0-based component indices.
struct Edge {
  std::size_t source = 0;
  std::size_t target = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct BenchmarkParams {
  /// Dimension for independent_d.
  std::size_t d = 4;
  double dt = 0.01;
  std::size_t burn_in = 10000;
};

struct BenchmarkRun {
  std::string name;
  TimeSeriesPanel panel;
  /// Planted cross edges.
  std::vector<Edge> true_edges;
  /// Generating system; absent for the Henon map.
  std::optional<LinearSDE> sys;
  double dt = 1.0;
  std::size_t burn_in = 0;
  std::uint64_t seed = 0;
};

const std::vector<std::string>& benchmark_names();

/// Planted-structure system behind a linear benchmark (not henon).
LinearSDE benchmark_system(const std::string& name, const BenchmarkParams& params = {});
std::vector<Edge> benchmark_edges(const std::string& name, const BenchmarkParams& params = {});

/// one_way_2d, chain_3, confounder_3, independent_d or henon.
BenchmarkRun benchmark(const std::string& name, const BenchmarkParams& params, std::size_t n,
                       std::uint64_t seed);

/// "2->1" style label with 1-based indices.
std::string edge_label(const Edge& e);

}  // namespace infoflow
