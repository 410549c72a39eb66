#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "infoflow/estimator.hpp"

namespace infoflow {

enum class Correction { none, bonferroni, benjamini_hochberg };

std::string_view to_string(Correction correction) noexcept;
Correction correction_from_string(std::string_view name);

/// Multiple-testing adjusted p values, in input order, clamped to [0, 1].
std::vector<double> adjust_p_values(const std::vector<double>& p, Correction correction);

struct GraphEdge {
  std::string source;
  std::string target;
  double flow = 0.0;
  std::optional<double> normalized;
  /// Adjusted p value.
  double p = 1.0;
  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

struct SelfLoop {
  std::string node;
  double value = 0.0;
  double p = 1.0;
  bool included = false;
  friend bool operator==(const SelfLoop&, const SelfLoop&) = default;
};

struct CausalGraph {
  std::vector<std::string> nodes;
  /// Sorted by (source, target) label.
  std::vector<GraphEdge> edges;
  std::vector<SelfLoop> self_loops;
  double alpha = 0.05;
  Correction correction = Correction::none;
  std::size_t k = 1;
  double dt = 1.0;
  std::size_t n_eff = 0;
  friend bool operator==(const CausalGraph&, const CausalGraph&) = default;
};

/// Keeps edge j -> i iff its adjusted p value is <= alpha. A flow's p value
/// is its surrogate p when present, otherwise the asymptotic p. Self loop i
/// is included iff its self-influence is nonzero with asymptotic p <= alpha.
CausalGraph reconstruct_graph(const FlowMatrix& matrix, double alpha,
                              Correction correction = Correction::none);

enum class GraphFormat { dot, json };
GraphFormat graph_format_from_string(std::string_view name);

std::string export_graph(const CausalGraph& graph, GraphFormat format);
std::string to_dot(const CausalGraph& graph);
std::string to_json(const CausalGraph& graph);
/// Inverse of to_json.
CausalGraph graph_from_json(std::string_view text);

inline constexpr std::string_view kGraphSchema = "infoflow-graph/1";

}  // namespace infoflow
