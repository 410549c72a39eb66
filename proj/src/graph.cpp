#include "infoflow/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "infoflow/error.hpp"

namespace infoflow {
namespace {

using nlohmann::json;

std::string quote(const std::string& id) {
  std::string out = "\"";
  for (const char c : id) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

std::string format_g(const char* fmt, double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, fmt, v);
  return buffer;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

std::string_view to_string(Correction correction) noexcept {
  switch (correction) {
    case Correction::none: return "none";
    case Correction::bonferroni: return "bonferroni";
    case Correction::benjamini_hochberg: return "benjamini_hochberg";
  }
  return "none";
}

Correction correction_from_string(std::string_view name) {
  if (name == "none") return Correction::none;
  if (name == "bonferroni") return Correction::bonferroni;
  if (name == "benjamini_hochberg" || name == "bh" || name == "fdr")
    return Correction::benjamini_hochberg;
  throw Error(ErrorKind::usage, "unknown correction '" + std::string(name) + "'");
}

std::vector<double> adjust_p_values(const std::vector<double>& p, Correction correction) {
  const std::size_t m = p.size();
  std::vector<double> out(p);
  if (correction == Correction::bonferroni) {
    for (auto& v : out) v = std::min(1.0, v * static_cast<double>(m));
  } else if (correction == Correction::benjamini_hochberg) {
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return p[a] < p[b]; });
    double running = 1.0;
    for (std::size_t r = m; r-- > 0;) {
      const double scaled = p[order[r]] * static_cast<double>(m) / static_cast<double>(r + 1);
      running = std::min(running, scaled);
      out[order[r]] = std::min(1.0, running);
    }
  }
  return out;
}

CausalGraph reconstruct_graph(const FlowMatrix& matrix, double alpha, Correction correction) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorKind::usage, "alpha must lie in [0, 1]");
  const std::size_t d = matrix.dims();
  const auto& labels = matrix.labels();
  std::vector<double> raw;
  raw.reserve(matrix.flows().size());
  for (const auto& f : matrix.flows()) {
    if (f.source >= d || f.target >= d || f.source == f.target)
      throw Error(ErrorKind::input, "flow matrix entry has invalid indices");
    const auto p = f.p_value();
    if (!p) throw Error(ErrorKind::input, "flow matrix lacks p values; estimate significance first");
    raw.push_back(*p);
  }
  if (matrix.self_influence().size() != d)
    throw Error(ErrorKind::input, "self-influence count does not match node count");
  const std::vector<double> adjusted = adjust_p_values(raw, correction);

  CausalGraph g;
  g.nodes = labels;
  g.alpha = alpha;
  g.correction = correction;
  g.k = matrix.k();
  g.dt = matrix.dt();
  g.n_eff = matrix.n_eff();
  for (std::size_t e = 0; e < raw.size(); ++e) {
    if (!(adjusted[e] <= alpha)) continue;
    const auto& f = matrix.flows()[e];
    g.edges.push_back({labels[f.source], labels[f.target], f.value, f.normalized, adjusted[e]});
  }
  std::sort(g.edges.begin(), g.edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
    return std::tie(a.source, a.target) < std::tie(b.source, b.target);
  });
  for (const auto& s : matrix.self_influence()) {
    const double p = s.p_value.value_or(1.0);
    g.self_loops.push_back({labels[s.target], s.value, p, s.value != 0.0 && p <= alpha});
  }
  return g;
}

GraphFormat graph_format_from_string(std::string_view name) {
  if (name == "dot") return GraphFormat::dot;
  if (name == "json") return GraphFormat::json;
  throw Error(ErrorKind::usage, "unknown graph format '" + std::string(name) + "'");
}

std::string export_graph(const CausalGraph& graph, GraphFormat format) {
  return format == GraphFormat::dot ? to_dot(graph) : to_json(graph);
}

std::string to_dot(const CausalGraph& graph) {
  std::ostringstream out;
  out << "digraph G {\n";
  for (const auto& node : graph.nodes) out << "  " << quote(node) << ";\n";
  const auto edge_line = [&](const std::string& from, const std::string& to, double weight,
                             std::optional<double> normalized, const char* style) {
    const double width = 1.0 + 4.0 * std::abs(normalized.value_or(0.0));
    out << "  " << quote(from) << " -> " << quote(to) << " [label=\""
        << format_g("%.4g", weight) << "\", penwidth=" << format_g("%.3f", width) << style
        << "];\n";
  };
  for (const auto& e : graph.edges) edge_line(e.source, e.target, e.flow, e.normalized, "");
  for (const auto& s : graph.self_loops) {
    if (s.included) edge_line(s.node, s.node, s.value, std::nullopt, ", style=dashed");
  }
  out << "}\n";
  return out.str();
}

std::string to_json(const CausalGraph& graph) {
  json edges = json::array();
  for (const auto& e : graph.edges) {
    edges.push_back({{"source", e.source},
                     {"target", e.target},
                     {"flow", e.flow},
                     {"normalized", optional_number(e.normalized)},
                     {"p", e.p}});
  }
  json loops = json::array();
  for (const auto& s : graph.self_loops) {
    loops.push_back({{"node", s.node}, {"value", s.value}, {"p", s.p}, {"included", s.included}});
  }
  json doc = {{"schema", kGraphSchema},
              {"nodes", graph.nodes},
              {"edges", edges},
              {"self_loops", loops},
              {"meta",
               {{"alpha", graph.alpha},
                {"correction", to_string(graph.correction)},
                {"k", graph.k},
                {"dt", graph.dt},
                {"n_eff", graph.n_eff}}}};
  return doc.dump(2) + "\n";
}

CausalGraph graph_from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    if (doc.at("schema").get<std::string>() != kGraphSchema)
      throw Error(ErrorKind::format, "unsupported graph schema");
    CausalGraph g;
    g.nodes = doc.at("nodes").get<std::vector<std::string>>();
    for (const auto& e : doc.at("edges")) {
      GraphEdge edge;
      edge.source = e.at("source").get<std::string>();
      edge.target = e.at("target").get<std::string>();
      edge.flow = e.at("flow").get<double>();
      if (!e.at("normalized").is_null()) edge.normalized = e.at("normalized").get<double>();
      edge.p = e.at("p").get<double>();
      g.edges.push_back(std::move(edge));
    }
    for (const auto& s : doc.at("self_loops")) {
      g.self_loops.push_back({s.at("node").get<std::string>(), s.at("value").get<double>(),
                              s.at("p").get<double>(), s.at("included").get<bool>()});
    }
    const auto& meta = doc.at("meta");
    g.alpha = meta.at("alpha").get<double>();
    g.correction = correction_from_string(meta.at("correction").get<std::string>());
    g.k = meta.at("k").get<std::size_t>();
    g.dt = meta.at("dt").get<double>();
    g.n_eff = meta.at("n_eff").get<std::size_t>();
    return g;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::format, std::string("malformed graph JSON: ") + e.what());
  }
}

}  // namespace infoflow
