#include "procscope/beg_graph.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <set>
#include <utility>

namespace procscope {
namespace {

void require_pocel(const Log& log) {
  if (!is_pocel(log).verdict) {
    throw Error("not-pocel", "the log contains no process object with E2O and O2O relations");
  }
}

std::map<std::string, IdSet, std::less<>> membership_of(const Log& log) {
  std::map<std::string, IdSet, std::less<>> out;
  for (const auto& [id, event] : log.events()) out.emplace_hint(out.end(), id, IdSet{});
  for (const ObjectEntity* process : log.objects_of_type(kProcessType)) {
    for (const Event* e : events_of_object(log, process->id)) {
      out[e->id].insert(process->id);
    }
  }
  return out;
}

std::vector<Handover> handovers_of(const Log& log,
                                   const std::map<std::string, IdSet, std::less<>>& membership) {
  std::vector<Handover> out;
  for (const auto& [oid, object] : log.objects()) {
    if (object.type == kProcessType) continue;
    const Event* prev = nullptr;
    const IdSet* prev_set = nullptr;
    for (const Event* e : events_of_object(log, oid)) {
      const IdSet& set = membership.find(e->id)->second;
      if (set.empty()) continue;
      if (prev != nullptr && set != *prev_set) {
        for (const std::string& a : *prev_set) {
          if (set.count(a) != 0) continue;
          for (const std::string& b : set) {
            if (prev_set->count(b) != 0) continue;
            out.push_back({oid, object.type, a, b, e->time.millis() - prev->time.millis()});
          }
        }
      }
      prev = e;
      prev_set = &set;
    }
  }
  return out;
}

struct TypeAccumulator {
  std::set<std::string> objects;
  std::size_t transitions = 0;
  std::int64_t total_ms = 0;
};

struct EdgeAccumulator {
  std::set<std::string> objects;
  std::size_t transitions = 0;
  std::int64_t total_ms = 0;
  std::map<std::string, TypeAccumulator> per_type;
};

double mean(std::int64_t total, std::size_t count) {
  return count == 0 ? 0.0 : static_cast<double>(total) / static_cast<double>(count);
}

}  // namespace

const ProcessNode* ExecutionGraph::find_node(std::string_view id) const {
  auto it = std::find_if(nodes.begin(), nodes.end(),
                         [&](const ProcessNode& n) { return n.process_id == id; });
  return it == nodes.end() ? nullptr : &*it;
}

const GraphEdge* ExecutionGraph::find_edge(std::string_view source,
                                           std::string_view target) const {
  auto it = std::find_if(edges.begin(), edges.end(), [&](const GraphEdge& e) {
    return e.source == source && e.target == target;
  });
  return it == edges.end() ? nullptr : &*it;
}

std::map<std::string, IdSet, std::less<>> process_membership(const Log& log) {
  require_pocel(log);
  return membership_of(log);
}

std::vector<Handover> derive_handovers(const Log& log) {
  require_pocel(log);
  return handovers_of(log, membership_of(log));
}

ExecutionGraph build_graph(const Log& log) {
  require_pocel(log);
  return build_graph(log, handovers_of(log, membership_of(log)));
}

ExecutionGraph build_graph(const Log& log, const std::vector<Handover>& handovers) {
  ExecutionGraph graph;
  for (const ObjectEntity* process : log.objects_of_type(kProcessType)) {
    ProcessNode node;
    node.process_id = process->id;
    std::set<std::string_view> objects;
    std::set<std::string_view> types;
    for (const Event* e : events_of_object(log, process->id)) {
      ++node.event_count;
      for (const ObjectLink& link : objects_of_event(log, e->id)) {
        if (link.object->type == kProcessType) continue;
        objects.insert(link.object->id);
        types.insert(link.object->type);
      }
    }
    node.object_count = objects.size();
    node.type_diversity = types.size();
    graph.nodes.push_back(std::move(node));
  }

  std::map<std::pair<std::string, std::string>, EdgeAccumulator> acc;
  for (const Handover& h : handovers) {
    EdgeAccumulator& edge = acc[{h.source_process, h.target_process}];
    edge.objects.insert(h.object_id);
    ++edge.transitions;
    edge.total_ms += h.flow_time_ms;
    TypeAccumulator& t = edge.per_type[h.object_type];
    t.objects.insert(h.object_id);
    ++t.transitions;
    t.total_ms += h.flow_time_ms;
  }

  std::map<std::string, std::pair<std::size_t, std::size_t>> degrees;  // in, out
  for (auto& [key, a] : acc) {
    GraphEdge edge;
    edge.source = key.first;
    edge.target = key.second;
    edge.shared_object_count = a.objects.size();
    edge.transition_count = a.transitions;
    edge.mean_flow_time_ms = mean(a.total_ms, a.transitions);
    for (const auto& [type, t] : a.per_type) {
      edge.per_type[type] = {t.objects.size(), t.transitions, mean(t.total_ms, t.transitions)};
    }
    ++degrees[edge.source].second;
    ++degrees[edge.target].first;
    graph.edges.push_back(std::move(edge));
  }
  for (ProcessNode& node : graph.nodes) {
    auto it = degrees.find(node.process_id);
    if (it == degrees.end()) continue;
    node.in_degree = it->second.first;
    node.out_degree = it->second.second;
    node.total_degree = node.in_degree + node.out_degree;
  }
  return graph;
}

// ---------------------------------------------------------------------------
// Exports

std::string_view to_string(NodeSizeMetric m) {
  return m == NodeSizeMetric::ObjectCount ? "object_count" : "type_diversity";
}

std::string_view to_string(EdgeLabel l) {
  switch (l) {
    case EdgeLabel::ObjectTypes:
      return "object_types";
    case EdgeLabel::SharedObjects:
      return "shared_objects";
    case EdgeLabel::AvgFlowTime:
      return "avg_flow_time";
  }
  return "shared_objects";
}

std::string_view to_string(DegreeMode d) {
  switch (d) {
    case DegreeMode::In:
      return "in";
    case DegreeMode::Out:
      return "out";
    case DegreeMode::Total:
      return "total";
  }
  return "total";
}

std::optional<NodeSizeMetric> node_size_from_string(std::string_view s) {
  if (s == "object_count") return NodeSizeMetric::ObjectCount;
  if (s == "type_diversity") return NodeSizeMetric::TypeDiversity;
  return std::nullopt;
}

std::optional<EdgeLabel> edge_label_from_string(std::string_view s) {
  if (s == "object_types") return EdgeLabel::ObjectTypes;
  if (s == "shared_objects") return EdgeLabel::SharedObjects;
  if (s == "avg_flow_time") return EdgeLabel::AvgFlowTime;
  return std::nullopt;
}

std::optional<DegreeMode> degree_mode_from_string(std::string_view s) {
  if (s == "in") return DegreeMode::In;
  if (s == "out") return DegreeMode::Out;
  if (s == "total") return DegreeMode::Total;
  return std::nullopt;
}

std::string humanize_duration(std::int64_t ms) {
  if (ms < 0) return "-" + humanize_duration(-ms);
  if (ms < 1000) return std::to_string(ms) + "ms";
  constexpr std::array<std::pair<std::int64_t, const char*>, 4> kUnits{{
      {86'400'000, "d"},
      {3'600'000, "h"},
      {60'000, "m"},
      {1'000, "s"},
  }};
  std::size_t first = 0;
  while (ms < kUnits[first].first) ++first;
  const std::int64_t major = ms / kUnits[first].first;
  std::string out = std::to_string(major) + kUnits[first].second;
  if (first + 1 < kUnits.size()) {
    const std::int64_t rest = ms % kUnits[first].first;
    const std::int64_t minor = rest / kUnits[first + 1].first;
    if (minor > 0) out += " " + std::to_string(minor) + kUnits[first + 1].second;
  }
  return out;
}

namespace {

bool dot_keyword(std::string_view id) {
  std::string lower;
  for (char c : id) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return lower == "node" || lower == "edge" || lower == "graph" || lower == "digraph" ||
         lower == "subgraph" || lower == "strict";
}

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  out += '"';
  return out;
}

std::string dot_id(std::string_view id) {
  const bool bare =
      !id.empty() && !std::isdigit(static_cast<unsigned char>(id.front())) &&
      std::all_of(id.begin(), id.end(),
                  [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }) &&
      !dot_keyword(id);
  return bare ? std::string(id) : dot_quote(id);
}

constexpr std::array<const char*, 5> kPalette{"#eff3ff", "#bdd7e7", "#6baed6", "#3182bd",
                                              "#08519c"};

std::size_t degree_of(const ProcessNode& n, DegreeMode mode) {
  switch (mode) {
    case DegreeMode::In:
      return n.in_degree;
    case DegreeMode::Out:
      return n.out_degree;
    case DegreeMode::Total:
      return n.total_degree;
  }
  return n.total_degree;
}

std::string edge_label(const GraphEdge& e, EdgeLabel label) {
  switch (label) {
    case EdgeLabel::ObjectTypes: {
      std::string out;
      for (const auto& [type, flow] : e.per_type) {
        if (!out.empty()) out += ", ";
        out += type;
      }
      return out;
    }
    case EdgeLabel::SharedObjects:
      return std::to_string(e.shared_object_count);
    case EdgeLabel::AvgFlowTime:
      return humanize_duration(std::llround(e.mean_flow_time_ms));
  }
  return {};
}

std::string fixed2(double v) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.2f", v);
  return buf.data();
}

}  // namespace

std::string export_dot(const ExecutionGraph& graph, const GraphView& view) {
  auto size_of = [&](const ProcessNode& n) {
    return static_cast<double>(view.node_size == NodeSizeMetric::ObjectCount ? n.object_count
                                                                             : n.type_diversity);
  };
  double min_size = 0, max_size = 0;
  std::size_t min_deg = 0, max_deg = 0;
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    const double s = size_of(graph.nodes[i]);
    const std::size_t d = degree_of(graph.nodes[i], view.node_color);
    min_size = i == 0 ? s : std::min(min_size, s);
    max_size = i == 0 ? s : std::max(max_size, s);
    min_deg = i == 0 ? d : std::min(min_deg, d);
    max_deg = i == 0 ? d : std::max(max_deg, d);
  }

  std::vector<const ProcessNode*> nodes;
  for (const ProcessNode& n : graph.nodes) nodes.push_back(&n);
  std::sort(nodes.begin(), nodes.end(),
            [](const ProcessNode* a, const ProcessNode* b) { return a->process_id < b->process_id; });
  std::vector<const GraphEdge*> edges;
  for (const GraphEdge& e : graph.edges) edges.push_back(&e);
  std::sort(edges.begin(), edges.end(), [](const GraphEdge* a, const GraphEdge* b) {
    return std::tie(a->source, a->target) < std::tie(b->source, b->target);
  });

  std::string out = "digraph BEG {\n";
  out += "  rankdir=LR;\n";
  out += "  node [shape=ellipse, style=filled, fontname=\"Helvetica\"];\n";
  out += "  edge [fontname=\"Helvetica\"];\n";
  for (const ProcessNode* n : nodes) {
    const double s = size_of(*n);
    const double width =
        max_size > min_size ? 0.5 + 2.5 * (s - min_size) / (max_size - min_size) : 1.75;
    std::size_t bucket = 0;
    if (max_deg > min_deg) {
      bucket = (degree_of(*n, view.node_color) - min_deg) * kPalette.size() / (max_deg - min_deg);
      bucket = std::min(bucket, kPalette.size() - 1);
    }
    out += "  " + dot_id(n->process_id) + " [label=" + dot_quote(n->process_id) +
           ", width=" + fixed2(width) + ", fillcolor=\"" + kPalette[bucket] + "\"";
    if (bucket >= 3) out += ", fontcolor=\"white\"";
    out += "];\n";
  }
  for (const GraphEdge* e : edges) {
    out += "  " + dot_id(e->source) + " -> " + dot_id(e->target) +
           " [label=" + dot_quote(edge_label(*e, view.edge_label)) + "];\n";
  }
  out += "}\n";
  return out;
}

nlohmann::ordered_json export_vosviewer(const ExecutionGraph& graph) {
  using nlohmann::ordered_json;
  std::map<std::string, int> index;
  ordered_json items = ordered_json::array();
  int next_id = 1;
  for (const ProcessNode& n : graph.nodes) {
    index[n.process_id] = next_id;
    items.push_back({{"id", next_id},
                     {"label", n.process_id},
                     {"weights",
                      {{"object_count", n.object_count},
                       {"type_diversity", n.type_diversity},
                       {"event_count", n.event_count}}}});
    ++next_id;
  }

  struct Merged {
    std::size_t strength = 0;
    std::vector<std::string> notes;
  };
  std::map<std::pair<int, int>, Merged> merged;
  for (const GraphEdge& e : graph.edges) {
    const int a = index.at(e.source);
    const int b = index.at(e.target);
    Merged& m = merged[{std::min(a, b), std::max(a, b)}];
    m.strength += e.shared_object_count;
    m.notes.push_back(e.source + "->" + e.target + ": " + std::to_string(e.shared_object_count));
  }
  ordered_json links = ordered_json::array();
  for (const auto& [key, m] : merged) {
    std::string note;
    for (const std::string& n : m.notes) note += (note.empty() ? "" : "; ") + n;
    links.push_back({{"source_id", key.first},
                     {"target_id", key.second},
                     {"strength", m.strength},
                     {"directed_note", note}});
  }
  return {{"network", {{"items", std::move(items)}, {"links", std::move(links)}}}};
}

nlohmann::ordered_json export_graph_json(const ExecutionGraph& graph) {
  using nlohmann::ordered_json;
  ordered_json nodes = ordered_json::array();
  for (const ProcessNode& n : graph.nodes) {
    nodes.push_back({{"process_id", n.process_id},
                     {"event_count", n.event_count},
                     {"object_count", n.object_count},
                     {"type_diversity", n.type_diversity},
                     {"in_degree", n.in_degree},
                     {"out_degree", n.out_degree},
                     {"total_degree", n.total_degree}});
  }
  ordered_json edges = ordered_json::array();
  for (const GraphEdge& e : graph.edges) {
    ordered_json per_type = ordered_json::object();
    for (const auto& [type, t] : e.per_type) {
      per_type[type] = {{"object_count", t.object_count},
                        {"transition_count", t.transition_count},
                        {"mean_flow_time_ms", t.mean_flow_time_ms}};
    }
    edges.push_back({{"source", e.source},
                     {"target", e.target},
                     {"shared_object_count", e.shared_object_count},
                     {"transition_count", e.transition_count},
                     {"mean_flow_time_ms", e.mean_flow_time_ms},
                     {"per_type", std::move(per_type)}});
  }
  return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

namespace {

using nlohmann::json;

const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw SchemaError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + "." + key, "missing required key");
  return *it;
}

std::size_t count_field(const json& obj, const char* key, const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw SchemaError(path + "." + key, "expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

double number_field(const json& obj, const char* key, const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_number()) throw SchemaError(path + "." + key, "expected a number");
  return v.get<double>();
}

std::string string_field(const json& obj, const char* key, const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_string()) throw SchemaError(path + "." + key, "expected a string");
  return v.get<std::string>();
}

}  // namespace

ExecutionGraph graph_from_json(const json& doc) {
  ExecutionGraph g;
  const json& nodes = field(doc, "nodes", "$");
  const json& edges = field(doc, "edges", "$");
  if (!nodes.is_array()) throw SchemaError("$.nodes", "expected an array");
  if (!edges.is_array()) throw SchemaError("$.edges", "expected an array");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string p = "$.nodes[" + std::to_string(i) + "]";
    const json& n = nodes[i];
    g.nodes.push_back({string_field(n, "process_id", p), count_field(n, "event_count", p),
                       count_field(n, "object_count", p), count_field(n, "type_diversity", p),
                       count_field(n, "in_degree", p), count_field(n, "out_degree", p),
                       count_field(n, "total_degree", p)});
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string p = "$.edges[" + std::to_string(i) + "]";
    const json& e = edges[i];
    GraphEdge edge;
    edge.source = string_field(e, "source", p);
    edge.target = string_field(e, "target", p);
    edge.shared_object_count = count_field(e, "shared_object_count", p);
    edge.transition_count = count_field(e, "transition_count", p);
    edge.mean_flow_time_ms = number_field(e, "mean_flow_time_ms", p);
    const json& per_type = field(e, "per_type", p);
    if (!per_type.is_object()) throw SchemaError(p + ".per_type", "expected an object");
    for (const auto& [type, t] : per_type.items()) {
      const std::string tp = p + ".per_type." + type;
      edge.per_type[type] = {count_field(t, "object_count", tp),
                             count_field(t, "transition_count", tp),
                             number_field(t, "mean_flow_time_ms", tp)};
    }
    g.edges.push_back(std::move(edge));
  }
  return g;
}

}  // namespace procscope
