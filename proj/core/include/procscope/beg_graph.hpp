#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "procscope/ocel.hpp"
#include "procscope/scope_engine.hpp"

namespace procscope {

struct ProcessNode {
  std::string process_id;
  std::size_t event_count = 0;
  std::size_t object_count = 0;    // distinct non-process objects of its events
  std::size_t type_diversity = 0;  // distinct types among those objects
  std::size_t in_degree = 0;
  std::size_t out_degree = 0;
  std::size_t total_degree = 0;

  friend bool operator==(const ProcessNode&, const ProcessNode&) = default;
};

/// An object leaving `source_process` and entering `target_process` between
/// two consecutive events of its timeline.
struct Handover {
  std::string object_id;
  std::string object_type;
  std::string source_process;
  std::string target_process;
  std::int64_t flow_time_ms = 0;

  friend bool operator==(const Handover&, const Handover&) = default;
};

struct TypeFlow {
  std::size_t object_count = 0;
  std::size_t transition_count = 0;
  double mean_flow_time_ms = 0;

  friend bool operator==(const TypeFlow&, const TypeFlow&) = default;
};

struct GraphEdge {
  std::string source;
  std::string target;
  std::size_t shared_object_count = 0;
  std::size_t transition_count = 0;
  std::map<std::string, TypeFlow> per_type;
  double mean_flow_time_ms = 0;

  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

/// Nodes sorted by process id, edges by (source, target).
struct ExecutionGraph {
  std::vector<ProcessNode> nodes;
  std::vector<GraphEdge> edges;

  const ProcessNode* find_node(std::string_view id) const;
  const GraphEdge* find_edge(std::string_view source, std::string_view target) const;

  friend bool operator==(const ExecutionGraph&, const ExecutionGraph&) = default;
};

/// Event id -> ids of the process objects the event is related to. Every
/// event of the log is present, unscoped ones with an empty set. Throws
/// Error{"not-pocel"}.
std::map<std::string, IdSet, std::less<>> process_membership(const Log& log);

/// For every non-process object, walks its timeline (skipping events in no
/// process) and, wherever consecutive membership sets differ, emits one
/// handover for each (departed, entered) process pair. Ordered by object
/// id, timeline position, then (source, target). Throws Error{"not-pocel"}.
std::vector<Handover> derive_handovers(const Log& log);

/// One node per process object and one edge per ordered process pair with
/// at least one handover. Throws Error{"not-pocel"}.
ExecutionGraph build_graph(const Log& log);

/// Groups given handovers into edges; node metrics are taken from `log`.
ExecutionGraph build_graph(const Log& log, const std::vector<Handover>& handovers);

// ---------------------------------------------------------------------------
// Exports

enum class NodeSizeMetric { ObjectCount, TypeDiversity };
enum class EdgeLabel { ObjectTypes, SharedObjects, AvgFlowTime };
enum class DegreeMode { In, Out, Total };

std::string_view to_string(NodeSizeMetric m);
std::string_view to_string(EdgeLabel l);
std::string_view to_string(DegreeMode d);
std::optional<NodeSizeMetric> node_size_from_string(std::string_view s);
std::optional<EdgeLabel> edge_label_from_string(std::string_view s);
std::optional<DegreeMode> degree_mode_from_string(std::string_view s);

struct GraphView {
  NodeSizeMetric node_size = NodeSizeMetric::ObjectCount;
  EdgeLabel edge_label = EdgeLabel::SharedObjects;
  DegreeMode node_color = DegreeMode::Total;
};

/// `2d 4h`, `3m 5s`, `42s`, `250ms`: the two most significant non-zero
/// units, truncated.
std::string humanize_duration(std::int64_t ms);

/// Graphviz digraph. Node width is the chosen size metric min-max scaled to
/// [0.5, 3.0]; fill color is one of five sequential shades picked by
/// equal-width buckets over the observed range of the chosen degree.
std::string export_dot(const ExecutionGraph& graph, const GraphView& view = {});

/// VOSviewer network JSON. Links are undirected there, so reciprocal edges
/// merge into one link whose strength is the sum of shared object counts;
/// `directed_note` records the directed parts.
nlohmann::ordered_json export_vosviewer(const ExecutionGraph& graph);

/// Full-fidelity graph JSON:
///   {"nodes": [{"process_id", "event_count", "object_count",
///               "type_diversity", "in_degree", "out_degree",
///               "total_degree"}],
///    "edges": [{"source", "target", "shared_object_count",
///               "transition_count", "mean_flow_time_ms",
///               "per_type": {type: {"object_count", "transition_count",
///                                   "mean_flow_time_ms"}}}]}
nlohmann::ordered_json export_graph_json(const ExecutionGraph& graph);

/// Reads the document written by export_graph_json. Throws SchemaError.
ExecutionGraph graph_from_json(const nlohmann::json& doc);

}  // namespace procscope
