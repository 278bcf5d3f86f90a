#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "procscope/beg_graph.hpp"
#include "procscope/scope_engine.hpp"
#include "procscope/scope_lang.hpp"

namespace procscope {
namespace {

using testing::sample_a;
using testing::sample_a_enriched;
using testing::sample_time;

std::int64_t hours(int h) { return h * 3'600'000LL; }

// SAMPLE-A where P1 also covers e5, so i1 returns to P1 after the shipment.
Log loop_variant() {
  return apply_scopes(sample_a(),
                      parse_scope_file("SCOPE P1 : INCLUDE {(place), (pick)};\n"
                                       "SCOPE P2 : INCLUDE {(ship)};\n"));
}

std::string error_code(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return "no error";
}

TEST(ProcessMembership, SampleA) {
  const auto m = process_membership(sample_a_enriched());
  ASSERT_EQ(m.size(), 5u);
  EXPECT_EQ(m.at("e1"), IdSet{"P1"});
  EXPECT_EQ(m.at("e2"), IdSet{"P1"});
  EXPECT_EQ(m.at("e3"), IdSet{"P1"});
  EXPECT_EQ(m.at("e4"), IdSet{"P2"});
  EXPECT_TRUE(m.at("e5").empty());
}

TEST(ProcessMembership, AggregateParent) {
  const Log log = apply_scope(sample_a_enriched(), "P3",
                              parse_ruleset("INCLUDE {(process, id, =, \"P1\")}"));
  const auto m = process_membership(log);
  EXPECT_EQ(m.at("e1"), (IdSet{"P1", "P3"}));
  EXPECT_EQ(m.at("e4"), IdSet{"P2"});
}

TEST(ProcessMembership, NotPocel) {
  EXPECT_EQ(error_code([] { process_membership(sample_a()); }), "not-pocel");
  EXPECT_EQ(error_code([] { derive_handovers(sample_a()); }), "not-pocel");
  EXPECT_EQ(error_code([] { build_graph(sample_a()); }), "not-pocel");
}

TEST(DeriveHandovers, SampleA) {
  const std::vector<Handover> h = derive_handovers(sample_a_enriched());
  const std::vector<Handover> expected = {
      {"i1", "item", "P1", "P2", hours(2)},
      {"i2", "item", "P1", "P2", hours(1)},
  };
  EXPECT_EQ(h, expected);
}

TEST(DeriveHandovers, LoopVariant) {
  const std::vector<Handover> h = derive_handovers(loop_variant());
  const std::vector<Handover> expected = {
      {"i1", "item", "P1", "P2", hours(2)},
      {"i1", "item", "P2", "P1", hours(1)},
      {"i2", "item", "P1", "P2", hours(1)},
  };
  EXPECT_EQ(h, expected);
}

TEST(DeriveHandovers, SingleProcessHasNone) {
  const Log log = apply_scope(sample_a(), "P", parse_ruleset("INCLUDE {(item)}"));
  EXPECT_TRUE(derive_handovers(log).empty());
}

TEST(DeriveHandovers, ExpansionIntoParentIsNotAHandover) {
  // e1..e3 are in {P1, P3}, e4 in {P2}: P1 and P3 both hand over to P2.
  const Log log = apply_scope(sample_a_enriched(), "P3",
                              parse_ruleset("INCLUDE {(process, id, =, \"P1\")}"));
  const std::vector<Handover> h = derive_handovers(log);
  ASSERT_EQ(h.size(), 4u);
  EXPECT_EQ(h[0].source_process, "P1");
  EXPECT_EQ(h[1].source_process, "P3");
  for (const Handover& x : h) EXPECT_EQ(x.target_process, "P2");
}

TEST(BuildGraph, SampleA) {
  const ExecutionGraph g = build_graph(sample_a_enriched());
  ASSERT_EQ(g.nodes.size(), 2u);
  const ProcessNode& p1 = g.nodes[0];
  EXPECT_EQ(p1.process_id, "P1");
  EXPECT_EQ(p1.event_count, 3u);
  EXPECT_EQ(p1.object_count, 3u);
  EXPECT_EQ(p1.type_diversity, 2u);
  EXPECT_EQ(p1.out_degree, 1u);
  EXPECT_EQ(p1.in_degree, 0u);
  EXPECT_EQ(p1.total_degree, 1u);
  const ProcessNode& p2 = g.nodes[1];
  EXPECT_EQ(p2.event_count, 1u);
  EXPECT_EQ(p2.object_count, 2u);
  EXPECT_EQ(p2.type_diversity, 1u);
  EXPECT_EQ(p2.in_degree, 1u);

  ASSERT_EQ(g.edges.size(), 1u);
  const GraphEdge& e = g.edges[0];
  EXPECT_EQ(e.source, "P1");
  EXPECT_EQ(e.target, "P2");
  EXPECT_EQ(e.shared_object_count, 2u);
  EXPECT_EQ(e.transition_count, 2u);
  EXPECT_DOUBLE_EQ(e.mean_flow_time_ms, (hours(2) + hours(1)) / 2.0);
  ASSERT_EQ(e.per_type.size(), 1u);
  EXPECT_EQ(e.per_type.at("item"), (TypeFlow{2, 2, (hours(2) + hours(1)) / 2.0}));
  EXPECT_EQ(g.find_edge("P1", "P2"), &g.edges[0]);
  EXPECT_EQ(g.find_edge("P2", "P1"), nullptr);
}

TEST(BuildGraph, OneProcess) {
  const ExecutionGraph g =
      build_graph(apply_scope(sample_a(), "P", parse_ruleset("INCLUDE {(item)}")));
  EXPECT_EQ(g.nodes.size(), 1u);
  EXPECT_TRUE(g.edges.empty());
}

TEST(ExportDot, OneNode) {
  const ExecutionGraph g =
      build_graph(apply_scope(sample_a(), "P", parse_ruleset("INCLUDE {(item)}")));
  const std::string dot = export_dot(g);
  EXPECT_EQ(dot.rfind("digraph BEG {", 0), 0u);
  EXPECT_NE(dot.find("  P [label=\"P\", width=1.75"), std::string::npos);
  EXPECT_EQ(dot.find("->"), std::string::npos);
  EXPECT_EQ(dot.back(), '\n');
}

TEST(ExportDot, EdgeLabels) {
  const ExecutionGraph g = build_graph(sample_a_enriched());
  EXPECT_NE(export_dot(g).find("P1 -> P2 [label=\"2\"]"), std::string::npos);
  GraphView view;
  view.edge_label = EdgeLabel::ObjectTypes;
  EXPECT_NE(export_dot(g, view).find("P1 -> P2 [label=\"item\"]"), std::string::npos);
  view.edge_label = EdgeLabel::AvgFlowTime;
  EXPECT_NE(export_dot(g, view).find("P1 -> P2 [label=\"1h 30m\"]"), std::string::npos);
}

TEST(ExportDot, WidthAndColorScaling) {
  const ExecutionGraph g = build_graph(sample_a_enriched());
  const std::string dot = export_dot(g);
  // P1 has 3 objects, P2 has 2: the extremes of the range.
  EXPECT_NE(dot.find("P1 [label=\"P1\", width=3.00"), std::string::npos) << dot;
  EXPECT_NE(dot.find("P2 [label=\"P2\", width=0.50"), std::string::npos) << dot;
  GraphView by_in;
  by_in.node_color = DegreeMode::In;
  const std::string colored = export_dot(g, by_in);
  EXPECT_NE(colored.find("P1 [label=\"P1\", width=3.00, fillcolor=\"#eff3ff\"]"), std::string::npos)
      << colored;
  EXPECT_NE(colored.find("P2 [label=\"P2\", width=0.50, fillcolor=\"#08519c\""), std::string::npos)
      << colored;
}

TEST(ExportDot, QuotesAwkwardIds) {
  ExecutionGraph g;
  g.nodes.push_back({"Order Management", 1, 1, 1, 0, 1, 1});
  g.nodes.push_back({"node", 1, 1, 1, 1, 0, 1});
  g.edges.push_back({"Order Management", "node", 1, 1, {{"a\"b", {1, 1, 5.0}}}, 5.0});
  GraphView view;
  view.edge_label = EdgeLabel::ObjectTypes;
  const std::string dot = export_dot(g, view);
  EXPECT_NE(dot.find("\"Order Management\" -> \"node\" [label=\"a\\\"b\"]"), std::string::npos)
      << dot;
}

TEST(ExportDot, Deterministic) {
  const ExecutionGraph g = build_graph(loop_variant());
  EXPECT_EQ(export_dot(g), export_dot(build_graph(loop_variant())));
}

TEST(HumanizeDuration, Units) {
  EXPECT_EQ(humanize_duration(250), "250ms");
  EXPECT_EQ(humanize_duration(42'000), "42s");
  EXPECT_EQ(humanize_duration(185'000), "3m 5s");
  EXPECT_EQ(humanize_duration(hours(52)), "2d 4h");
  EXPECT_EQ(humanize_duration(hours(48) + 59'000), "2d");
  EXPECT_EQ(humanize_duration(0), "0ms");
}

TEST(ExportVosviewer, EmptyEdges) {
  const ExecutionGraph g =
      build_graph(apply_scope(sample_a(), "P", parse_ruleset("INCLUDE {(item)}")));
  const auto doc = export_vosviewer(g);
  EXPECT_EQ(doc["network"]["items"].size(), 1u);
  EXPECT_TRUE(doc["network"]["links"].empty());
}

TEST(ExportVosviewer, SampleA) {
  const auto doc = export_vosviewer(build_graph(sample_a_enriched()));
  ASSERT_EQ(doc["network"]["items"].size(), 2u);
  EXPECT_EQ(doc["network"]["items"][0]["label"], "P1");
  EXPECT_EQ(doc["network"]["items"][0]["weights"]["object_count"], 3);
  ASSERT_EQ(doc["network"]["links"].size(), 1u);
  EXPECT_EQ(doc["network"]["links"][0]["strength"], 2);
}

TEST(ExportVosviewer, ReciprocalEdgesMerge) {
  const ExecutionGraph g = build_graph(loop_variant());
  ASSERT_EQ(g.edges.size(), 2u);
  const auto doc = export_vosviewer(g);
  ASSERT_EQ(doc["network"]["links"].size(), 1u);
  const auto& link = doc["network"]["links"][0];
  EXPECT_EQ(link["strength"], g.edges[0].shared_object_count + g.edges[1].shared_object_count);
  EXPECT_EQ(link["directed_note"], "P1->P2: 2; P2->P1: 1");
}

TEST(ExportGraphJson, Empty) {
  EXPECT_EQ(export_graph_json(ExecutionGraph{}).dump(), R"({"nodes":[],"edges":[]})");
}

TEST(ExportGraphJson, RoundTripsThroughReader) {
  for (const Log& log : {sample_a_enriched(), loop_variant()}) {
    const ExecutionGraph g = build_graph(log);
    const auto doc = export_graph_json(g);
    EXPECT_EQ(graph_from_json(nlohmann::json::parse(doc.dump())), g);
  }
  EXPECT_THROW(graph_from_json(nlohmann::json::parse(R"({"nodes":[{}],"edges":[]})")),
               SchemaError);
}

TEST(ExportGraphJson, PerTypeSumsMatchTotals) {
  const auto doc = export_graph_json(build_graph(loop_variant()));
  for (const auto& edge : doc["edges"]) {
    std::size_t transitions = 0;
    for (const auto& [type, t] : edge["per_type"].items()) transitions += t["transition_count"].get<std::size_t>();
    EXPECT_EQ(transitions, edge["transition_count"].get<std::size_t>());
  }
}

TEST(ViewEnums, ParseAndPrint) {
  for (const char* s : {"object_types", "shared_objects", "avg_flow_time"}) {
    EXPECT_EQ(to_string(*edge_label_from_string(s)), s);
  }
  for (const char* s : {"object_count", "type_diversity"}) {
    EXPECT_EQ(to_string(*node_size_from_string(s)), s);
  }
  for (const char* s : {"in", "out", "total"}) EXPECT_EQ(to_string(*degree_mode_from_string(s)), s);
  EXPECT_FALSE(edge_label_from_string("x"));
}

}  // namespace
}  // namespace procscope
