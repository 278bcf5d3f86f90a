#include <gtest/gtest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "procscope/ocel.hpp"
#include "procscope/scope_engine.hpp"
#include "procscope/scope_lang.hpp"

namespace procscope {
namespace {

using testing::sample_a;
using testing::sample_time;

std::vector<std::string> ids(std::span<const Event* const> events) {
  std::vector<std::string> out;
  for (const Event* e : events) out.push_back(e->id);
  return out;
}

std::vector<std::pair<std::string, std::string>> links(std::span<const ObjectLink> l) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const ObjectLink& x : l) out.emplace_back(std::string(x.qualifier), x.object->id);
  return out;
}

std::vector<std::string> codes(const ValidationReport& r) {
  std::vector<std::string> out;
  for (const Violation& v : r.violations) out.push_back(v.code);
  return out;
}

TEST(ValidateLog, EmptyLogIsClean) { EXPECT_TRUE(validate_log(Log()).clean()); }

TEST(ValidateLog, SampleAIsClean) {
  const ValidationReport r = validate_log(sample_a());
  EXPECT_TRUE(r.clean()) << (r.clean() ? "" : r.violations.front().message);
}

TEST(ValidateLog, DanglingE2O) {
  LogBuilder b(sample_a());
  b.add_e2o("e1", "rel", "ghost");
  const ValidationReport r = validate_log(b.build());
  EXPECT_EQ(codes(r), std::vector<std::string>{"dangling-e2o"});
  EXPECT_NE(r.violations.front().location.find("ghost"), std::string::npos);
}

TEST(ValidateLog, ReportsEachKindOfViolation) {
  LogBuilder b;
  b.add_object_type("order", {{"n", ValueKind::Number}});
  b.add_event_type("place", {{"who", ValueKind::String}});
  b.add_object({"o1", "order", {{"n", {{Timestamp(5), 1.0}, {Timestamp(5), 2.0}}}}});
  b.add_object({"o2", "order", {{"n", {{Timestamp(1), std::string("x")}}}}});
  b.add_object({"o3", "nope", {}});
  b.add_object({"o1x", "order", {{"zzz", {{Timestamp(1), 1.0}}}}});
  b.add_object({"", "order", {}});
  b.add_event({"o2", "place", Timestamp(1), {}});
  b.add_event({"e2", "unknown", Timestamp(1), {}});
  b.add_event({"e3", "place", Timestamp(1), {{"who", true}}});
  b.add_o2o("o1", "self", "o1");
  b.add_o2o("o1", "to", "missing");
  const ValidationReport r = validate_log(b.build());
  for (const char* c : {"empty-id", "id-collision", "unknown-event-type", "unknown-object-type",
                        "unknown-attribute", "attribute-kind-mismatch",
                        "unsorted-attribute-history", "dangling-o2o", "o2o-self-loop"}) {
    EXPECT_TRUE(r.contains(c)) << c;
  }
}

TEST(ValidateLog, IsPure) {
  LogBuilder b(sample_a());
  b.add_e2o("e1", "rel", "ghost");
  b.add_o2o("o1", "x", "o1");
  const Log log = b.build();
  EXPECT_EQ(validate_log(log), validate_log(log));
}

TEST(LogBuilder, RejectsDuplicateIdsAndDedupesRelations) {
  LogBuilder b(sample_a());
  try {
    b.add_event({"e1", "place", Timestamp(0), {}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "duplicate-id");
  }
  EXPECT_THROW(b.add_object({"o1", "order", {}}), Error);
  EXPECT_THROW(b.add_object_type("order"), Error);
  b.add_e2o("e1", "rel", "o1");
  EXPECT_EQ(b.warnings().size(), 1u);
  EXPECT_EQ(b.build().e2o().size(), 8u);
}

TEST(Log, CopiesShareImmutableData) {
  const Log a = sample_a();
  const Log b = a;
  EXPECT_EQ(&a.events(), &b.events());
  EXPECT_EQ(a, b);
  LogBuilder extended(a);
  extended.add_event({"e6", "ship", sample_time(6), {}});
  const Log c = extended.build();
  EXPECT_EQ(a.events().size(), 5u);
  EXPECT_EQ(c.events().size(), 6u);
  EXPECT_FALSE(a == c);
}

TEST(EventsOfObject, SampleA) {
  const Log log = sample_a();
  EXPECT_EQ(ids(events_of_object(log, "o1")), (std::vector<std::string>{"e1", "e2", "e3"}));
  EXPECT_EQ(ids(events_of_object(log, "i1")), (std::vector<std::string>{"e2", "e4", "e5"}));
}

TEST(EventsOfObject, ObjectWithoutRelations) {
  LogBuilder b(sample_a());
  b.add_object({"lonely", "order", {}});
  EXPECT_TRUE(events_of_object(b.build(), "lonely").empty());
}

TEST(EventsOfObject, UnknownIdIsNotFound) {
  try {
    events_of_object(sample_a(), "nope");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "not-found");
  }
}

TEST(EventsOfObject, TiesBreakByEventId) {
  LogBuilder b;
  b.add_object_type("t");
  b.add_event_type("a");
  b.add_object({"o", "t", {}});
  for (const char* id : {"b", "c", "a"}) {
    b.add_event({id, "a", Timestamp(7), {}});
    b.add_e2o(id, "q", "o");
  }
  b.add_event({"z", "a", Timestamp(1), {}});
  b.add_e2o("z", "q", "o");
  b.add_e2o("a", "other", "o");  // second qualifier, same event
  EXPECT_EQ(ids(events_of_object(b.build(), "o")),
            (std::vector<std::string>{"z", "a", "b", "c"}));
}

TEST(ObjectsOfEvent, SampleA) {
  const Log log = sample_a();
  using P = std::pair<std::string, std::string>;
  EXPECT_EQ(links(objects_of_event(log, "e2")), (std::vector<P>{{"rel", "i1"}, {"rel", "o1"}}));
  EXPECT_EQ(links(objects_of_event(log, "e4")), (std::vector<P>{{"rel", "i1"}, {"rel", "i2"}}));
  EXPECT_THROW(objects_of_event(log, "nope"), Error);
}

TEST(ObjectsOfEvent, EventWithoutRelations) {
  LogBuilder b(sample_a());
  b.add_event({"e9", "ship", sample_time(9), {}});
  EXPECT_TRUE(objects_of_event(b.build(), "e9").empty());
}

TEST(TypeIndexes, ListObjectsAndEventsOfAType) {
  const Log log = sample_a();
  EXPECT_EQ(log.objects_of_type("item").size(), 2u);
  EXPECT_EQ(log.events_of_type("pick").size(), 3u);
  EXPECT_TRUE(log.events_of_type("nope").empty());
}

TEST(IsPocel, NoProcessObjects) {
  const PocelReport r = is_pocel(sample_a());
  EXPECT_FALSE(r.verdict);
  EXPECT_TRUE(r.processes.empty());
}

TEST(IsPocel, SampleAWithP1) {
  const Log log = apply_scope(sample_a(), "P1", parse_ruleset("INCLUDE {(order)}"));
  const PocelReport r = is_pocel(log);
  EXPECT_TRUE(r.verdict);
  EXPECT_EQ(r.qualifying(), std::vector<std::string>{"P1"});
}

TEST(IsPocel, ProcessWithoutO2OIsFlagged) {
  LogBuilder b(sample_a());
  b.add_object_type("process");
  b.add_object({"P", "process", {}});
  b.add_e2o("e1", "in_scope", "P");
  const PocelReport r = is_pocel(b.build());
  EXPECT_FALSE(r.verdict);
  ASSERT_EQ(r.processes.size(), 1u);
  EXPECT_TRUE(r.processes[0].has_e2o);
  EXPECT_FALSE(r.processes[0].has_o2o);
  EXPECT_EQ(r.processes[0].issues, std::vector<std::string>{"missing-o2o"});
}

TEST(IsPocel, ProcessWithoutE2OIsFlagged) {
  LogBuilder b(sample_a());
  b.add_object_type("process");
  b.add_object({"P", "process", {}});
  b.add_o2o("P", "involves", "o1");
  const PocelReport r = is_pocel(b.build());
  EXPECT_FALSE(r.verdict);
  EXPECT_EQ(r.processes[0].issues, std::vector<std::string>{"missing-e2o"});
}

}  // namespace
}  // namespace procscope
