#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "procscope/stats.hpp"

namespace procscope {
namespace {

TEST(Stats, SampleA) {
  const LogStats s = compute_stats(testing::sample_a());
  EXPECT_EQ(s.event_count, 5u);
  EXPECT_EQ(s.object_count, 3u);
  EXPECT_EQ(s.events_per_type.at("pick"), 3u);
  EXPECT_EQ(s.objects_per_type.at("item"), 2u);
  EXPECT_EQ(s.e2o_count, 8u);
  EXPECT_EQ(s.o2o_count, 0u);
  EXPECT_FALSE(s.pocel);
  EXPECT_TRUE(s.events_per_process.empty());
  const std::string table = format_stats(s);
  EXPECT_NE(table.find("events   5\n"), std::string::npos) << table;
  EXPECT_NE(table.find("POCEL    no\n"), std::string::npos) << table;
}

TEST(Stats, Enriched) {
  const LogStats s = compute_stats(testing::sample_a_enriched());
  EXPECT_TRUE(s.pocel);
  EXPECT_EQ(s.events_per_process.at("P1"), 3u);
  EXPECT_EQ(s.events_per_process.at("P2"), 1u);
  EXPECT_NE(format_stats(s).find("P1"), std::string::npos);
  EXPECT_EQ(stats_to_json(s)["events_per_process"]["P2"], 1);
}

TEST(Stats, EmptyLog) {
  const LogStats s = compute_stats(Log());
  EXPECT_EQ(s, LogStats{});
  EXPECT_NE(format_stats(s).find("objects  0"), std::string::npos);
}

TEST(Stats, Registries) {
  const auto j = registries_to_json(testing::sample_a());
  EXPECT_EQ(j["event_types"].size(), 3u);
  EXPECT_EQ(j["object_types"][0]["name"], "item");
  EXPECT_EQ(j["object_types"][0]["attributes"][0]["kind"], "number");
}

}  // namespace
}  // namespace procscope
