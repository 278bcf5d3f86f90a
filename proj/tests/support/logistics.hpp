#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "procscope/ocel.hpp"
#include "procscope/scope_lang.hpp"

namespace procscope::testing {

/// Synthetic container-logistics log in four phases (order, goods,
/// transportation, export) with a forklift pool that shuttles between
/// stock and loading bay. The generator records which scope every emitted
/// event and object should land in.
struct LogisticsFixture {
  Log log;
  std::string scope_file;
  std::vector<std::string> scope_names;  // in file order
  std::map<std::string, std::size_t> expected_events;
  std::map<std::string, std::set<std::string>> expected_objects;
};

inline constexpr const char* kOrderScope = "Order Management";
inline constexpr const char* kGoodsScope = "Goods Management";
inline constexpr const char* kTransportScope = "Transportation Management";
inline constexpr const char* kExportScope = "Export Management";

LogisticsFixture make_logistics(std::uint64_t seed = 42, int orders = 340);

}  // namespace procscope::testing
