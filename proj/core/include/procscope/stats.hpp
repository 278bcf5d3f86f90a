#pragma once

#include <cstddef>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "procscope/ocel.hpp"

namespace procscope {

struct LogStats {
  std::size_t event_count = 0;
  std::size_t object_count = 0;
  std::map<std::string, std::size_t> events_per_type;
  std::map<std::string, std::size_t> objects_per_type;
  std::size_t e2o_count = 0;
  std::size_t o2o_count = 0;
  bool pocel = false;
  // Only filled when `pocel`; process id -> number of related events.
  std::map<std::string, std::size_t> events_per_process;

  friend bool operator==(const LogStats&, const LogStats&) = default;
};

LogStats compute_stats(const Log& log);

/// Plain-text report, one `label  value` row per line.
std::string format_stats(const LogStats& stats);

nlohmann::ordered_json stats_to_json(const LogStats& stats);

/// Event types, object types and their attribute schemas, for UI pickers.
nlohmann::ordered_json registries_to_json(const Log& log);

}  // namespace procscope
