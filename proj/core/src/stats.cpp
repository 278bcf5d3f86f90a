#include "procscope/stats.hpp"

#include <algorithm>

namespace procscope {

LogStats compute_stats(const Log& log) {
  LogStats s;
  s.event_count = log.events().size();
  s.object_count = log.objects().size();
  for (const auto& [type, schema] : log.event_types()) {
    s.events_per_type[type] = log.events_of_type(type).size();
  }
  for (const auto& [type, schema] : log.object_types()) {
    s.objects_per_type[type] = log.objects_of_type(type).size();
  }
  s.e2o_count = log.e2o().size();
  s.o2o_count = log.o2o().size();
  s.pocel = is_pocel(log).verdict;
  if (s.pocel) {
    for (const ObjectEntity* p : log.objects_of_type(kProcessType)) {
      s.events_per_process[p->id] = events_of_object(log, p->id).size();
    }
  }
  return s;
}

namespace {

void row(std::string& out, std::string_view label, const std::string& value, std::size_t width) {
  out += label;
  out.append(width - label.size() + 2, ' ');
  out += value;
  out += '\n';
}

}  // namespace

std::string format_stats(const LogStats& s) {
  std::size_t width = 7;  // "objects"
  auto widen = [&](const std::map<std::string, std::size_t>& m) {
    for (const auto& [k, v] : m) width = std::max(width, k.size() + 2);
  };
  widen(s.events_per_type);
  widen(s.objects_per_type);
  widen(s.events_per_process);

  std::string out;
  row(out, "events", std::to_string(s.event_count), width);
  for (const auto& [type, n] : s.events_per_type) row(out, "  " + type, std::to_string(n), width);
  row(out, "objects", std::to_string(s.object_count), width);
  for (const auto& [type, n] : s.objects_per_type) row(out, "  " + type, std::to_string(n), width);
  row(out, "e2o", std::to_string(s.e2o_count), width);
  row(out, "o2o", std::to_string(s.o2o_count), width);
  row(out, "POCEL", s.pocel ? "yes" : "no", width);
  if (s.pocel) {
    out += "processes\n";
    for (const auto& [pid, n] : s.events_per_process) {
      row(out, "  " + pid, std::to_string(n) + " events", width);
    }
  }
  return out;
}

nlohmann::ordered_json stats_to_json(const LogStats& s) {
  nlohmann::ordered_json j;
  j["event_count"] = s.event_count;
  j["object_count"] = s.object_count;
  j["events_per_type"] = s.events_per_type;
  j["objects_per_type"] = s.objects_per_type;
  j["e2o_count"] = s.e2o_count;
  j["o2o_count"] = s.o2o_count;
  j["pocel"] = s.pocel;
  j["events_per_process"] = s.events_per_process;
  return j;
}

namespace {

nlohmann::ordered_json registry_json(const TypeRegistry& reg) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& [name, schema] : reg) {
    nlohmann::ordered_json attrs = nlohmann::ordered_json::array();
    for (const auto& [attr, kind] : schema) {
      attrs.push_back({{"name", attr}, {"kind", std::string(to_string(kind))}});
    }
    out.push_back({{"name", name}, {"attributes", std::move(attrs)}});
  }
  return out;
}

}  // namespace

nlohmann::ordered_json registries_to_json(const Log& log) {
  return {{"event_types", registry_json(log.event_types())},
          {"object_types", registry_json(log.object_types())}};
}

}  // namespace procscope
