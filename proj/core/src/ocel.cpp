#include "procscope/ocel.hpp"

#include <algorithm>
#include <tuple>

namespace procscope {

std::string to_string(const SourceLocation& loc) {
  return std::to_string(loc.line) + ":" + std::to_string(loc.column);
}

ValueKind kind_of(const AttributeValue& value) {
  return static_cast<ValueKind>(value.index());
}

std::string_view to_string(ValueKind kind) {
  switch (kind) {
    case ValueKind::String:
      return "string";
    case ValueKind::Number:
      return "number";
    case ValueKind::Boolean:
      return "boolean";
    case ValueKind::Time:
      return "time";
  }
  return "unknown";
}

bool ValidationReport::contains(std::string_view code) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.code == code; });
}

void ValidationReport::add(std::string code, std::string location,
                           std::string message) {
  violations.push_back({std::move(code), std::move(location), std::move(message)});
}

namespace {

std::string summarize(const ValidationReport& report) {
  if (report.clean()) return "model error";
  const Violation& first = report.violations.front();
  std::string msg = first.code + " at " + first.location + ": " + first.message;
  if (report.violations.size() > 1) {
    msg += " (+" + std::to_string(report.violations.size() - 1) + " more)";
  }
  return msg;
}

}  // namespace

ModelError::ModelError(ValidationReport report)
    : Error("model-error", summarize(report)), report_(std::move(report)) {}

// ---------------------------------------------------------------------------
// Log

Log::Log() : data_(std::make_shared<const Data>()) {}

void Log::Data::build_indexes() {
  events_by_object.clear();
  objects_by_event.clear();
  events_by_type.clear();
  objects_by_type.clear();

  for (const auto& [id, event] : events) events_by_type[event.type].push_back(&event);
  for (const auto& [id, object] : objects) {
    objects_by_type[object.type].push_back(&object);
  }

  for (const QualifiedRelation& r : e2o) {
    auto ev = events.find(r.source);
    auto ob = objects.find(r.target);
    if (ev == events.end() || ob == objects.end()) continue;
    events_by_object[r.target].push_back(&ev->second);
    // e2o is ordered by (event, qualifier, object), which is exactly the
    // per-event (qualifier, object) order.
    objects_by_event[r.source].push_back({r.qualifier, &ob->second});
  }
  for (auto& [oid, timeline] : events_by_object) {
    std::sort(timeline.begin(), timeline.end(), [](const Event* a, const Event* b) {
      return std::tie(a->time, a->id) < std::tie(b->time, b->id);
    });
    // Several qualifiers may link the same pair; keep one entry per event.
    timeline.erase(std::unique(timeline.begin(), timeline.end()), timeline.end());
  }
}

const Event* Log::find_event(std::string_view id) const {
  auto it = data_->events.find(id);
  return it == data_->events.end() ? nullptr : &it->second;
}

const ObjectEntity* Log::find_object(std::string_view id) const {
  auto it = data_->objects.find(id);
  return it == data_->objects.end() ? nullptr : &it->second;
}

std::span<const ObjectEntity* const> Log::objects_of_type(std::string_view type) const {
  auto it = data_->objects_by_type.find(type);
  if (it == data_->objects_by_type.end()) return {};
  return it->second;
}

std::span<const Event* const> Log::events_of_type(std::string_view type) const {
  auto it = data_->events_by_type.find(type);
  if (it == data_->events_by_type.end()) return {};
  return it->second;
}

bool operator==(const Log& a, const Log& b) {
  if (a.data_ == b.data_) return true;
  const Log::Data& x = *a.data_;
  const Log::Data& y = *b.data_;
  return x.event_types == y.event_types && x.object_types == y.object_types &&
         x.events == y.events && x.objects == y.objects && x.e2o == y.e2o &&
         x.o2o == y.o2o;
}

std::span<const Event* const> events_of_object(const Log& log,
                                               std::string_view object_id) {
  if (log.find_object(object_id) == nullptr) {
    throw Error("not-found", "unknown object id '" + std::string(object_id) + "'");
  }
  const auto& index = log.data_->events_by_object;
  auto it = index.find(object_id);
  if (it == index.end()) return {};
  return it->second;
}

std::span<const ObjectLink> objects_of_event(const Log& log,
                                             std::string_view event_id) {
  if (log.find_event(event_id) == nullptr) {
    throw Error("not-found", "unknown event id '" + std::string(event_id) + "'");
  }
  const auto& index = log.data_->objects_by_event;
  auto it = index.find(event_id);
  if (it == index.end()) return {};
  return it->second;
}

// ---------------------------------------------------------------------------
// LogBuilder

LogBuilder::LogBuilder(const Log& base) {
  const Log::Data& src = *base.data_;
  data_->event_types = src.event_types;
  data_->object_types = src.object_types;
  data_->events = src.events;
  data_->objects = src.objects;
  data_->e2o = src.e2o;
  data_->o2o = src.o2o;
}

LogBuilder& LogBuilder::add_event_type(std::string name, AttributeSchema schema) {
  auto [it, inserted] = data_->event_types.try_emplace(std::move(name), std::move(schema));
  if (!inserted) throw Error("duplicate-type", "event type '" + it->first + "' declared twice");
  return *this;
}

LogBuilder& LogBuilder::add_object_type(std::string name, AttributeSchema schema) {
  auto [it, inserted] = data_->object_types.try_emplace(std::move(name), std::move(schema));
  if (!inserted) throw Error("duplicate-type", "object type '" + it->first + "' declared twice");
  return *this;
}

LogBuilder& LogBuilder::add_event(Event event) {
  std::string id = event.id;
  auto [it, inserted] = data_->events.try_emplace(std::move(id), std::move(event));
  if (!inserted) throw Error("duplicate-id", "event id '" + it->first + "' used twice");
  return *this;
}

LogBuilder& LogBuilder::add_object(ObjectEntity object) {
  std::string id = object.id;
  auto [it, inserted] = data_->objects.try_emplace(std::move(id), std::move(object));
  if (!inserted) throw Error("duplicate-id", "object id '" + it->first + "' used twice");
  return *this;
}

LogBuilder& LogBuilder::add_e2o(std::string event_id, std::string qualifier,
                                std::string object_id) {
  QualifiedRelation r{std::move(event_id), std::move(qualifier), std::move(object_id)};
  if (!data_->e2o.insert(r).second) {
    warnings_.push_back("duplicate E2O relation (" + r.source + ", " + r.qualifier +
                        ", " + r.target + ") dropped");
  }
  return *this;
}

LogBuilder& LogBuilder::add_o2o(std::string source_id, std::string qualifier,
                                std::string target_id) {
  QualifiedRelation r{std::move(source_id), std::move(qualifier), std::move(target_id)};
  if (!data_->o2o.insert(r).second) {
    warnings_.push_back("duplicate O2O relation (" + r.source + ", " + r.qualifier +
                        ", " + r.target + ") dropped");
  }
  return *this;
}

bool LogBuilder::has_event(std::string_view id) const {
  return data_->events.find(id) != data_->events.end();
}

bool LogBuilder::has_object(std::string_view id) const {
  return data_->objects.find(id) != data_->objects.end();
}

bool LogBuilder::has_object_type(std::string_view name) const {
  return data_->object_types.find(name) != data_->object_types.end();
}

bool LogBuilder::has_e2o(const QualifiedRelation& r) const {
  return data_->e2o.count(r) > 0;
}

bool LogBuilder::has_o2o(const QualifiedRelation& r) const {
  return data_->o2o.count(r) > 0;
}

Log LogBuilder::build() && {
  std::shared_ptr<Log::Data> data = std::move(data_);
  data_ = std::make_shared<Log::Data>();
  data->build_indexes();
  return Log(std::move(data));
}

Log LogBuilder::build() const& {
  auto data = std::make_shared<Log::Data>();
  data->event_types = data_->event_types;
  data->object_types = data_->object_types;
  data->events = data_->events;
  data->objects = data_->objects;
  data->e2o = data_->e2o;
  data->o2o = data_->o2o;
  data->build_indexes();
  return Log(std::move(data));
}

// ---------------------------------------------------------------------------
// Validation

ValidationReport validate_log(const Log& log) {
  ValidationReport report;

  for (const auto& [name, schema] : log.event_types()) {
    if (name.empty()) report.add("empty-id", "eventTypes", "event type with empty name");
  }
  for (const auto& [name, schema] : log.object_types()) {
    if (name.empty()) report.add("empty-id", "objectTypes", "object type with empty name");
  }

  for (const auto& [id, event] : log.events()) {
    const std::string where = "events[" + id + "]";
    if (id.empty()) report.add("empty-id", where, "event with empty id");
    if (log.find_object(id) != nullptr) {
      report.add("id-collision", where, "id '" + id + "' is both an event and an object");
    }
    auto type = log.event_types().find(event.type);
    if (type == log.event_types().end()) {
      report.add("unknown-event-type", where, "event type '" + event.type + "' is not declared");
      continue;
    }
    for (const auto& [attr, value] : event.attributes) {
      auto decl = type->second.find(attr);
      if (decl == type->second.end()) {
        report.add("unknown-attribute", where + ".attributes[" + attr + "]",
                   "attribute not declared for event type '" + event.type + "'");
      } else if (decl->second != kind_of(value)) {
        report.add("attribute-kind-mismatch", where + ".attributes[" + attr + "]",
                   "declared " + std::string(to_string(decl->second)) + ", got " +
                       std::string(to_string(kind_of(value))));
      }
    }
  }

  for (const auto& [id, object] : log.objects()) {
    const std::string where = "objects[" + id + "]";
    if (id.empty()) report.add("empty-id", where, "object with empty id");
    auto type = log.object_types().find(object.type);
    if (type == log.object_types().end()) {
      report.add("unknown-object-type", where,
                 "object type '" + object.type + "' is not declared");
      continue;
    }
    for (const auto& [attr, history] : object.attributes) {
      const std::string attr_where = where + ".attributes[" + attr + "]";
      auto decl = type->second.find(attr);
      if (decl == type->second.end()) {
        report.add("unknown-attribute", attr_where,
                   "attribute not declared for object type '" + object.type + "'");
        continue;
      }
      for (std::size_t i = 0; i < history.size(); ++i) {
        if (kind_of(history[i].value) != decl->second) {
          report.add("attribute-kind-mismatch", attr_where,
                     "declared " + std::string(to_string(decl->second)) + ", got " +
                         std::string(to_string(kind_of(history[i].value))));
        }
        if (i > 0 && !(history[i - 1].time < history[i].time)) {
          report.add("unsorted-attribute-history", attr_where,
                     "values must have strictly increasing timestamps");
        }
      }
    }
  }

  for (const QualifiedRelation& r : log.e2o()) {
    const std::string where = "e2o(" + r.source + ", " + r.qualifier + ", " + r.target + ")";
    if (r.qualifier.empty()) report.add("empty-id", where, "empty qualifier");
    if (log.find_event(r.source) == nullptr) {
      report.add("dangling-e2o", where, "source event '" + r.source + "' does not exist");
    }
    if (log.find_object(r.target) == nullptr) {
      report.add("dangling-e2o", where, "target object '" + r.target + "' does not exist");
    }
  }
  for (const QualifiedRelation& r : log.o2o()) {
    const std::string where = "o2o(" + r.source + ", " + r.qualifier + ", " + r.target + ")";
    if (r.qualifier.empty()) report.add("empty-id", where, "empty qualifier");
    if (log.find_object(r.source) == nullptr) {
      report.add("dangling-o2o", where, "source object '" + r.source + "' does not exist");
    }
    if (log.find_object(r.target) == nullptr) {
      report.add("dangling-o2o", where, "target object '" + r.target + "' does not exist");
    }
    if (r.source == r.target) {
      report.add("o2o-self-loop", where, "an object may not relate to itself");
    }
  }
  return report;
}

std::vector<std::string> PocelReport::qualifying() const {
  std::vector<std::string> ids;
  for (const ProcessWitness& w : processes) {
    if (w.qualifies()) ids.push_back(w.process_id);
  }
  return ids;
}

PocelReport is_pocel(const Log& log) {
  PocelReport report;
  for (const ObjectEntity* process : log.objects_of_type(kProcessType)) {
    ProcessWitness w;
    w.process_id = process->id;
    w.has_e2o = !events_of_object(log, process->id).empty();
    auto first = log.o2o().lower_bound(QualifiedRelation{process->id, "", ""});
    for (auto it = first; it != log.o2o().end() && it->source == process->id; ++it) {
      if (it->target != process->id && log.find_object(it->target) != nullptr) {
        w.has_o2o = true;
        break;
      }
    }
    if (!w.has_e2o) w.issues.emplace_back("missing-e2o");
    if (!w.has_o2o) w.issues.emplace_back("missing-o2o");
    report.verdict = report.verdict || w.qualifies();
    report.processes.push_back(std::move(w));
  }
  return report;
}

}  // namespace procscope
