#pragma once

#include <compare>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "procscope/error.hpp"
#include "procscope/timestamp.hpp"

namespace procscope {

/// Object type reserved for process scopes.
inline constexpr std::string_view kProcessType = "process";

// Alternative order must match the variant below.
enum class ValueKind { String, Number, Boolean, Time };

using AttributeValue = std::variant<std::string, double, bool, Timestamp>;

ValueKind kind_of(const AttributeValue& value);
std::string_view to_string(ValueKind kind);

/// Attribute name -> declared value kind, for one event or object type.
using AttributeSchema = std::map<std::string, ValueKind, std::less<>>;
using TypeRegistry = std::map<std::string, AttributeSchema, std::less<>>;

struct Event {
  std::string id;
  std::string type;
  Timestamp time;
  // An attribute absent from the map is undefined for this event.
  std::map<std::string, AttributeValue, std::less<>> attributes;

  friend bool operator==(const Event&, const Event&) = default;
};

struct TimedValue {
  Timestamp time;
  AttributeValue value;

  friend bool operator==(const TimedValue&, const TimedValue&) = default;
};

struct ObjectEntity {
  std::string id;
  std::string type;
  // Per attribute: values sorted by strictly increasing time.
  std::map<std::string, std::vector<TimedValue>, std::less<>> attributes;

  friend bool operator==(const ObjectEntity&, const ObjectEntity&) = default;
};

/// (source, qualifier, target); E2O uses event -> object, O2O object -> object.
struct QualifiedRelation {
  std::string source;
  std::string qualifier;
  std::string target;

  friend auto operator<=>(const QualifiedRelation&,
                          const QualifiedRelation&) = default;
};

struct Violation {
  std::string code;
  std::string location;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool clean() const { return violations.empty(); }
  bool contains(std::string_view code) const;
  void add(std::string code, std::string location, std::string message);

  friend bool operator==(const ValidationReport&,
                         const ValidationReport&) = default;
};

/// A log (or ruleset) that failed validation; carries the full report.
class ModelError : public Error {
 public:
  explicit ModelError(ValidationReport report);

  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

/// Object linked to an event, as seen from the event.
struct ObjectLink {
  std::string_view qualifier;
  const ObjectEntity* object;
};

/// Immutable object-centric event log. Copies share the same underlying
/// data, so passing a Log by value is cheap and the object can be read from
/// many threads. Construct through LogBuilder.
class Log {
 public:
  Log();

  const TypeRegistry& event_types() const { return data_->event_types; }
  const TypeRegistry& object_types() const { return data_->object_types; }
  const std::map<std::string, Event, std::less<>>& events() const {
    return data_->events;
  }
  const std::map<std::string, ObjectEntity, std::less<>>& objects() const {
    return data_->objects;
  }
  const std::set<QualifiedRelation>& e2o() const { return data_->e2o; }
  const std::set<QualifiedRelation>& o2o() const { return data_->o2o; }

  const Event* find_event(std::string_view id) const;
  const ObjectEntity* find_object(std::string_view id) const;

  /// Objects of the given type in id order (empty span for unknown types).
  std::span<const ObjectEntity* const> objects_of_type(std::string_view type) const;
  /// Events of the given type in id order.
  std::span<const Event* const> events_of_type(std::string_view type) const;

  /// Structural equality; derived indexes are not compared.
  friend bool operator==(const Log& a, const Log& b);

 private:
  friend class LogBuilder;
  friend std::span<const Event* const> events_of_object(const Log&,
                                                        std::string_view);
  friend std::span<const ObjectLink> objects_of_event(const Log&,
                                                      std::string_view);

  struct Data {
    TypeRegistry event_types;
    TypeRegistry object_types;
    std::map<std::string, Event, std::less<>> events;
    std::map<std::string, ObjectEntity, std::less<>> objects;
    std::set<QualifiedRelation> e2o;
    std::set<QualifiedRelation> o2o;

    // Indexes over the maps above; relations with dangling endpoints are
    // left out.
    std::map<std::string, std::vector<const Event*>, std::less<>> events_by_object;
    std::map<std::string, std::vector<ObjectLink>, std::less<>> objects_by_event;
    std::map<std::string, std::vector<const Event*>, std::less<>> events_by_type;
    std::map<std::string, std::vector<const ObjectEntity*>, std::less<>>
        objects_by_type;

    void build_indexes();
  };

  explicit Log(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

  std::shared_ptr<const Data> data_;
};

/// Accumulates log content and freezes it into a Log. Duplicate ids are
/// rejected immediately (a map cannot hold them); duplicate relation triples
/// are dropped with a warning since relations are sets.
class LogBuilder {
 public:
  LogBuilder() = default;
  /// Starts from a copy of an existing log's content.
  explicit LogBuilder(const Log& base);

  LogBuilder& add_event_type(std::string name, AttributeSchema schema = {});
  LogBuilder& add_object_type(std::string name, AttributeSchema schema = {});
  LogBuilder& add_event(Event event);
  LogBuilder& add_object(ObjectEntity object);
  LogBuilder& add_e2o(std::string event_id, std::string qualifier,
                      std::string object_id);
  LogBuilder& add_o2o(std::string source_id, std::string qualifier,
                      std::string target_id);

  bool has_event(std::string_view id) const;
  bool has_object(std::string_view id) const;
  bool has_object_type(std::string_view name) const;
  bool has_e2o(const QualifiedRelation& r) const;
  bool has_o2o(const QualifiedRelation& r) const;

  const std::vector<std::string>& warnings() const { return warnings_; }

  Log build() &&;
  Log build() const&;

 private:
  std::shared_ptr<Log::Data> data_ = std::make_shared<Log::Data>();
  std::vector<std::string> warnings_;
};

/// Checks every well-formedness rule of an OCEL: unique non-empty ids,
/// disjoint event/object ids, registered types and attributes with matching
/// kinds, time-sorted object attribute histories, resolvable relation
/// endpoints and no O2O self-links. Findings are returned, never thrown.
ValidationReport validate_log(const Log& log);

struct ProcessWitness {
  std::string process_id;
  bool has_e2o = false;  // some (e, q, p) in E2O
  bool has_o2o = false;  // some (p, q, o) in O2O with o != p
  std::vector<std::string> issues;  // "missing-e2o" / "missing-o2o"

  bool qualifies() const { return has_e2o && has_o2o; }
};

struct PocelReport {
  bool verdict = false;
  std::vector<ProcessWitness> processes;  // every process object, id order

  std::vector<std::string> qualifying() const;
};

/// True when some process object has at least one E2O relation and at
/// least one O2O relation to a distinct object.
PocelReport is_pocel(const Log& log);

/// Events related to `object_id`, ordered by (time, event id).
/// Throws Error{"not-found"} for unknown ids.
std::span<const Event* const> events_of_object(const Log& log,
                                               std::string_view object_id);

/// Objects related to `event_id`, ordered by (qualifier, object id).
/// Throws Error{"not-found"} for unknown ids.
std::span<const ObjectLink> objects_of_event(const Log& log,
                                             std::string_view event_id);

}  // namespace procscope
