#include "procscope/ocel_json.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <initializer_list>

#include <nlohmann/json.hpp>

namespace procscope {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

class Decoder {
 public:
  explicit Decoder(std::vector<std::string>& warnings) : warnings_(warnings) {}

  Log decode(const json& doc) {
    if (!doc.is_object()) throw SchemaError("$", "top-level value must be an object");
    warn_unknown(doc, "$", {"objectTypes", "eventTypes", "objects", "events"});

    const json& object_types = require_array(doc, "objectTypes", "$");
    const json& event_types = require_array(doc, "eventTypes", "$");
    const json& objects = require_array(doc, "objects", "$");
    const json& events = require_array(doc, "events", "$");

    try {
      for (std::size_t i = 0; i < object_types.size(); ++i) {
        auto [name, schema] = decode_type(object_types[i], "objectTypes[" + std::to_string(i) + "]");
        object_schemas_[name] = schema;
        builder_.add_object_type(std::move(name), std::move(schema));
      }
      for (std::size_t i = 0; i < event_types.size(); ++i) {
        auto [name, schema] = decode_type(event_types[i], "eventTypes[" + std::to_string(i) + "]");
        event_schemas_[name] = schema;
        builder_.add_event_type(std::move(name), std::move(schema));
      }
      for (std::size_t i = 0; i < objects.size(); ++i) {
        decode_object(objects[i], "objects[" + std::to_string(i) + "]");
      }
      for (std::size_t i = 0; i < events.size(); ++i) {
        decode_event(events[i], "events[" + std::to_string(i) + "]");
      }
    } catch (const SchemaError&) {
      throw;
    } catch (const Error& e) {
      // duplicate ids / type names from the builder
      ValidationReport report;
      report.add(e.code(), "$", e.what());
      throw ModelError(std::move(report));
    }

    for (const std::string& w : builder_.warnings()) warnings_.push_back(w);
    Log log = std::move(builder_).build();
    ValidationReport report = validate_log(log);
    if (!report.clean()) throw ModelError(std::move(report));
    return log;
  }

 private:
  void warn_unknown(const json& obj, const std::string& path,
                    std::initializer_list<std::string_view> known) {
    for (const auto& [key, value] : obj.items()) {
      if (std::find(known.begin(), known.end(), key) == known.end()) {
        warnings_.push_back("ignored unknown key " + path + "." + key);
      }
    }
  }

  static const json& require(const json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(path + "." + key, "missing required key");
    return *it;
  }

  static const json& require_array(const json& obj, const char* key,
                                   const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_array()) throw SchemaError(path + "." + key, "expected an array");
    return v;
  }

  static std::string require_string(const json& obj, const char* key,
                                    const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_string()) throw SchemaError(path + "." + key, "expected a string");
    return v.get<std::string>();
  }

  static const json* optional_array(const json& obj, const char* key,
                                    const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return nullptr;
    if (!it->is_array()) throw SchemaError(path + "." + key, "expected an array");
    return &*it;
  }

  static ValueKind decode_kind(const json& v, const std::string& path) {
    if (!v.is_string()) throw SchemaError(path, "expected a type name string");
    const std::string s = v.get<std::string>();
    if (s == "string") return ValueKind::String;
    if (s == "float" || s == "double" || s == "integer" || s == "int" || s == "number") {
      return ValueKind::Number;
    }
    if (s == "boolean" || s == "bool") return ValueKind::Boolean;
    if (s == "time" || s == "date" || s == "datetime" || s == "timestamp") {
      return ValueKind::Time;
    }
    throw SchemaError(path, "unknown attribute type '" + s + "'");
  }

  std::pair<std::string, AttributeSchema> decode_type(const json& entry,
                                                      const std::string& path) {
    if (!entry.is_object()) throw SchemaError(path, "expected an object");
    warn_unknown(entry, path, {"name", "attributes"});
    std::string name = require_string(entry, "name", path);
    AttributeSchema schema;
    if (const json* attrs = optional_array(entry, "attributes", path)) {
      for (std::size_t i = 0; i < attrs->size(); ++i) {
        const std::string apath = path + ".attributes[" + std::to_string(i) + "]";
        const json& a = (*attrs)[i];
        if (!a.is_object()) throw SchemaError(apath, "expected an object");
        warn_unknown(a, apath, {"name", "type"});
        std::string aname = require_string(a, "name", apath);
        ValueKind kind = decode_kind(require(a, "type", apath), apath + ".type");
        schema.emplace(std::move(aname), kind);
      }
    }
    return {std::move(name), std::move(schema)};
  }

  static Timestamp decode_time(const json& v, const std::string& path) {
    Timestamp t;
    if (!v.is_string() || !try_parse_iso8601(v.get<std::string>(), t)) {
      throw SchemaError(path, "expected an ISO-8601 timestamp string");
    }
    return t;
  }

  // Decodes a value for a declared kind; undeclared attributes fall back to
  // the JSON type so validation can report them by name.
  static AttributeValue decode_value(const json& v, const ValueKind* declared,
                                     const std::string& path) {
    if (declared == nullptr) {
      if (v.is_string()) return v.get<std::string>();
      if (v.is_boolean()) return v.get<bool>();
      if (v.is_number()) return v.get<double>();
      throw SchemaError(path, "expected a scalar value");
    }
    switch (*declared) {
      case ValueKind::String:
        if (v.is_string()) return v.get<std::string>();
        break;
      case ValueKind::Number:
        if (v.is_number()) return v.get<double>();
        if (v.is_string()) {
          const std::string s = v.get<std::string>();
          double d = 0;
          auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), d);
          if (ec == std::errc() && end == s.data() + s.size() && !s.empty()) return d;
        }
        break;
      case ValueKind::Boolean:
        if (v.is_boolean()) return v.get<bool>();
        if (v.is_string() && (v == "true" || v == "false")) return v == "true";
        break;
      case ValueKind::Time:
        return decode_time(v, path);
    }
    throw SchemaError(path, "value does not match declared type " +
                                std::string(to_string(*declared)));
  }

  static const ValueKind* lookup(const std::map<std::string, AttributeSchema>& schemas,
                                 const std::string& type, const std::string& attr) {
    auto t = schemas.find(type);
    if (t == schemas.end()) return nullptr;
    auto a = t->second.find(attr);
    return a == t->second.end() ? nullptr : &a->second;
  }

  void decode_relationships(const json& entry, const std::string& path,
                            const std::string& source, bool event_source) {
    const json* rels = optional_array(entry, "relationships", path);
    if (rels == nullptr) return;
    for (std::size_t i = 0; i < rels->size(); ++i) {
      const std::string rpath = path + ".relationships[" + std::to_string(i) + "]";
      const json& r = (*rels)[i];
      if (!r.is_object()) throw SchemaError(rpath, "expected an object");
      warn_unknown(r, rpath, {"objectId", "qualifier"});
      std::string target = require_string(r, "objectId", rpath);
      std::string qualifier = require_string(r, "qualifier", rpath);
      if (event_source) {
        builder_.add_e2o(source, std::move(qualifier), std::move(target));
      } else {
        builder_.add_o2o(source, std::move(qualifier), std::move(target));
      }
    }
  }

  void decode_object(const json& entry, const std::string& path) {
    if (!entry.is_object()) throw SchemaError(path, "expected an object");
    warn_unknown(entry, path, {"id", "type", "attributes", "relationships"});
    ObjectEntity object;
    object.id = require_string(entry, "id", path);
    object.type = require_string(entry, "type", path);
    if (const json* attrs = optional_array(entry, "attributes", path)) {
      for (std::size_t i = 0; i < attrs->size(); ++i) {
        const std::string apath = path + ".attributes[" + std::to_string(i) + "]";
        const json& a = (*attrs)[i];
        if (!a.is_object()) throw SchemaError(apath, "expected an object");
        warn_unknown(a, apath, {"name", "time", "value"});
        std::string name = require_string(a, "name", apath);
        Timestamp time = Timestamp::min();
        if (auto t = a.find("time"); t != a.end() && !t->is_null()) {
          time = decode_time(*t, apath + ".time");
        }
        AttributeValue value = decode_value(require(a, "value", apath),
                                            lookup(object_schemas_, object.type, name),
                                            apath + ".value");
        object.attributes[name].push_back({time, std::move(value)});
      }
    }
    for (auto& [name, history] : object.attributes) {
      std::stable_sort(history.begin(), history.end(),
                       [](const TimedValue& a, const TimedValue& b) { return a.time < b.time; });
    }
    decode_relationships(entry, path, object.id, false);
    builder_.add_object(std::move(object));
  }

  void decode_event(const json& entry, const std::string& path) {
    if (!entry.is_object()) throw SchemaError(path, "expected an object");
    warn_unknown(entry, path, {"id", "type", "time", "attributes", "relationships"});
    Event event;
    event.id = require_string(entry, "id", path);
    event.type = require_string(entry, "type", path);
    event.time = decode_time(require(entry, "time", path), path + ".time");
    if (const json* attrs = optional_array(entry, "attributes", path)) {
      for (std::size_t i = 0; i < attrs->size(); ++i) {
        const std::string apath = path + ".attributes[" + std::to_string(i) + "]";
        const json& a = (*attrs)[i];
        if (!a.is_object()) throw SchemaError(apath, "expected an object");
        warn_unknown(a, apath, {"name", "value"});
        std::string name = require_string(a, "name", apath);
        AttributeValue value = decode_value(require(a, "value", apath),
                                            lookup(event_schemas_, event.type, name),
                                            apath + ".value");
        if (!event.attributes.emplace(name, std::move(value)).second) {
          throw SchemaError(apath, "attribute '" + name + "' given twice");
        }
      }
    }
    decode_relationships(entry, path, event.id, true);
    builder_.add_event(std::move(event));
  }

  std::vector<std::string>& warnings_;
  LogBuilder builder_;
  std::map<std::string, AttributeSchema> object_schemas_;
  std::map<std::string, AttributeSchema> event_schemas_;
};

std::string_view kind_name(ValueKind kind) {
  switch (kind) {
    case ValueKind::String:
      return "string";
    case ValueKind::Number:
      return "float";
    case ValueKind::Boolean:
      return "boolean";
    case ValueKind::Time:
      return "time";
  }
  return "string";
}

ordered_json encode_value(const AttributeValue& value) {
  return std::visit(
      [](const auto& v) -> ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Timestamp>) {
          return format_iso8601(v);
        } else if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) {
            throw Error("unrepresentable-number", "non-finite numbers cannot be exported");
          }
          return v;
        } else {
          return v;
        }
      },
      value);
}

ordered_json encode_types(const TypeRegistry& registry) {
  ordered_json out = ordered_json::array();
  for (const auto& [name, schema] : registry) {
    ordered_json attrs = ordered_json::array();
    for (const auto& [attr, kind] : schema) {
      attrs.push_back({{"name", attr}, {"type", kind_name(kind)}});
    }
    out.push_back({{"name", name}, {"attributes", std::move(attrs)}});
  }
  return out;
}

// Relations are stored ordered by (source, qualifier, target), so the slice
// for one source is already in the required order.
ordered_json encode_relationships(const std::set<QualifiedRelation>& relations,
                                  const std::string& source) {
  ordered_json out = ordered_json::array();
  for (auto it = relations.lower_bound(QualifiedRelation{source, "", ""});
       it != relations.end() && it->source == source; ++it) {
    out.push_back({{"objectId", it->target}, {"qualifier", it->qualifier}});
  }
  return out;
}

}  // namespace

Log import_json(std::string_view text, std::vector<std::string>& warnings) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(e.byte, e.what());
  }
  return Decoder(warnings).decode(doc);
}

Log import_json(std::string_view text) {
  std::vector<std::string> ignored;
  return import_json(text, ignored);
}

std::string export_json(const Log& log) {
  ValidationReport report = validate_log(log);
  if (!report.clean()) throw ModelError(std::move(report));

  ordered_json doc;
  doc["objectTypes"] = encode_types(log.object_types());
  doc["eventTypes"] = encode_types(log.event_types());

  ordered_json objects = ordered_json::array();
  for (const auto& [id, object] : log.objects()) {
    ordered_json attrs = ordered_json::array();
    for (const auto& [name, history] : object.attributes) {
      for (const TimedValue& tv : history) {
        ordered_json a;
        a["name"] = name;
        if (tv.time != Timestamp::min()) a["time"] = format_iso8601(tv.time);
        a["value"] = encode_value(tv.value);
        attrs.push_back(std::move(a));
      }
    }
    objects.push_back({{"id", id},
                       {"type", object.type},
                       {"attributes", std::move(attrs)},
                       {"relationships", encode_relationships(log.o2o(), id)}});
  }
  doc["objects"] = std::move(objects);

  ordered_json events = ordered_json::array();
  for (const auto& [id, event] : log.events()) {
    ordered_json attrs = ordered_json::array();
    for (const auto& [name, value] : event.attributes) {
      attrs.push_back({{"name", name}, {"value", encode_value(value)}});
    }
    events.push_back({{"id", id},
                      {"type", event.type},
                      {"time", format_iso8601(event.time)},
                      {"attributes", std::move(attrs)},
                      {"relationships", encode_relationships(log.e2o(), id)}});
  }
  doc["events"] = std::move(events);
  return doc.dump(2) + "\n";
}

}  // namespace procscope
