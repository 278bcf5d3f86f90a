#include <cmath>
#include <set>

#include "procscope/scope_lang.hpp"

namespace procscope {
namespace {

using nlohmann::json;

std::string_view kind_name(EntityKind kind) {
  switch (kind) {
    case EntityKind::Object:
      return "object";
    case EntityKind::Event:
      return "event";
    case EntityKind::Auto:
      break;
  }
  return "auto";
}

json value_to_json(const AttributeValue& value) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Timestamp>) {
          return json{{"timestamp", format_iso8601(v)}};
        } else {
          return v;
        }
      },
      value);
}

json statement_to_json(const Statement& s) {
  json items = json::array();
  for (const FilterItem& item : s.items) {
    json j;
    j["entity"] = {{"kind", kind_name(item.entity.kind)}, {"name", item.entity.name}};
    if (item.condition) {
      j["attribute"] = item.condition->attribute;
      j["operator"] = to_string(item.condition->op);
      j["value"] = value_to_json(item.condition->value);
    }
    items.push_back(std::move(j));
  }
  return items;
}

const json& member(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + "." + key, "missing required key");
  return *it;
}

std::string string_member(const json& obj, const char* key, const std::string& path) {
  const json& v = member(obj, key, path);
  if (!v.is_string()) throw SchemaError(path + "." + key, "expected a string");
  std::string s = v.get<std::string>();
  if (s.empty()) throw SchemaError(path + "." + key, "must not be empty");
  return s;
}

AttributeValue value_from_json(const json& v, const std::string& path) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_number()) {
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw SchemaError(path, "number must be finite");
    return d;
  }
  if (v.is_object() && v.size() == 1 && v.contains("timestamp")) {
    const json& t = v["timestamp"];
    Timestamp ts;
    if (!t.is_string() || !try_parse_iso8601(t.get<std::string>(), ts)) {
      throw SchemaError(path + ".timestamp", "expected an ISO-8601 string");
    }
    return ts;
  }
  throw SchemaError(path, "expected a string, number, boolean or {\"timestamp\": ...}");
}

Statement statement_from_json(const json& items, const std::string& path) {
  if (!items.is_array()) throw SchemaError(path, "expected an array of filter items");
  if (items.empty()) throw SchemaError(path, "a statement needs at least one filter item");
  Statement s;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string ipath = path + "[" + std::to_string(i) + "]";
    const json& j = items[i];
    if (!j.is_object()) throw SchemaError(ipath, "expected an object");
    FilterItem item;
    const json& entity = member(j, "entity", ipath);
    if (!entity.is_object()) throw SchemaError(ipath + ".entity", "expected an object");
    item.entity.name = string_member(entity, "name", ipath + ".entity");
    if (auto k = entity.find("kind"); k != entity.end()) {
      if (*k == "object") {
        item.entity.kind = EntityKind::Object;
      } else if (*k == "event") {
        item.entity.kind = EntityKind::Event;
      } else if (*k == "auto") {
        item.entity.kind = EntityKind::Auto;
      } else {
        throw SchemaError(ipath + ".entity.kind", "expected \"object\", \"event\" or \"auto\"");
      }
    }
    const bool has_attr = j.contains("attribute");
    const bool has_op = j.contains("operator");
    const bool has_value = j.contains("value");
    if (has_attr || has_op || has_value) {
      if (!(has_attr && has_op && has_value)) {
        throw SchemaError(ipath, "attribute, operator and value must be given together");
      }
      Condition cond;
      cond.attribute = string_member(j, "attribute", ipath);
      const json& op = j["operator"];
      std::optional<Operator> parsed;
      if (op.is_string()) parsed = operator_from_string(op.get<std::string>());
      if (!parsed) throw SchemaError(ipath + ".operator", "unknown operator");
      cond.op = *parsed;
      cond.value = value_from_json(j["value"], ipath + ".value");
      item.condition = std::move(cond);
    }
    s.items.push_back(std::move(item));
  }
  return s;
}

RulesetExpr node_from_json(const json& doc, const std::string& path) {
  if (!doc.is_object()) throw SchemaError(path, "expected an object");
  if (auto r = doc.find("rule"); r != doc.end()) {
    const std::string rpath = path + ".rule";
    if (!r->is_object()) throw SchemaError(rpath, "expected an object");
    Rule rule;
    if (auto inc = r->find("include"); inc != r->end()) {
      rule.include = statement_from_json(*inc, rpath + ".include");
    }
    if (auto exc = r->find("exclude"); exc != r->end()) {
      rule.exclude = statement_from_json(*exc, rpath + ".exclude");
    }
    if (!rule.include && !rule.exclude) {
      throw SchemaError(rpath, "a rule needs an include or an exclude statement");
    }
    return make_rule(std::move(rule));
  }
  const json& op = member(doc, "op", path);
  if (op != "and" && op != "or") throw SchemaError(path + ".op", "expected \"and\" or \"or\"");
  RulesetExpr left = node_from_json(member(doc, "left", path), path + ".left");
  RulesetExpr right = node_from_json(member(doc, "right", path), path + ".right");
  return op == "and" ? make_and(std::move(left), std::move(right))
                     : make_or(std::move(left), std::move(right));
}

}  // namespace

json ruleset_to_json(const RulesetExpr& expr) {
  if (expr.is_rule()) {
    const Rule& r = expr.rule();
    json rule = json::object();
    if (r.include) rule["include"] = statement_to_json(*r.include);
    if (r.exclude) rule["exclude"] = statement_to_json(*r.exclude);
    return json{{"rule", std::move(rule)}};
  }
  const Compound& c = expr.compound();
  return json{{"op", c.op == Connective::And ? "and" : "or"},
              {"left", ruleset_to_json(*c.left)},
              {"right", ruleset_to_json(*c.right)}};
}

RulesetExpr ruleset_from_json(const json& doc) { return node_from_json(doc, "$"); }

json scopes_to_json(const std::vector<ScopeDefinition>& scopes) {
  json out = json::array();
  for (const ScopeDefinition& def : scopes) {
    out.push_back({{"name", def.name}, {"ruleset", ruleset_to_json(def.ruleset)}});
  }
  return out;
}

std::vector<ScopeDefinition> scopes_from_json(const json& doc) {
  if (!doc.is_array()) throw SchemaError("$", "expected an array of scopes");
  std::vector<ScopeDefinition> defs;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string path = "$[" + std::to_string(i) + "]";
    if (!doc[i].is_object()) throw SchemaError(path, "expected an object");
    std::string name = string_member(doc[i], "name", path);
    RulesetExpr r = node_from_json(member(doc[i], "ruleset", path), path + ".ruleset");
    if (!seen.insert(name).second) {
      throw Error("duplicate-scope", path + ": duplicate scope name '" + name + "'");
    }
    defs.push_back({std::move(name), std::move(r), {}});
  }
  return defs;
}

}  // namespace procscope
