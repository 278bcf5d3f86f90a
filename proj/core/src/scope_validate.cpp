#include "procscope/scope_lang.hpp"

namespace procscope {

Resolution resolve_entity(const EntityRef& entity, const Log& log) {
  const bool is_object = entity.name == kProcessType ||
                         log.object_types().find(entity.name) != log.object_types().end();
  const bool is_event = log.event_types().find(entity.name) != log.event_types().end();
  switch (entity.kind) {
    case EntityKind::Object:
      return is_object ? Resolution::Object : Resolution::Unknown;
    case EntityKind::Event:
      return is_event ? Resolution::Event : Resolution::Unknown;
    case EntityKind::Auto:
      break;
  }
  if (is_object && is_event) return Resolution::Ambiguous;
  if (is_object) return Resolution::Object;
  if (is_event) return Resolution::Event;
  return Resolution::Unknown;
}

namespace {

class RulesetValidator {
 public:
  explicit RulesetValidator(const Log& log) : log_(log) {}

  ValidationReport run(const RulesetExpr& expr) {
    walk(expr, "$");
    return std::move(report_);
  }

 private:
  void walk(const RulesetExpr& expr, const std::string& path) {
    if (!expr.is_rule()) {
      const Compound& c = expr.compound();
      walk(*c.left, path + ".left");
      walk(*c.right, path + ".right");
      return;
    }
    const Rule& r = expr.rule();
    if (r.include) statement(*r.include, path + ".include");
    if (r.exclude) statement(*r.exclude, path + ".exclude");
  }

  void statement(const Statement& s, const std::string& path) {
    for (std::size_t i = 0; i < s.items.size(); ++i) {
      item(s.items[i], path + "[" + std::to_string(i) + "]");
    }
  }

  static std::string where(const SourceLocation& loc, const std::string& path) {
    return loc.known() ? to_string(loc) : path;
  }

  void item(const FilterItem& it, const std::string& path) {
    const std::string at = where(it.entity.loc, path);
    const Resolution res = resolve_entity(it.entity, log_);
    if (res == Resolution::Unknown) {
      report_.add("unknown-entity", at,
                  "no " + std::string(it.entity.kind == EntityKind::Event    ? "event type"
                                      : it.entity.kind == EntityKind::Object ? "object type"
                                                                             : "object or event type") +
                      " named '" + it.entity.name + "'");
      return;
    }
    if (res == Resolution::Ambiguous) {
      report_.add("ambiguous-entity", at,
                  "'" + it.entity.name +
                      "' names both an object type and an event type; prefix it with "
                      "object: or event:");
      return;
    }
    if (!it.condition) return;

    const Condition& cond = *it.condition;
    const std::string cat = where(cond.loc, path + ".attribute");
    const TypeRegistry& registry =
        res == Resolution::Object ? log_.object_types() : log_.event_types();

    ValueKind declared = ValueKind::String;
    bool found = false;
    if (res == Resolution::Object && it.entity.name == kProcessType &&
        cond.attribute == kProcessIdAttribute) {
      found = true;
    } else if (auto type = registry.find(it.entity.name); type != registry.end()) {
      if (auto attr = type->second.find(cond.attribute); attr != type->second.end()) {
        declared = attr->second;
        found = true;
      }
    }
    if (!found) {
      report_.add("unknown-attribute", cat,
                  "type '" + it.entity.name + "' has no attribute '" + cond.attribute + "'");
      return;
    }
    if (!operator_applies(cond.op, declared)) {
      report_.add("operator-kind-mismatch", cat,
                  "operator " + std::string(to_string(cond.op)) + " does not apply to " +
                      std::string(to_string(declared)) + " attribute '" + cond.attribute + "'");
      return;
    }
    if (kind_of(cond.value) != declared) {
      report_.add("value-kind-mismatch", cat,
                  "attribute '" + cond.attribute + "' is " + std::string(to_string(declared)) +
                      " but the value is " + std::string(to_string(kind_of(cond.value))));
    }
  }

  const Log& log_;
  ValidationReport report_;
};

}  // namespace

ValidationReport validate_ruleset(const RulesetExpr& expr, const Log& log) {
  return RulesetValidator(log).run(expr);
}

}  // namespace procscope
