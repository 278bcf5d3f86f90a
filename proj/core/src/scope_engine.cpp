#include "procscope/scope_engine.hpp"

#include <algorithm>
#include <iterator>

namespace procscope {
namespace {

template <typename T>
bool compare(const T& a, Operator op, const T& b) {
  switch (op) {
    case Operator::Less:
      return a < b;
    case Operator::Greater:
      return a > b;
    case Operator::Equal:
      return a == b;
    case Operator::NotEqual:
      return a != b;
    case Operator::LessEqual:
      return a <= b;
    case Operator::GreaterEqual:
      return a >= b;
    case Operator::Contains:
      return false;
  }
  return false;
}

IdSet set_union(const IdSet& a, const IdSet& b) {
  IdSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

IdSet set_intersection(const IdSet& a, const IdSet& b) {
  IdSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.end()));
  return out;
}

IdSet set_difference(const IdSet& a, const IdSet& b) {
  IdSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

template <typename Map>
IdSet all_ids(const Map& entities) {
  IdSet out;
  for (const auto& [id, entity] : entities) out.insert(out.end(), id);
  return out;
}

template <typename Map>
IdSet complement(const Map& universe, const IdSet& excluded) {
  IdSet out;
  for (const auto& [id, entity] : universe) {
    if (excluded.find(id) == excluded.end()) out.insert(out.end(), id);
  }
  return out;
}

using Side = SelectionSide;

// Statements: an unmentioned side contributes nothing.
Side merge_items(const Side& a, const Side& b) {
  if (a.is_unconstrained()) return b;
  if (b.is_unconstrained()) return a;
  return Side::explicit_set(set_union(a.ids(), b.ids()));
}

Side intersect(const Side& a, const Side& b) {
  if (a.is_unconstrained()) return b;
  if (b.is_unconstrained()) return a;
  return Side::explicit_set(set_intersection(a.ids(), b.ids()));
}

Side unite(const Side& a, const Side& b) {
  if (a.is_unconstrained() || b.is_unconstrained()) return Side::unconstrained();
  return Side::explicit_set(set_union(a.ids(), b.ids()));
}

template <typename Map>
Side exclude(const Map& universe, const Side& t) {
  if (t.is_unconstrained()) return t;
  return Side::explicit_set(complement(universe, t.ids()));
}

template <typename Map>
Side include_minus(const Map& universe, const Side& s, const Side& t) {
  if (t.is_unconstrained()) return s;
  if (s.is_unconstrained()) return Side::explicit_set(complement(universe, t.ids()));
  return Side::explicit_set(set_difference(s.ids(), t.ids()));
}

Selection evaluate_statement(const Log& log, const Statement& s) {
  Selection out;
  for (const FilterItem& item : s.items) {
    Selection sel = match_filter_item(log, item);
    out.events = merge_items(out.events, sel.events);
    out.objects = merge_items(out.objects, sel.objects);
  }
  return out;
}

Selection evaluate_rule(const Log& log, const Rule& rule) {
  if (rule.include && !rule.exclude) return evaluate_statement(log, *rule.include);
  const Selection t = evaluate_statement(log, *rule.exclude);
  if (!rule.include) {
    return {exclude(log.events(), t.events), exclude(log.objects(), t.objects)};
  }
  const Selection s = evaluate_statement(log, *rule.include);
  return {include_minus(log.events(), s.events, t.events),
          include_minus(log.objects(), s.objects, t.objects)};
}

}  // namespace

bool satisfies(const AttributeValue& actual, Operator op, const AttributeValue& expected) {
  if (actual.index() != expected.index()) return false;
  return std::visit(
      [&](const auto& a) -> bool {
        using T = std::decay_t<decltype(a)>;
        const T& b = std::get<T>(expected);
        if constexpr (std::is_same_v<T, std::string>) {
          if (op == Operator::Contains) return a.find(b) != std::string::npos;
          return compare(a, op, b);
        } else if constexpr (std::is_same_v<T, bool>) {
          if (op == Operator::Equal) return a == b;
          if (op == Operator::NotEqual) return a != b;
          return false;
        } else {
          return compare(a, op, b);
        }
      },
      actual);
}

Selection match_filter_item(const Log& log, const FilterItem& item) {
  const Resolution res = resolve_entity(item.entity, log);
  if (res != Resolution::Object && res != Resolution::Event) {
    throw Error("unresolved-entity",
                "entity '" + item.entity.name + "' does not resolve against the log");
  }
  const std::optional<Condition>& cond = item.condition;
  Selection sel;
  IdSet ids;
  if (res == Resolution::Event) {
    for (const Event* e : log.events_of_type(item.entity.name)) {
      if (cond) {
        auto attr = e->attributes.find(cond->attribute);
        if (attr == e->attributes.end() || !satisfies(attr->second, cond->op, cond->value)) {
          continue;
        }
      }
      ids.insert(ids.end(), e->id);
    }
    sel.events = SelectionSide::explicit_set(std::move(ids));
    return sel;
  }

  const bool by_process_id = item.entity.name == kProcessType && cond &&
                             cond->attribute == kProcessIdAttribute;
  for (const ObjectEntity* o : log.objects_of_type(item.entity.name)) {
    if (by_process_id) {
      if (!satisfies(AttributeValue(o->id), cond->op, cond->value)) continue;
    } else if (cond) {
      auto attr = o->attributes.find(cond->attribute);
      if (attr == o->attributes.end()) continue;
      const auto& history = attr->second;
      const bool any = std::any_of(history.begin(), history.end(), [&](const TimedValue& tv) {
        return satisfies(tv.value, cond->op, cond->value);
      });
      if (!any) continue;
    }
    ids.insert(ids.end(), o->id);
  }
  sel.objects = SelectionSide::explicit_set(std::move(ids));
  return sel;
}

Selection evaluate(const Log& log, const RulesetExpr& expr) {
  if (expr.is_rule()) return evaluate_rule(log, expr.rule());
  const Compound& c = expr.compound();
  const Selection a = evaluate(log, *c.left);
  const Selection b = evaluate(log, *c.right);
  if (c.op == Connective::And) {
    return {intersect(a.events, b.events), intersect(a.objects, b.objects)};
  }
  return {unite(a.events, b.events), unite(a.objects, b.objects)};
}

ScopeResult resolve_scope(const Log& log, const Selection& selection) {
  ScopeResult result;
  IdSet candidates = selection.events.is_unconstrained() ? all_ids(log.events())
                                                         : selection.events.ids();
  if (selection.objects.is_unconstrained()) {
    result.events = std::move(candidates);
  } else {
    IdSet linked;
    for (const std::string& oid : selection.objects.ids()) {
      for (const Event* e : events_of_object(log, oid)) linked.insert(e->id);
    }
    result.events = set_intersection(candidates, linked);
  }
  if (result.events.empty()) {
    throw Error("empty-scope", "the ruleset selects no events");
  }

  IdSet related;
  for (const std::string& eid : result.events) {
    for (const ObjectLink& link : objects_of_event(log, eid)) related.insert(link.object->id);
  }
  result.objects = selection.objects.is_unconstrained()
                       ? std::move(related)
                       : set_intersection(selection.objects.ids(), related);
  return result;
}

Enrichment enrich(const Log& log, std::string_view name, const RulesetExpr& ruleset) {
  if (name.empty()) throw Error("invalid-scope-name", "scope name must not be empty");
  if (log.find_object(name) != nullptr || log.find_event(name) != nullptr) {
    throw Error("duplicate-scope-name",
                "'" + std::string(name) + "' is already an object or event id");
  }
  ValidationReport report = validate_ruleset(ruleset, log);
  if (!report.clean()) {
    const Violation& v = report.violations.front();
    throw Error("invalid-ruleset", v.code + " at " + v.location + ": " + v.message);
  }

  ScopeResult scope = resolve_scope(log, evaluate(log, ruleset));
  if (scope.objects.empty()) {
    throw Error("empty-object-set", "the scope's events relate to no objects");
  }

  const std::string pid(name);
  LogBuilder builder(log);
  if (!builder.has_object_type(kProcessType)) builder.add_object_type(std::string(kProcessType));
  builder.add_object(ObjectEntity{pid, std::string(kProcessType), {}});

  auto collision = [&](const QualifiedRelation& r) {
    return Error("qualifier-collision", "relation (" + r.source + ", " + r.qualifier + ", " +
                                            r.target + ") already exists");
  };
  for (const std::string& eid : scope.events) {
    QualifiedRelation r{eid, std::string(kInScopeQualifier), pid};
    if (builder.has_e2o(r)) throw collision(r);
    builder.add_e2o(std::move(r.source), std::move(r.qualifier), std::move(r.target));
  }
  for (const std::string& oid : scope.objects) {
    const bool child_process = log.find_object(oid)->type == kProcessType;
    QualifiedRelation r = child_process
                              ? QualifiedRelation{oid, std::string(kPartOfQualifier), pid}
                              : QualifiedRelation{pid, std::string(kInvolvesQualifier), oid};
    if (builder.has_o2o(r)) throw collision(r);
    builder.add_o2o(std::move(r.source), std::move(r.qualifier), std::move(r.target));
  }
  return {std::move(builder).build(), std::move(scope)};
}

Log apply_scope(const Log& log, std::string_view name, const RulesetExpr& ruleset) {
  return enrich(log, name, ruleset).log;
}

EnrichedLog enrich_all(const Log& log, const std::vector<ScopeDefinition>& defs) {
  EnrichedLog out{log, {}};
  for (std::size_t i = 0; i < defs.size(); ++i) {
    try {
      Enrichment step = enrich(out.log, defs[i].name, defs[i].ruleset);
      out.summaries.push_back(
          {defs[i].name, step.scope.events.size(), step.scope.objects.size()});
      out.log = std::move(step.log);
    } catch (const Error& e) {
      throw ScopeApplicationError(e, i, defs[i].name);
    }
  }
  return out;
}

Log apply_scopes(const Log& log, const std::vector<ScopeDefinition>& defs) {
  return enrich_all(log, defs).log;
}

}  // namespace procscope
