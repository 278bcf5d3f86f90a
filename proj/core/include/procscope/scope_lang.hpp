#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "procscope/error.hpp"
#include "procscope/ocel.hpp"

namespace procscope {

// ---------------------------------------------------------------------------
// Abstract syntax
//
// Source locations are carried for diagnostics only and never take part in
// equality.

/// Which type registry an entity name refers to. `Auto` names are resolved
/// against the log during validation.
enum class EntityKind { Auto, Object, Event };

struct EntityRef {
  EntityKind kind = EntityKind::Auto;
  std::string name;
  SourceLocation loc;

  friend bool operator==(const EntityRef& a, const EntityRef& b) {
    return a.kind == b.kind && a.name == b.name;
  }
};

enum class Operator { Less, Greater, Equal, NotEqual, LessEqual, GreaterEqual, Contains };

/// Canonical spelling: `<`, `>`, `=`, `!=`, `<=`, `>=`, `contains`.
std::string_view to_string(Operator op);
/// Accepts the canonical spellings plus `≠` for `!=`.
std::optional<Operator> operator_from_string(std::string_view text);
/// Whether `op` is meaningful for values of `kind` (`contains` needs
/// strings, booleans only support equality).
bool operator_applies(Operator op, ValueKind kind);

struct Condition {
  std::string attribute;
  Operator op = Operator::Equal;
  AttributeValue value;
  SourceLocation loc;

  friend bool operator==(const Condition& a, const Condition& b) {
    return a.attribute == b.attribute && a.op == b.op && a.value == b.value;
  }
};

/// `(entity)` when the condition is absent, `(entity, attr, op, value)`
/// otherwise.
struct FilterItem {
  EntityRef entity;
  std::optional<Condition> condition;

  friend bool operator==(const FilterItem&, const FilterItem&) = default;
};

/// `{ item, item, ... }`; never empty.
struct Statement {
  std::vector<FilterItem> items;

  friend bool operator==(const Statement&, const Statement&) = default;
};

/// `INCLUDE s`, `EXCLUDE t` or `INCLUDE s AND EXCLUDE t`.
struct Rule {
  std::optional<Statement> include;
  std::optional<Statement> exclude;

  bool is_combined() const { return include.has_value() && exclude.has_value(); }
  friend bool operator==(const Rule&, const Rule&) = default;
};

enum class Connective { And, Or };

struct RulesetExpr;

struct Compound {
  Connective op = Connective::And;
  std::shared_ptr<const RulesetExpr> left;
  std::shared_ptr<const RulesetExpr> right;
};

/// A rule, or a parenthesized AND/OR of two rulesets. Children are shared
/// and immutable, so copies are cheap.
struct RulesetExpr {
  std::variant<Rule, Compound> node;

  bool is_rule() const { return std::holds_alternative<Rule>(node); }
  const Rule& rule() const { return std::get<Rule>(node); }
  const Compound& compound() const { return std::get<Compound>(node); }

  friend bool operator==(const RulesetExpr& a, const RulesetExpr& b);
};

RulesetExpr make_rule(Rule rule);
RulesetExpr make_include(Statement s);
RulesetExpr make_exclude(Statement s);
RulesetExpr make_include_exclude(Statement s, Statement t);
RulesetExpr make_and(RulesetExpr left, RulesetExpr right);
RulesetExpr make_or(RulesetExpr left, RulesetExpr right);

/// Number of nested AND/OR levels (a single rule has depth 0).
int depth(const RulesetExpr& expr);

/// The text `(INCLUDE s AND EXCLUDE t)` always parses to the combined rule,
/// so And(INCLUDE s, EXCLUDE t) has no distinct printed form. This rewrites
/// every such node into the combined rule, giving the AST the parser would
/// produce for the printed text.
RulesetExpr canonicalize(const RulesetExpr& expr);

/// Named ruleset; applying it creates a process object with this id.
struct ScopeDefinition {
  std::string name;
  RulesetExpr ruleset;
  SourceLocation loc;

  friend bool operator==(const ScopeDefinition& a, const ScopeDefinition& b) {
    return a.name == b.name && a.ruleset == b.ruleset;
  }
};

// ---------------------------------------------------------------------------
// Concrete syntax
//
//   ruleset   := rule | "(" ruleset ("AND" | "OR") ruleset ")"
//   rule      := "INCLUDE" statement ["AND" "EXCLUDE" statement]
//              | "EXCLUDE" statement
//   statement := "{" item ("," item)* "}"
//   item      := "(" entity ")" | "(" entity "," "," "," ")"
//              | "(" entity "," name "," operator "," value ")"
//   entity    := ["object:" | "event:"] name
//   name      := identifier | "non-empty quoted string"
//   value     := "string" | number | true | false | t"ISO-8601"
//
// Keywords are upper-case and case-sensitive. `#` starts a comment that runs
// to the end of the line. Scope files hold `SCOPE name : ruleset ;`
// declarations.

/// Throws SyntaxError (code "syntax-error") with the offending position and
/// the set of tokens that would have been accepted.
RulesetExpr parse_ruleset(std::string_view text);

/// Canonical text: single spaces between tokens, conditionless items as
/// `(name)`, compound rulesets fully parenthesized, shortest round-trip
/// numbers. parse_ruleset(print_ruleset(a)) == canonicalize(a).
std::string print_ruleset(const RulesetExpr& expr);

/// Throws SyntaxError, or Error{"duplicate-scope"} when a name repeats.
std::vector<ScopeDefinition> parse_scope_file(std::string_view text);

std::string print_scope_file(const std::vector<ScopeDefinition>& scopes);

// ---------------------------------------------------------------------------
// Resolution and validation against a log

enum class Resolution { Object, Event, Unknown, Ambiguous };

/// Looks the entity up in the log's registries. `process` always counts as
/// an object type, since scopes may refer to process objects created by
/// earlier definitions.
Resolution resolve_entity(const EntityRef& entity, const Log& log);

/// Pseudo-attribute of `process` entities that matches the object id.
inline constexpr std::string_view kProcessIdAttribute = "id";

/// Reports `unknown-entity`, `ambiguous-entity`, `unknown-attribute`,
/// `operator-kind-mismatch` and `value-kind-mismatch`. Locations are
/// `line:column` when the AST came from text, a tree path otherwise.
ValidationReport validate_ruleset(const RulesetExpr& expr, const Log& log);

// ---------------------------------------------------------------------------
// JSON form
//
//   node := {"rule": {"include": [item...]?, "exclude": [item...]?}}
//         | {"op": "and" | "or", "left": node, "right": node}
//   item := {"entity": {"kind": "object" | "event" | "auto", "name": str},
//            "attribute"?: str, "operator"?: str,
//            "value"?: str | number | bool | {"timestamp": str}}

nlohmann::json ruleset_to_json(const RulesetExpr& expr);
/// Throws SchemaError with a JSON path.
RulesetExpr ruleset_from_json(const nlohmann::json& doc);

/// `[{"name": str, "ruleset": node}, ...]`
nlohmann::json scopes_to_json(const std::vector<ScopeDefinition>& scopes);
/// Throws SchemaError, or Error{"duplicate-scope"}.
std::vector<ScopeDefinition> scopes_from_json(const nlohmann::json& doc);

}  // namespace procscope
