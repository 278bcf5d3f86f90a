#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "procscope/ocel.hpp"
#include "procscope/scope_lang.hpp"

namespace procscope {

using IdSet = std::set<std::string, std::less<>>;

/// Qualifiers written by enrichment.
inline constexpr std::string_view kInScopeQualifier = "in_scope";  // (event, in_scope, process)
inline constexpr std::string_view kInvolvesQualifier = "involves";  // (process, involves, object)
inline constexpr std::string_view kPartOfQualifier = "part_of";     // (child process, part_of, parent)

/// One side of a Selection. An unconstrained side was never mentioned by a
/// filter item of the evaluated subtree and restricts nothing.
class SelectionSide {
 public:
  static SelectionSide unconstrained() { return SelectionSide(); }
  static SelectionSide explicit_set(IdSet ids) { return SelectionSide(std::move(ids)); }

  bool is_unconstrained() const { return !ids_.has_value(); }
  /// Pre: !is_unconstrained().
  const IdSet& ids() const { return *ids_; }

  friend bool operator==(const SelectionSide&, const SelectionSide&) = default;

 private:
  SelectionSide() = default;
  explicit SelectionSide(IdSet ids) : ids_(std::move(ids)) {}

  std::optional<IdSet> ids_;
};

struct Selection {
  SelectionSide events = SelectionSide::unconstrained();
  SelectionSide objects = SelectionSide::unconstrained();

  friend bool operator==(const Selection&, const Selection&) = default;
};

/// Events (E*) and objects (O*) that make up one scope.
struct ScopeResult {
  IdSet events;
  IdSet objects;

  friend bool operator==(const ScopeResult&, const ScopeResult&) = default;
};

/// Whether an attribute value satisfies `actual op expected`. Values of
/// different kinds never match.
bool satisfies(const AttributeValue& actual, Operator op, const AttributeValue& expected);

/// Event-type items constrain the event side, object-type items the object
/// side. Object attributes match when any value in their history does;
/// events lacking the attribute never match. Throws
/// Error{"unresolved-entity"} for unknown or ambiguous names.
Selection match_filter_item(const Log& log, const FilterItem& item);

/// Denotation of a ruleset:
///  - statement: union of its items per side; an unconstrained side adds
///    nothing;
///  - EXCLUDE t: complement of each explicit side of t within the log;
///  - INCLUDE s AND EXCLUDE t: each side of s minus the explicit side of t;
///  - (A AND B): intersection per side, unconstrained is the identity;
///  - (A OR B): union per side, unconstrained absorbs.
Selection evaluate(const Log& log, const RulesetExpr& expr);

/// Links both sides through E2O: E* is the event side (all events when
/// unconstrained) restricted to events related to a selected object when
/// the object side is explicit; O* is the object side restricted to objects
/// related to some event of E*. Throws Error{"empty-scope"} when E* is
/// empty.
ScopeResult resolve_scope(const Log& log, const Selection& selection);

struct Enrichment {
  Log log;
  ScopeResult scope;
};

/// Evaluates `ruleset` and embeds the result as a process object `name`:
/// (e, in_scope, name) for each e in E*, (name, involves, o) for each
/// non-process o in O*, and (o, part_of, name) for each process o in O*.
/// The input log is left untouched.
///
/// Errors: duplicate-scope-name, invalid-ruleset, empty-scope,
/// empty-object-set, qualifier-collision.
Enrichment enrich(const Log& log, std::string_view name, const RulesetExpr& ruleset);

Log apply_scope(const Log& log, std::string_view name, const RulesetExpr& ruleset);

/// Failure of one definition inside apply_scopes. `code()` is the code of
/// the underlying error.
class ScopeApplicationError : public Error {
 public:
  ScopeApplicationError(const Error& cause, std::size_t index, std::string scope)
      : Error(cause.code(), cause.what()), index_(index), scope_(std::move(scope)) {}

  std::size_t index() const noexcept { return index_; }
  const std::string& scope() const noexcept { return scope_; }

 private:
  std::size_t index_;
  std::string scope_;
};

struct ScopeSummary {
  std::string name;
  std::size_t event_count = 0;
  std::size_t object_count = 0;
};

struct EnrichedLog {
  Log log;
  std::vector<ScopeSummary> summaries;
};

/// Applies the definitions left to right; later ones may refer to process
/// objects created by earlier ones. Throws ScopeApplicationError.
EnrichedLog enrich_all(const Log& log, const std::vector<ScopeDefinition>& defs);

Log apply_scopes(const Log& log, const std::vector<ScopeDefinition>& defs);

}  // namespace procscope
