#pragma once

// Brute-force reference implementations. They scan the raw maps and
// relation sets of a Log and never call the library's evaluation code or
// its indexes, so agreement with the library is meaningful.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "procscope/beg_graph.hpp"
#include "procscope/ocel.hpp"
#include "procscope/scope_engine.hpp"
#include "procscope/scope_lang.hpp"

namespace procscope::testing {

struct OracleSide {
  bool top = true;
  std::set<std::string> ids;

  friend bool operator==(const OracleSide&, const OracleSide&) = default;
};

struct OracleSelection {
  OracleSide events;
  OracleSide objects;
};

struct OracleScope {
  std::set<std::string> events;
  std::set<std::string> objects;
};

OracleSelection oracle_evaluate(const Log& log, const RulesetExpr& expr);

/// nullopt when E* is empty.
std::optional<OracleScope> oracle_resolve(const Log& log, const OracleSelection& sel);

bool matches(const Selection& actual, const OracleSelection& expected);
std::string describe(const OracleSelection& sel);
std::string describe(const Selection& sel);

std::vector<Handover> oracle_handovers(const Log& log);

}  // namespace procscope::testing
