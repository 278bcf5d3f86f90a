#include <gtest/gtest.h>

#include "procscope/scope_lang.hpp"

namespace procscope {
namespace {

FilterItem type_only(std::string name, EntityKind kind = EntityKind::Auto) {
  return {{kind, std::move(name), {}}, std::nullopt};
}

FilterItem conditioned(std::string name, std::string attr, Operator op, AttributeValue v) {
  return {{EntityKind::Auto, std::move(name), {}}, Condition{std::move(attr), op, std::move(v), {}}};
}

SyntaxError syntax_error_of(std::string_view text) {
  try {
    parse_ruleset(text);
  } catch (const SyntaxError& e) {
    return e;
  }
  ADD_FAILURE() << "accepted: " << text;
  return SyntaxError({}, "", {});
}

TEST(ParseRuleset, SmallestDerivation) {
  EXPECT_EQ(parse_ruleset("INCLUDE {(orders)}"), make_include({{type_only("orders")}}));
}

TEST(ParseRuleset, OrOfTwoRules) {
  const RulesetExpr expected =
      make_or(make_include({{conditioned("item", "weight", Operator::Greater, 10.0)}}),
              make_exclude({{type_only("ship")}}));
  EXPECT_EQ(parse_ruleset("(INCLUDE {(item, weight, >, 10)} OR EXCLUDE {(ship)})"), expected);
}

TEST(ParseRuleset, AndInsideStatementIsRejected) {
  const SyntaxError e = syntax_error_of("INCLUDE {(orders) AND");
  EXPECT_EQ(e.code(), "syntax-error");
  EXPECT_EQ(e.where().line, 1);
  EXPECT_EQ(e.where().column, 19);
  EXPECT_FALSE(e.expected().empty());
}

TEST(ParseRuleset, CombinedRuleIsGreedy) {
  const Statement s{{type_only("a")}};
  const Statement t{{type_only("b")}};
  EXPECT_EQ(parse_ruleset("INCLUDE {(a)} AND EXCLUDE {(b)}"), make_include_exclude(s, t));
  EXPECT_EQ(parse_ruleset("(INCLUDE {(a)} AND EXCLUDE {(b)})"), make_include_exclude(s, t));
  EXPECT_EQ(parse_ruleset("(INCLUDE {(a)} AND INCLUDE {(b)})"),
            make_and(make_include(s), make_include(t)));
  EXPECT_EQ(parse_ruleset("((INCLUDE {(a)} AND EXCLUDE {(b)}) OR EXCLUDE {(a)})"),
            make_or(make_include_exclude(s, t), make_exclude(s)));
}

TEST(ParseRuleset, CompoundsNeedParentheses) {
  syntax_error_of("INCLUDE {(a)} OR INCLUDE {(b)}");
  syntax_error_of("INCLUDE {(a)} AND INCLUDE {(b)}");
  syntax_error_of("(INCLUDE {(a)} AND INCLUDE {(b)} AND INCLUDE {(c)})");
  syntax_error_of("(INCLUDE {(a)})");
  syntax_error_of("EXCLUDE {(a)} AND EXCLUDE {(b)}");
}

TEST(ParseRuleset, UnbalancedBrackets) {
  syntax_error_of("(INCLUDE {(a)} OR INCLUDE {(b)}");
  syntax_error_of("INCLUDE {(a)");
  syntax_error_of("INCLUDE {(a)}}");
  syntax_error_of("INCLUDE (a)}");
}

TEST(ParseRuleset, EpsilonSlotsAndWhitespace) {
  EXPECT_EQ(parse_ruleset("INCLUDE   {( orders ,,,)}"), parse_ruleset("INCLUDE {(orders)}"));
  EXPECT_EQ(print_ruleset(parse_ruleset("INCLUDE   {( orders ,,,)}")), "INCLUDE {(orders)}");
  EXPECT_EQ(parse_ruleset("INCLUDE\n{ ( orders , , , ) } # trailing comment"),
            parse_ruleset("INCLUDE {(orders)}"));
  syntax_error_of("INCLUDE {(orders, ,)}");
  syntax_error_of("INCLUDE {(orders, weight, ,)}");
}

TEST(ParseRuleset, EntityPrefixesAndQuotedNames) {
  const RulesetExpr r = parse_ruleset(
      "INCLUDE {(object:order), (event:\"place order\"), (\"Customer Order\", \"due date\", <, "
      "t\"2024-01-01T00:00:00Z\")}");
  const Statement& s = *r.rule().include;
  ASSERT_EQ(s.items.size(), 3u);
  EXPECT_EQ(s.items[0].entity.kind, EntityKind::Object);
  EXPECT_EQ(s.items[1].entity.kind, EntityKind::Event);
  EXPECT_EQ(s.items[1].entity.name, "place order");
  EXPECT_EQ(s.items[2].condition->attribute, "due date");
  EXPECT_EQ(std::get<Timestamp>(s.items[2].condition->value),
            parse_iso8601("2024-01-01T00:00:00Z"));
}

TEST(ParseRuleset, ValueLiterals) {
  auto value_of = [](const char* text) {
    return parse_ruleset(std::string("INCLUDE {(x, a, =, ") + text + ")}")
        .rule().include->items[0].condition->value;
  };
  EXPECT_EQ(value_of("\"a\\\"b\\\\c\\n\\u00e9\""), AttributeValue(std::string("a\"b\\c\n\xc3\xa9")));
  EXPECT_EQ(value_of("-1.5e3"), AttributeValue(-1500.0));
  EXPECT_EQ(value_of("true"), AttributeValue(true));
  EXPECT_EQ(value_of("false"), AttributeValue(false));
  syntax_error_of("INCLUDE {(x, a, =, t\"not a time\")}");
  syntax_error_of("INCLUDE {(x, a, =, \"open)}");
  syntax_error_of("INCLUDE {(x, a, =, bare)}");
}

TEST(ParseRuleset, Operators) {
  const std::pair<const char*, Operator> cases[] = {
      {"<", Operator::Less},       {">", Operator::Greater},       {"=", Operator::Equal},
      {"!=", Operator::NotEqual},  {"\xE2\x89\xA0", Operator::NotEqual},
      {"<=", Operator::LessEqual}, {">=", Operator::GreaterEqual}, {"contains", Operator::Contains}};
  for (const auto& [text, op] : cases) {
    const RulesetExpr r = parse_ruleset(std::string("INCLUDE {(x, a, ") + text + ", 1)}");
    EXPECT_EQ(r.rule().include->items[0].condition->op, op) << text;
  }
  syntax_error_of("INCLUDE {(x, a, ==, 1)}");
  syntax_error_of("INCLUDE {(x, a, !, 1)}");
}

TEST(ParseRuleset, KeywordsAreCaseSensitive) {
  syntax_error_of("include {(a)}");
  syntax_error_of("(INCLUDE {(a)} and INCLUDE {(b)})");
  // Upper-case keywords cannot be bare names.
  syntax_error_of("INCLUDE {(AND)}");
  EXPECT_NO_THROW(parse_ruleset("INCLUDE {(\"AND\")}"));
}

TEST(ParseRuleset, ErrorsCarryLineAndColumn) {
  const SyntaxError e = syntax_error_of("(INCLUDE {(a)}\n OR\n  EXCLUDE {(b),})");
  EXPECT_EQ(e.where().line, 3);
  EXPECT_EQ(e.where().column, 16);
  EXPECT_NE(std::string(e.what()).find("3:16"), std::string::npos);
}

TEST(PrintRuleset, Canonical) {
  EXPECT_EQ(print_ruleset(make_include({{type_only("orders")}})), "INCLUDE {(orders)}");
  const RulesetExpr a = parse_ruleset("INCLUDE {(a)}");
  const RulesetExpr b = parse_ruleset("EXCLUDE {(b, w, >=, 2.5), (\"c d\")}");
  EXPECT_EQ(print_ruleset(make_and(a, b)), "(" + print_ruleset(a) + " AND " + print_ruleset(b) + ")");
  EXPECT_EQ(print_ruleset(b), "EXCLUDE {(b, w, >=, 2.5), (\"c d\")}");
  EXPECT_EQ(print_ruleset(parse_ruleset("INCLUDE {(object:x, t, =, t\"2024-01-01\")} AND EXCLUDE {(event:y)}")),
            "INCLUDE {(object:x, t, =, t\"2024-01-01T00:00:00.000Z\")} AND EXCLUDE {(event:y)}");
  EXPECT_EQ(print_ruleset(parse_ruleset("INCLUDE {(x, a, =, 0.1)}")), "INCLUDE {(x, a, =, 0.1)}");
  EXPECT_EQ(print_ruleset(parse_ruleset("INCLUDE {(x, a, \xE2\x89\xA0, 1e21)}")),
            "INCLUDE {(x, a, !=, 1e+21)}");
}

TEST(PrintRuleset, AndOfIncludeAndExcludePrintsAsCombinedRule) {
  const RulesetExpr s = parse_ruleset("INCLUDE {(a)}");
  const RulesetExpr t = parse_ruleset("EXCLUDE {(b)}");
  const RulesetExpr nested = make_and(s, t);
  EXPECT_EQ(parse_ruleset(print_ruleset(nested)), canonicalize(nested));
  EXPECT_TRUE(canonicalize(nested).is_rule());
  EXPECT_EQ(canonicalize(make_and(t, s)), make_and(t, s));
}

TEST(ParseScopeFile, EmptyFile) {
  EXPECT_TRUE(parse_scope_file("").empty());
  EXPECT_TRUE(parse_scope_file("  # nothing here\n").empty());
}

TEST(ParseScopeFile, DefinitionsInOrder) {
  const auto defs = parse_scope_file(
      "SCOPE \"P1\" : INCLUDE {(order)};\nSCOPE P2 : (INCLUDE {(a)} OR INCLUDE {(b)});\n");
  ASSERT_EQ(defs.size(), 2u);
  EXPECT_EQ(defs[0].name, "P1");
  EXPECT_EQ(defs[1].name, "P2");
  EXPECT_EQ(defs[0].loc.line, 1);
  EXPECT_EQ(defs[1].loc.line, 2);
  EXPECT_EQ(parse_scope_file(print_scope_file(defs)), defs);
}

TEST(ParseScopeFile, DuplicateScope) {
  try {
    parse_scope_file("SCOPE \"P1\" : INCLUDE {(a)};\nSCOPE \"P1\" : INCLUDE {(b)};");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "duplicate-scope");
    EXPECT_NE(std::string(e.what()).find("P1"), std::string::npos);
  }
}

TEST(ParseScopeFile, SyntaxErrors) {
  EXPECT_THROW(parse_scope_file("SCOPE \"P1\" INCLUDE {(a)};"), SyntaxError);
  EXPECT_THROW(parse_scope_file("SCOPE \"P1\" : INCLUDE {(a)}"), SyntaxError);
  EXPECT_THROW(parse_scope_file("SCOPE \"\" : INCLUDE {(a)};"), SyntaxError);
}

}  // namespace
}  // namespace procscope
