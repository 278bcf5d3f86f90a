#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>

#include "procscope/scope_lang.hpp"

namespace procscope {

std::string_view to_string(Operator op) {
  switch (op) {
    case Operator::Less:
      return "<";
    case Operator::Greater:
      return ">";
    case Operator::Equal:
      return "=";
    case Operator::NotEqual:
      return "!=";
    case Operator::LessEqual:
      return "<=";
    case Operator::GreaterEqual:
      return ">=";
    case Operator::Contains:
      return "contains";
  }
  return "?";
}

std::optional<Operator> operator_from_string(std::string_view text) {
  if (text == "<") return Operator::Less;
  if (text == ">") return Operator::Greater;
  if (text == "=") return Operator::Equal;
  if (text == "!=" || text == "≠") return Operator::NotEqual;
  if (text == "<=") return Operator::LessEqual;
  if (text == ">=") return Operator::GreaterEqual;
  if (text == "contains") return Operator::Contains;
  return std::nullopt;
}

bool operator_applies(Operator op, ValueKind kind) {
  switch (op) {
    case Operator::Equal:
    case Operator::NotEqual:
      return true;
    case Operator::Contains:
      return kind == ValueKind::String;
    case Operator::Less:
    case Operator::Greater:
    case Operator::LessEqual:
    case Operator::GreaterEqual:
      return kind != ValueKind::Boolean;
  }
  return false;
}

bool operator==(const RulesetExpr& a, const RulesetExpr& b) {
  if (a.node.index() != b.node.index()) return false;
  if (a.is_rule()) return a.rule() == b.rule();
  const Compound& x = a.compound();
  const Compound& y = b.compound();
  return x.op == y.op && *x.left == *y.left && *x.right == *y.right;
}

RulesetExpr make_rule(Rule rule) { return RulesetExpr{std::move(rule)}; }

RulesetExpr make_include(Statement s) { return make_rule(Rule{std::move(s), std::nullopt}); }

RulesetExpr make_exclude(Statement s) { return make_rule(Rule{std::nullopt, std::move(s)}); }

RulesetExpr make_include_exclude(Statement s, Statement t) {
  return make_rule(Rule{std::move(s), std::move(t)});
}

namespace {

RulesetExpr make_compound(Connective op, RulesetExpr left, RulesetExpr right) {
  return RulesetExpr{Compound{op, std::make_shared<const RulesetExpr>(std::move(left)),
                              std::make_shared<const RulesetExpr>(std::move(right))}};
}

}  // namespace

RulesetExpr make_and(RulesetExpr left, RulesetExpr right) {
  return make_compound(Connective::And, std::move(left), std::move(right));
}

RulesetExpr make_or(RulesetExpr left, RulesetExpr right) {
  return make_compound(Connective::Or, std::move(left), std::move(right));
}

int depth(const RulesetExpr& expr) {
  if (expr.is_rule()) return 0;
  const Compound& c = expr.compound();
  return 1 + std::max(depth(*c.left), depth(*c.right));
}

RulesetExpr canonicalize(const RulesetExpr& expr) {
  if (expr.is_rule()) return expr;
  const Compound& c = expr.compound();
  RulesetExpr left = canonicalize(*c.left);
  RulesetExpr right = canonicalize(*c.right);
  if (c.op == Connective::And && left.is_rule() && right.is_rule()) {
    const Rule& l = left.rule();
    const Rule& r = right.rule();
    if (l.include && !l.exclude && r.exclude && !r.include) {
      return make_include_exclude(*l.include, *r.exclude);
    }
  }
  return make_compound(c.op, std::move(left), std::move(right));
}

// ---------------------------------------------------------------------------
// Printer

namespace {

bool is_ident_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool is_ident_char(char c) {
  return is_ident_start(c) || (c >= '0' && c <= '9') || c == '-';
}

bool is_reserved(std::string_view word) {
  static constexpr std::array<std::string_view, 5> kKeywords{"INCLUDE", "EXCLUDE", "AND",
                                                             "OR", "SCOPE"};
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

bool printable_bare(std::string_view name) {
  if (name.empty() || !is_ident_start(name.front())) return false;
  if (!std::all_of(name.begin(), name.end(), is_ident_char)) return false;
  return !is_reserved(name);
}

void append_quoted(std::string& out, std::string_view s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\r':
        out += "\\r";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          std::array<char, 8> buf{};
          std::snprintf(buf.data(), buf.size(), "\\u%04x", static_cast<unsigned>(c));
          out += buf.data();
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void append_name(std::string& out, std::string_view name) {
  if (printable_bare(name)) {
    out += name;
  } else {
    append_quoted(out, name);
  }
}

void append_value(std::string& out, const AttributeValue& value) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) {
          append_quoted(out, v);
        } else if constexpr (std::is_same_v<T, double>) {
          std::array<char, 64> buf{};
          auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
          out.append(buf.data(), end);
        } else if constexpr (std::is_same_v<T, bool>) {
          out += v ? "true" : "false";
        } else {
          out += "t\"";
          out += format_iso8601(v);
          out += '"';
        }
      },
      value);
}

void append_item(std::string& out, const FilterItem& item) {
  out += '(';
  if (item.entity.kind == EntityKind::Object) out += "object:";
  if (item.entity.kind == EntityKind::Event) out += "event:";
  append_name(out, item.entity.name);
  if (item.condition) {
    out += ", ";
    append_name(out, item.condition->attribute);
    out += ", ";
    out += to_string(item.condition->op);
    out += ", ";
    append_value(out, item.condition->value);
  }
  out += ')';
}

void append_statement(std::string& out, const Statement& s) {
  out += '{';
  for (std::size_t i = 0; i < s.items.size(); ++i) {
    if (i > 0) out += ", ";
    append_item(out, s.items[i]);
  }
  out += '}';
}

void append_ruleset(std::string& out, const RulesetExpr& expr) {
  if (expr.is_rule()) {
    const Rule& r = expr.rule();
    if (r.include) {
      out += "INCLUDE ";
      append_statement(out, *r.include);
      if (r.exclude) {
        out += " AND EXCLUDE ";
        append_statement(out, *r.exclude);
      }
    } else if (r.exclude) {
      out += "EXCLUDE ";
      append_statement(out, *r.exclude);
    }
    return;
  }
  const Compound& c = expr.compound();
  out += '(';
  append_ruleset(out, *c.left);
  out += c.op == Connective::And ? " AND " : " OR ";
  append_ruleset(out, *c.right);
  out += ')';
}

}  // namespace

std::string print_ruleset(const RulesetExpr& expr) {
  std::string out;
  append_ruleset(out, expr);
  return out;
}

std::string print_scope_file(const std::vector<ScopeDefinition>& scopes) {
  std::string out;
  for (const ScopeDefinition& def : scopes) {
    out += "SCOPE ";
    append_quoted(out, def.name);
    out += " : ";
    append_ruleset(out, def.ruleset);
    out += ";\n";
  }
  return out;
}

}  // namespace procscope
