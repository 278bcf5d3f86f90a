#include <charconv>
#include <set>

#include "procscope/scope_lang.hpp"

namespace procscope {

SyntaxError::SyntaxError(SourceLocation where, std::string found,
                         std::vector<std::string> expected)
    : Error("syntax-error",
            [&] {
              std::string msg = to_string(where) + ": unexpected " + found;
              if (!expected.empty()) {
                msg += "; expected ";
                for (std::size_t i = 0; i < expected.size(); ++i) {
                  if (i > 0) msg += i + 1 == expected.size() ? " or " : ", ";
                  msg += expected[i];
                }
              }
              return msg;
            }()),
      where_(where),
      found_(std::move(found)),
      expected_(std::move(expected)) {}

namespace {

enum class Tok {
  LParen,
  RParen,
  LBrace,
  RBrace,
  Comma,
  Colon,
  Semicolon,
  Op,
  Ident,
  String,
  Number,
  TimeLit,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;  // identifier / operator spelling / decoded string
  double number = 0;
  Timestamp time;
  SourceLocation loc;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End:
      return "end of input";
    case Tok::String:
      return "string \"" + t.text + "\"";
    case Tok::Number:
      return "number " + t.text;
    case Tok::TimeLit:
      return "timestamp literal";
    case Tok::Ident:
      return "'" + t.text + "'";
    default:
      return "'" + t.text + "'";
  }
}

bool ident_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool ident_char(char c) {
  return ident_start(c) || (c >= '0' && c <= '9') || c == '-';
}

bool digit(char c) { return c >= '0' && c <= '9'; }

void append_utf8(std::string& out, unsigned cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.loc = here();
      if (pos_ >= src_.size()) {
        t.kind = Tok::End;
        out.push_back(std::move(t));
        return out;
      }
      const char c = src_[pos_];
      switch (c) {
        case '(':
          single(t, Tok::LParen);
          break;
        case ')':
          single(t, Tok::RParen);
          break;
        case '{':
          single(t, Tok::LBrace);
          break;
        case '}':
          single(t, Tok::RBrace);
          break;
        case ',':
          single(t, Tok::Comma);
          break;
        case ':':
          single(t, Tok::Colon);
          break;
        case ';':
          single(t, Tok::Semicolon);
          break;
        case '"':
          t.kind = Tok::String;
          t.text = quoted();
          break;
        case '<':
        case '>':
          t.kind = Tok::Op;
          t.text = std::string(1, c);
          advance();
          if (peek() == '=') {
            t.text += '=';
            advance();
          }
          break;
        case '=':
          single(t, Tok::Op);
          break;
        case '!':
          advance();
          if (peek() != '=') throw SyntaxError(t.loc, "character '!'", {"'!='"});
          advance();
          t.kind = Tok::Op;
          t.text = "!=";
          break;
        default:
          if (src_.substr(pos_, 3) == "≠") {
            t.kind = Tok::Op;
            t.text = "≠";
            pos_ += 3;
            ++col_;
          } else if (digit(c) || (c == '-' && digit(peek(1))) ||
                     (c == '.' && digit(peek(1)))) {
            number(t);
          } else if (c == 't' && peek(1) == '"') {
            advance();
            const SourceLocation at = here();
            std::string body = quoted();
            if (!try_parse_iso8601(body, t.time)) {
              throw SyntaxError(at, "timestamp \"" + body + "\"", {"ISO-8601 timestamp"});
            }
            t.kind = Tok::TimeLit;
            t.text = body;
          } else if (ident_start(c)) {
            t.kind = Tok::Ident;
            const std::size_t start = pos_;
            while (pos_ < src_.size() && ident_char(src_[pos_])) advance();
            t.text = std::string(src_.substr(start, pos_ - start));
          } else {
            std::string shown(1, c);
            throw SyntaxError(t.loc, "character '" + shown + "'", {});
          }
      }
      out.push_back(std::move(t));
    }
  }

 private:
  SourceLocation here() const { return {line_, col_}; }

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      // count code points, not bytes
      ++col_;
    }
  }

  void single(Token& t, Tok kind) {
    t.kind = kind;
    t.text = std::string(1, src_[pos_]);
    advance();
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string quoted() {
    const SourceLocation start = here();
    advance();  // opening quote
    std::string out;
    for (;;) {
      if (pos_ >= src_.size()) throw SyntaxError(start, "unterminated string", {"'\"'"});
      const char c = src_[pos_];
      if (c == '"') {
        advance();
        return out;
      }
      if (c == '\\') {
        const SourceLocation esc = here();
        advance();
        const char e = peek();
        if (pos_ < src_.size()) advance();
        switch (e) {
          case '"':
            out += '"';
            break;
          case '\\':
            out += '\\';
            break;
          case '/':
            out += '/';
            break;
          case 'n':
            out += '\n';
            break;
          case 't':
            out += '\t';
            break;
          case 'r':
            out += '\r';
            break;
          case 'u': {
            unsigned cp = 0;
            for (int i = 0; i < 4; ++i) {
              const char h = peek();
              unsigned v = 0;
              if (h >= '0' && h <= '9') {
                v = h - '0';
              } else if (h >= 'a' && h <= 'f') {
                v = 10 + h - 'a';
              } else if (h >= 'A' && h <= 'F') {
                v = 10 + h - 'A';
              } else {
                throw SyntaxError(esc, "malformed \\u escape", {"4 hex digits"});
              }
              cp = cp * 16 + v;
              advance();
            }
            append_utf8(out, cp);
            break;
          }
          default:
            throw SyntaxError(esc, "escape sequence", {"\\\"", "\\\\", "\\n", "\\t", "\\r", "\\u"});
        }
        continue;
      }
      out += c;
      advance();
    }
  }

  void number(Token& t) {
    const std::size_t start = pos_;
    if (peek() == '-') advance();
    while (digit(peek())) advance();
    if (peek() == '.' && digit(peek(1))) {
      advance();
      while (digit(peek())) advance();
    }
    if ((peek() == 'e' || peek() == 'E') &&
        (digit(peek(1)) || ((peek(1) == '+' || peek(1) == '-') && digit(peek(2))))) {
      advance();
      if (peek() == '+' || peek() == '-') advance();
      while (digit(peek())) advance();
    }
    t.kind = Tok::Number;
    t.text = std::string(src_.substr(start, pos_ - start));
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    auto [end, ec] = std::from_chars(first, last, t.number);
    if (ec != std::errc() || end != last) {
      throw SyntaxError(t.loc, "number " + t.text, {"finite number"});
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(Lexer(text).run()) {}

  RulesetExpr whole_ruleset() {
    RulesetExpr r = ruleset();
    expect_end();
    return r;
  }

  std::vector<ScopeDefinition> scope_file() {
    std::vector<ScopeDefinition> defs;
    std::set<std::string> seen;
    while (peek().kind != Tok::End) {
      if (!is_keyword(peek(), "SCOPE")) fail({"SCOPE", "end of input"});
      const SourceLocation at = next().loc;
      std::string name;
      if (peek().kind == Tok::String || (peek().kind == Tok::Ident && !reserved(peek().text))) {
        name = next().text;
      } else {
        fail({"scope name"});
      }
      if (name.empty()) fail_at(toks_[pos_ - 1], {"non-empty scope name"});
      expect(Tok::Colon, "':'");
      RulesetExpr r = ruleset();
      expect(Tok::Semicolon, "';'");
      if (!seen.insert(name).second) {
        throw Error("duplicate-scope",
                    to_string(at) + ": duplicate scope name '" + name + "'");
      }
      defs.push_back({std::move(name), std::move(r), at});
    }
    return defs;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }

  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  static bool is_keyword(const Token& t, std::string_view kw) {
    return t.kind == Tok::Ident && t.text == kw;
  }

  static bool reserved(std::string_view word) {
    return word == "INCLUDE" || word == "EXCLUDE" || word == "AND" || word == "OR" ||
           word == "SCOPE";
  }

  [[noreturn]] void fail_at(const Token& t, std::vector<std::string> expected) const {
    throw SyntaxError(t.loc, describe(t), std::move(expected));
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    fail_at(peek(), std::move(expected));
  }

  const Token& expect(Tok kind, const char* spelled) {
    if (peek().kind != kind) fail({spelled});
    return next();
  }

  void expect_end() {
    if (peek().kind != Tok::End) fail({"end of input"});
  }

  RulesetExpr ruleset() {
    if (peek().kind == Tok::LParen) return parenthesized();
    if (is_keyword(peek(), "INCLUDE") || is_keyword(peek(), "EXCLUDE")) {
      return make_rule(rule());
    }
    fail({"'('", "INCLUDE", "EXCLUDE"});
  }

  RulesetExpr parenthesized() {
    next();  // (
    RulesetExpr left;
    if (is_keyword(peek(), "INCLUDE") || is_keyword(peek(), "EXCLUDE")) {
      Rule r = rule();
      // `(INCLUDE s AND EXCLUDE t)` has been read greedily as one rule.
      if (r.is_combined() && peek().kind == Tok::RParen) {
        next();
        return make_rule(std::move(r));
      }
      left = make_rule(std::move(r));
    } else {
      left = ruleset();
    }
    Connective op;
    if (is_keyword(peek(), "AND")) {
      op = Connective::And;
    } else if (is_keyword(peek(), "OR")) {
      op = Connective::Or;
    } else {
      fail({"AND", "OR"});
    }
    next();
    RulesetExpr right = ruleset();
    expect(Tok::RParen, "')'");
    return op == Connective::And ? make_and(std::move(left), std::move(right))
                                 : make_or(std::move(left), std::move(right));
  }

  Rule rule() {
    Rule r;
    if (is_keyword(peek(), "EXCLUDE")) {
      next();
      r.exclude = statement();
      return r;
    }
    next();  // INCLUDE
    r.include = statement();
    if (is_keyword(peek(), "AND") && is_keyword(peek(1), "EXCLUDE")) {
      next();
      next();
      r.exclude = statement();
    }
    return r;
  }

  Statement statement() {
    expect(Tok::LBrace, "'{'");
    Statement s;
    s.items.push_back(item());
    while (peek().kind == Tok::Comma) {
      next();
      s.items.push_back(item());
    }
    if (peek().kind != Tok::RBrace) fail({"','", "'}'"});
    next();
    return s;
  }

  std::string name(const char* what) {
    const Token& t = peek();
    if (t.kind == Tok::String) {
      if (t.text.empty()) fail({std::string("non-empty ") + what});
      return next().text;
    }
    if (t.kind == Tok::Ident && !reserved(t.text)) return next().text;
    fail({what});
  }

  FilterItem item() {
    expect(Tok::LParen, "'('");
    FilterItem item;
    item.entity.loc = peek().loc;
    if (peek().kind == Tok::Ident && (peek().text == "object" || peek().text == "event") &&
        peek(1).kind == Tok::Colon) {
      item.entity.kind = peek().text == "object" ? EntityKind::Object : EntityKind::Event;
      next();
      next();
    }
    item.entity.name = name("entity name");
    if (peek().kind == Tok::RParen) {
      next();
      return item;
    }
    expect(Tok::Comma, "',' or ')'");
    if (peek().kind == Tok::Comma) {
      // `(entity, , , )`: all three slots empty
      next();
      expect(Tok::Comma, "','");
      expect(Tok::RParen, "')'");
      return item;
    }
    Condition cond;
    cond.loc = peek().loc;
    cond.attribute = name("attribute name");
    expect(Tok::Comma, "','");
    const Token& op = peek();
    std::optional<Operator> parsed;
    if (op.kind == Tok::Op || op.kind == Tok::Ident) parsed = operator_from_string(op.text);
    if (!parsed) fail({"operator"});
    next();
    cond.op = *parsed;
    expect(Tok::Comma, "','");
    cond.value = value();
    expect(Tok::RParen, "')'");
    item.condition = std::move(cond);
    return item;
  }

  AttributeValue value() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::String:
        return next().text;
      case Tok::Number:
        return next().number;
      case Tok::TimeLit:
        return next().time;
      case Tok::Ident:
        if (t.text == "true") {
          next();
          return true;
        }
        if (t.text == "false") {
          next();
          return false;
        }
        break;
      default:
        break;
    }
    fail({"value"});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

RulesetExpr parse_ruleset(std::string_view text) { return Parser(text).whole_ruleset(); }

std::vector<ScopeDefinition> parse_scope_file(std::string_view text) {
  return Parser(text).scope_file();
}

}  // namespace procscope
