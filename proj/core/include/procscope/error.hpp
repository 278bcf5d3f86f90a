#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace procscope {

/// Base exception for every failure raised by the library. `code()` is a
/// stable kebab-case identifier (e.g. "not-found", "empty-scope") that
/// callers can switch on; `what()` is a human-readable message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// Malformed JSON text; `offset()` is the byte offset reported by the reader.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& message)
      : Error("parse-error", message), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Structurally valid JSON that does not follow the expected schema.
/// `path()` is a JSON path such as `events[3].time`.
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& message)
      : Error("schema-error", path + ": " + message), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Position inside DSL source text (1-based).
struct SourceLocation {
  int line = 0;
  int column = 0;

  bool known() const noexcept { return line > 0; }
  friend bool operator==(const SourceLocation&, const SourceLocation&) = default;
};

std::string to_string(const SourceLocation& loc);

/// Text that is not a sentence of the enrichment language.
class SyntaxError : public Error {
 public:
  SyntaxError(SourceLocation where, std::string found,
              std::vector<std::string> expected);

  const SourceLocation& where() const noexcept { return where_; }
  const std::string& found() const noexcept { return found_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  SourceLocation where_;
  std::string found_;
  std::vector<std::string> expected_;
};

}  // namespace procscope
