#pragma once

#include <stdexcept>
#include <string>

namespace hf {

// Domain error with a stable machine-readable kind ("NotInjective",
// "CapExceeded", ...). The CLI maps these to exit code 1.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

private:
  std::string kind_;
};

// Malformed input text. The CLI maps these to exit code 2 (usage error).
class ParseError : public Error {
public:
  ParseError(const std::string& message, int line = 1, int column = 1)
      : Error("SyntaxError", message), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

}  // namespace hf
