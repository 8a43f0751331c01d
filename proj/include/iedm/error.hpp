#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace iedm {

enum class ErrorCode {
  InvalidIri,
  InvalidLiteral,
  UnknownClass,
  UnknownProperty,
  AlreadyExists,
  LiteralOnObjectProperty,
  ObjectOnDataProperty,
  FrozenClass,
  CycleDetected,
  SyntaxError,
  UnknownPrefix,
  UnknownElement,
  InvalidMaterial,
  ValidationError,
  UnknownExperiment,
  NotFound,
  VersionConflict,
  Forbidden,
  TemporalOrder,
  TypeMismatch,
  Io,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this one exception type; callers
// branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& message)
      : Error(ErrorCode::SyntaxError, "line " + std::to_string(line) + ", column " +
                                          std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        detail_(message) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

}  // namespace iedm
