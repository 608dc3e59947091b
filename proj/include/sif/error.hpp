#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sif {

enum class ErrorCode {
  UnknownField,
  TypeMismatch,
  IndexOutOfRange,
  IdCollision,
  ParseError,
  UnknownKind,
  ArityViolation,
  CompilerNotFound,
  CompilerError,
  Timeout,
  HookFailure,
  ValidationFailure,
  MissingBody,
  NotFound,
  InvalidRequest,
  NoInjectableFunction,
  UnknownTarget,
  Io,
};

std::string_view to_string(ErrorCode code);

// Every failure the library reports is an Error carrying a code, so callers
// (the CLI in particular) can map it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sif
