#include "sif/error.hpp"

namespace sif {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownField: return "unknown-field";
    case ErrorCode::TypeMismatch: return "type-mismatch";
    case ErrorCode::IndexOutOfRange: return "index-out-of-range";
    case ErrorCode::IdCollision: return "id-collision";
    case ErrorCode::ParseError: return "parse-error";
    case ErrorCode::UnknownKind: return "unknown-kind";
    case ErrorCode::ArityViolation: return "arity-violation";
    case ErrorCode::CompilerNotFound: return "compiler-not-found";
    case ErrorCode::CompilerError: return "compiler-error";
    case ErrorCode::Timeout: return "timeout";
    case ErrorCode::HookFailure: return "hook-failure";
    case ErrorCode::ValidationFailure: return "validation-failure";
    case ErrorCode::MissingBody: return "missing-body";
    case ErrorCode::NotFound: return "not-found";
    case ErrorCode::InvalidRequest: return "invalid-request";
    case ErrorCode::NoInjectableFunction: return "no-injectable-function";
    case ErrorCode::UnknownTarget: return "unknown-target";
    case ErrorCode::Io: return "io-error";
  }
  return "error";
}

}  // namespace sif
