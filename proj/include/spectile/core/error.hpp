#pragma once

#include <stdexcept>
#include <string>

namespace spectile {

enum class ErrorCode {
  MalformedInput,
  NotFullDimensional,
  Unbounded,
  PreconditionFailed,
  ConstructionFailed,
  WindowEmpty,
  WindowTooSmall,
  NotPeriodic,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::NotFullDimensional: return "NotFullDimensional";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::ConstructionFailed: return "ConstructionFailed";
    case ErrorCode::WindowEmpty: return "WindowEmpty";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::NotPeriodic: return "NotPeriodic";
  }
  return "Unknown";
}

/// Single exception type for the library; `code()` tells callers which
/// contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace spectile
