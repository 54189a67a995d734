#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dvlg {

enum class ErrorKind {
  LengthMismatch,
  WidthMismatch,
  PatchPreconditionViolated,
  SplitPreconditionViolated,
  NegativeInput,
  BadLength,
  EmptyInput,
  PreconditionViolated,
  SyntaxError,
  SortError,
  UnboundVariable,
  ResourceLimit,
  NotLatticeSorted,
  NotSentence,
  DepthExceeded,
  NotPrimitive,
  UnsupportedFragment,
};

const char* to_string(ErrorKind kind);

/// All library failures are reported through this exception type.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  Error(ErrorKind kind, const std::string& what, std::size_t position)
      : std::runtime_error(std::string(to_string(kind)) + " at " + std::to_string(position) + ": " + what),
        kind_(kind),
        position_(position) {}

  ErrorKind kind() const { return kind_; }
  /// Byte offset into the source text; only meaningful for SyntaxError.
  std::size_t position() const { return position_; }

 private:
  ErrorKind kind_;
  std::size_t position_ = 0;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::WidthMismatch: return "WidthMismatch";
    case ErrorKind::PatchPreconditionViolated: return "PatchPreconditionViolated";
    case ErrorKind::SplitPreconditionViolated: return "SplitPreconditionViolated";
    case ErrorKind::NegativeInput: return "NegativeInput";
    case ErrorKind::BadLength: return "BadLength";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::SortError: return "SortError";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::NotLatticeSorted: return "NotLatticeSorted";
    case ErrorKind::NotSentence: return "NotSentence";
    case ErrorKind::DepthExceeded: return "DepthExceeded";
    case ErrorKind::NotPrimitive: return "NotPrimitive";
    case ErrorKind::UnsupportedFragment: return "UnsupportedFragment";
  }
  return "Error";
}

}  // namespace dvlg
