#pragma once

#include <stdexcept>
#include <string>

namespace advdiff {

enum class ErrorCode {
  EmptyDomain,
  NonPositiveDiffusivity,
  NoDirichletEnd,
  TooFewElements,
  IndexOutOfRange,
  UnsupportedOrder,
  MeshProblemMismatch,
  NonPositiveScale,
  InteriorDirichletUnsupported,
  EndHasDirichlet,
  ZeroPivot,
  NotConstantCoefficient,
  InvalidArgument,
};

const char* to_string(ErrorCode code);

// Single exception type for the whole library; the code is machine-checkable,
// the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyDomain: return "EmptyDomain";
    case ErrorCode::NonPositiveDiffusivity: return "NonPositiveDiffusivity";
    case ErrorCode::NoDirichletEnd: return "NoDirichletEnd";
    case ErrorCode::TooFewElements: return "TooFewElements";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::MeshProblemMismatch: return "MeshProblemMismatch";
    case ErrorCode::NonPositiveScale: return "NonPositiveScale";
    case ErrorCode::InteriorDirichletUnsupported: return "InteriorDirichletUnsupported";
    case ErrorCode::EndHasDirichlet: return "EndHasDirichlet";
    case ErrorCode::ZeroPivot: return "ZeroPivot";
    case ErrorCode::NotConstantCoefficient: return "NotConstantCoefficient";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

}  // namespace advdiff
