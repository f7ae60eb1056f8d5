#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cimtree {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  CycleDetected,
  CapExceeded,
  NonForestSkeleton,
  NotATree,
  EmptySet,
  BadLength,
  LabelOutOfRange,
  SkeletonMismatch,
  DisconnectedSubtree,
  NotATurnPair,
  VertexNotFound,
  NotASimplex,
  SingularSystem,
  NotStable,
  TooSmall,
  SingularConditioning,
  ZeroVariance,
  IterationCapExceeded,
  ParseError,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NonForestSkeleton: return "NonForestSkeleton";
    case ErrorCode::NotATree: return "NotATree";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::BadLength: return "BadLength";
    case ErrorCode::LabelOutOfRange: return "LabelOutOfRange";
    case ErrorCode::SkeletonMismatch: return "SkeletonMismatch";
    case ErrorCode::DisconnectedSubtree: return "DisconnectedSubtree";
    case ErrorCode::NotATurnPair: return "NotATurnPair";
    case ErrorCode::VertexNotFound: return "VertexNotFound";
    case ErrorCode::NotASimplex: return "NotASimplex";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::NotStable: return "NotStable";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::SingularConditioning: return "SingularConditioning";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
    case ErrorCode::IterationCapExceeded: return "IterationCapExceeded";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace cimtree
