#pragma once

#include <stdexcept>
#include <string>

namespace symplex {

enum class ErrorCode {
  MixedRing,
  NotInRing,
  NotMember,
  MembershipBoundExceeded,
  DivisionByZero,
  NotEuclidean,
  IncompleteAssignment,
  Unsupported,
  RankTooLarge,
  NotSubcone,
  TooSmall,
  BadIndices,
  NotUnit,
  NotMonomial,
  SignConventionFault,
  DimensionMismatch,
  NotSymplectic,
  NotAField,
  NotLocal,
  DecompositionFailed,
  UnknownLemmaId,
  ParseError,
};

const char* to_string(ErrorCode code) noexcept;

/// Exception carrying a machine-readable code. All library failures are
/// reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace symplex
