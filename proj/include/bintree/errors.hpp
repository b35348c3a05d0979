#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bintree {

enum class ErrorCode {
  InvalidInput,
  ProbabilityOutOfRange,
  LengthMismatch,
  InvalidWorkerCount,
  RankOutOfRange,
  Overflow,
  EnumerationTooLarge,
  PathDependentPayoff,
  NonConstantProbs,
  InfeasibleAllocation,
};

std::string_view to_string(ErrorCode code) noexcept;

// All domain failures raised by the library carry one of the codes above so
// front ends can map them without parsing messages.
class ValuationError : public std::runtime_error {
 public:
  ValuationError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bintree
