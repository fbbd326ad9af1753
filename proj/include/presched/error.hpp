#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace presched {

enum class ErrorCode {
  MissingJob,
  ZeroDuration,
  Cycle,
  BadParams,
  BadFormat,
  SelfLink,
  MixedTypes,
  InfeasibleInput,
  NotNormalized,
  DuplicateType,
  ZeroInput,
  UnassignedParent,
  JobExceedsBudget,
  RevealViolation,
  TooLarge,
  MissingMetadata,
  SymbolOutOfRange,
  NotSupersequence,
  UnsortedMachines,
  BadLoads,
  InvalidSolution,
  SchedulerViolation,
  Deadlock,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace presched
