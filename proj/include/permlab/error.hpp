#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace permlab {

enum class ErrorCode {
  NotAPrimePower,
  TableCapExceeded,
  DivisionByZero,
  FieldMismatch,
  OutOfRange,
  DuplicateIndex,
  NotSquare,
  SizeCap,
  BadWeights,
  NonPrimeField,
  BadConfig,
  DegenerateDistribution,
  ConditioningTooRare,
  CharacteristicTwo,
  BadN,
  NotHollowSymmetric,
  ReplayMismatch,
  Usage,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure in the library surfaces as an Error carrying a code that
/// callers (and the CLI exit-code logic) can dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace permlab
