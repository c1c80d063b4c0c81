#include "permlab/error.hpp"

namespace permlab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotAPrimePower: return "NotAPrimePower";
    case ErrorCode::TableCapExceeded: return "TableCapExceeded";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::DuplicateIndex: return "DuplicateIndex";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::SizeCap: return "SizeCap";
    case ErrorCode::BadWeights: return "BadWeights";
    case ErrorCode::NonPrimeField: return "NonPrimeField";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::DegenerateDistribution: return "DegenerateDistribution";
    case ErrorCode::ConditioningTooRare: return "ConditioningTooRare";
    case ErrorCode::CharacteristicTwo: return "CharacteristicTwo";
    case ErrorCode::BadN: return "BadN";
    case ErrorCode::NotHollowSymmetric: return "NotHollowSymmetric";
    case ErrorCode::ReplayMismatch: return "ReplayMismatch";
    case ErrorCode::Usage: return "Usage";
  }
  return "Unknown";
}

}  // namespace permlab
