#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "permlab/matrix.hpp"

namespace permlab {

inline constexpr std::size_t kExpansionMaxN = 12;
inline constexpr std::size_t kRyserMaxN = 30;
inline constexpr std::size_t kPrefixTableMaxN = 22;

/// Last-row minor expansion per(A) = sum_i per(A'_i) a_{n,i}, memoised on the
/// set of surviving columns. per(0x0) = 1. Throws NotSquare, SizeCap (n > 12).
FieldElem permanent_expansion(const Matrix& a);

/// Inclusion-exclusion over column subsets in Gray-code order, keeping the
/// per-row partial sums in F_q. Throws NotSquare, SizeCap (n > 30).
FieldElem permanent_ryser(const Matrix& a);

/// Expansion up to n = 4, Gray-code kernel above.
FieldElem permanent(const Matrix& a);

/// per(A; I): permanent of A with its last |I| rows and the columns in I
/// removed. A must be square and I a valid 0-based index set.
FieldElem per_sub(const Matrix& a, std::span<const std::size_t> removed_cols);

using ColumnMask = std::uint32_t;

ColumnMask to_mask(std::span<const std::size_t> set);
IndexSet from_mask(ColumnMask mask);

/// Table of per(top |S| rows of A, columns S) for every column subset S with
/// |S| <= depth. One table answers per(A; I) for every I with |I| >= n - depth
/// in O(1), which is what the event detectors and the growth process need.
class PrefixPermanents {
 public:
  /// Throws SizeCap if cols > 22, OutOfRange if depth > rows.
  PrefixPermanents(const Matrix& a, std::size_t depth);
  explicit PrefixPermanents(const Matrix& a) : PrefixPermanents(a, a.rows()) {}

  std::size_t cols() const noexcept { return cols_; }
  std::size_t depth() const noexcept { return depth_; }
  ColumnMask full_mask() const noexcept { return static_cast<ColumnMask>((std::uint64_t{1} << cols_) - 1); }

  /// per(top |S| rows, columns S).
  Value at(ColumnMask cols) const noexcept { return table_[cols]; }
  /// per(A; I) where `removed` is the column mask I.
  Value per_removed(ColumnMask removed) const noexcept { return table_[full_mask() & ~removed]; }

 private:
  std::size_t cols_;
  std::size_t depth_;
  std::vector<Value> table_;
};

}  // namespace permlab
