#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "permlab/field.hpp"

namespace permlab {

/// Index sets are 0-based and strictly increasing inside the library. The
/// JSON/CLI boundary speaks 1-based indices and converts on entry.
using IndexSet = std::vector<std::size_t>;

/// Dense row-major matrix over F_q. 0x0, 0xn and mx0 shapes are all valid.
class Matrix {
 public:
  Matrix(Field field, std::size_t rows, std::size_t cols);
  /// Throws OutOfRange if the entry count is wrong or an entry is not < q.
  Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<Value> entries);

  static Matrix identity(Field field, std::size_t n);
  static Matrix from_rows(Field field, const std::vector<std::vector<Value>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  const Field& field() const noexcept { return field_; }

  Value operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
  FieldElem elem(std::size_t i, std::size_t j) const { return FieldElem(field_, (*this)(i, j)); }
  void set(std::size_t i, std::size_t j, Value v);

  std::span<const Value> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }
  const std::vector<Value>& data() const noexcept { return data_; }

  friend bool operator==(const Matrix& a, const Matrix& b) noexcept {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Value> data_;
};

Matrix transpose(const Matrix& a);

/// A with its last s rows removed. Throws OutOfRange if s > rows.
Matrix delete_last_rows(const Matrix& a, std::size_t s);

/// M[rows x cols], original order preserved. Both sets must be strictly
/// increasing; throws OutOfRange or DuplicateIndex otherwise.
Matrix submatrix(const Matrix& m, std::span<const std::size_t> rows, std::span<const std::size_t> cols);

/// Complement of `set` in {0..n-1}; `set` must be a valid index set.
IndexSet complement(std::span<const std::size_t> set, std::size_t n);

/// Throws NotSquare. det of the 0x0 matrix is 1.
FieldElem determinant(const Matrix& a);

std::size_t rank(const Matrix& a);

/// M x for x of length cols.
std::vector<Value> multiply(const Matrix& m, std::span<const Value> x);

}  // namespace permlab
