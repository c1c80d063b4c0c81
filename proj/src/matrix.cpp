#include "permlab/matrix.hpp"

#include <string>
#include <utility>

namespace permlab {

namespace {

void validate_index_set(std::span<const std::size_t> set, std::size_t bound, const char* what) {
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set[i] >= bound) {
      throw Error(ErrorCode::OutOfRange, std::string(what) + " index " + std::to_string(set[i]) +
                                             " out of range [0," + std::to_string(bound) + ")");
    }
    if (i > 0 && set[i] <= set[i - 1]) {
      if (set[i] == set[i - 1]) {
        throw Error(ErrorCode::DuplicateIndex, std::string(what) + " index " + std::to_string(set[i]) + " repeated");
      }
      throw Error(ErrorCode::OutOfRange, std::string(what) + " indices must be strictly increasing");
    }
  }
}

// Row-reduces `m` in place; returns the rank and (for square input) the
// determinant of the original matrix.
std::pair<std::size_t, Value> eliminate(Matrix m) {
  const Field& f = m.field();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<Value> a = m.data();
  auto at = [&](std::size_t i, std::size_t j) -> Value& { return a[i * cols + j]; };

  Value det = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && at(pivot, c) == 0) ++pivot;
    if (pivot == rows) {
      det = 0;
      continue;
    }
    if (pivot != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(at(pivot, j), at(r, j));
      det = f.neg(det);
    }
    const Value pv = at(r, c);
    det = f.mul(det, pv);
    const Value pinv = f.inv(pv);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (at(i, c) == 0) continue;
      const Value factor = f.mul(at(i, c), pinv);
      for (std::size_t j = c; j < cols; ++j) {
        at(i, j) = f.sub(at(i, j), f.mul(factor, at(r, j)));
      }
    }
    ++r;
  }
  if (r < rows) det = 0;
  return {r, det};
}

}  // namespace

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<Value> entries)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw Error(ErrorCode::OutOfRange, "expected " + std::to_string(rows_ * cols_) + " entries, got " +
                                           std::to_string(data_.size()));
  }
  for (Value v : data_) {
    if (!field_.contains(v)) {
      throw Error(ErrorCode::OutOfRange, "entry " + std::to_string(v) + " not in " + field_.describe());
    }
  }
}

Matrix Matrix::identity(Field field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

Matrix Matrix::from_rows(Field field, const std::vector<std::vector<Value>>& rows) {
  const std::size_t m = rows.size();
  const std::size_t n = m == 0 ? 0 : rows.front().size();
  std::vector<Value> entries;
  entries.reserve(m * n);
  for (const auto& r : rows) {
    if (r.size() != n) throw Error(ErrorCode::OutOfRange, "ragged matrix rows");
    entries.insert(entries.end(), r.begin(), r.end());
  }
  return Matrix(std::move(field), m, n, std::move(entries));
}

void Matrix::set(std::size_t i, std::size_t j, Value v) {
  if (i >= rows_ || j >= cols_) throw Error(ErrorCode::OutOfRange, "matrix index out of range");
  if (!field_.contains(v)) throw Error(ErrorCode::OutOfRange, "entry not in " + field_.describe());
  data_[i * cols_ + j] = v;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.field(), a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) t.set(j, i, a(i, j));
  }
  return t;
}

Matrix delete_last_rows(const Matrix& a, std::size_t s) {
  if (s > a.rows()) {
    throw Error(ErrorCode::OutOfRange,
                "cannot delete " + std::to_string(s) + " rows from " + std::to_string(a.rows()));
  }
  const std::size_t keep = a.rows() - s;
  std::vector<Value> entries(a.data().begin(), a.data().begin() + static_cast<std::ptrdiff_t>(keep * a.cols()));
  return Matrix(a.field(), keep, a.cols(), std::move(entries));
}

Matrix submatrix(const Matrix& m, std::span<const std::size_t> rows, std::span<const std::size_t> cols) {
  validate_index_set(rows, m.rows(), "row");
  validate_index_set(cols, m.cols(), "column");
  std::vector<Value> entries;
  entries.reserve(rows.size() * cols.size());
  for (std::size_t i : rows) {
    for (std::size_t j : cols) entries.push_back(m(i, j));
  }
  return Matrix(m.field(), rows.size(), cols.size(), std::move(entries));
}

IndexSet complement(std::span<const std::size_t> set, std::size_t n) {
  validate_index_set(set, n, "set");
  IndexSet out;
  out.reserve(n - set.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (k < set.size() && set[k] == i) {
      ++k;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

FieldElem determinant(const Matrix& a) {
  if (!a.is_square()) {
    throw Error(ErrorCode::NotSquare, "determinant of " + std::to_string(a.rows()) + "x" +
                                          std::to_string(a.cols()) + " matrix");
  }
  return FieldElem(a.field(), eliminate(a).second);
}

std::size_t rank(const Matrix& a) { return eliminate(a).first; }

std::vector<Value> multiply(const Matrix& m, std::span<const Value> x) {
  if (x.size() != m.cols()) throw Error(ErrorCode::OutOfRange, "vector length does not match column count");
  const Field& f = m.field();
  std::vector<Value> out(m.rows(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Value acc = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) acc = f.add(acc, f.mul(m(i, j), x[j]));
    out[i] = acc;
  }
  return out;
}

}  // namespace permlab
