#include "permlab/permanent.hpp"

#include <bit>
#include <string>

namespace permlab {

namespace {

void require_square(const Matrix& a, std::size_t cap, const char* kernel) {
  if (!a.is_square()) {
    throw Error(ErrorCode::NotSquare, std::string(kernel) + " of " + std::to_string(a.rows()) + "x" +
                                          std::to_string(a.cols()) + " matrix");
  }
  if (a.rows() > cap) {
    throw Error(ErrorCode::SizeCap, std::string(kernel) + " limited to n <= " + std::to_string(cap) +
                                        ", got n = " + std::to_string(a.rows()));
  }
}

struct ExpansionMemo {
  const Matrix& a;
  std::vector<Value> value;
  std::vector<bool> known;

  // per of the top popcount(cols) rows restricted to `cols`.
  Value per(ColumnMask cols) {
    if (cols == 0) return 1;
    if (known[cols]) return value[cols];
    const Field& f = a.field();
    const std::size_t last = static_cast<std::size_t>(std::popcount(cols)) - 1;
    Value acc = 0;
    for (ColumnMask rest = cols; rest; rest &= rest - 1) {
      const auto j = static_cast<std::size_t>(std::countr_zero(rest));
      const Value x = a(last, j);
      if (x == 0) continue;
      acc = f.add(acc, f.mul(x, per(cols & ~(ColumnMask{1} << j))));
    }
    known[cols] = true;
    value[cols] = acc;
    return acc;
  }
};

Value ryser_prime(const Matrix& a) {
  const std::size_t n = a.rows();
  const std::uint64_t p = a.field().p();
  std::vector<std::uint64_t> sums(n, 0);
  std::uint64_t even = 0, odd = 0;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  std::uint64_t prev_gray = 0;
  for (std::uint64_t k = 1; k < subsets; ++k) {
    const std::uint64_t gray = k ^ (k >> 1);
    const auto j = static_cast<std::size_t>(std::countr_zero(gray ^ prev_gray));
    const bool added = (gray >> j) & 1u;
    prev_gray = gray;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t x = a(i, j);
      sums[i] = added ? (sums[i] + x) % p : (sums[i] + p - x) % p;
    }
    std::uint64_t prod = 1;
    for (std::size_t i = 0; i < n && prod != 0; ++i) prod = prod * sums[i] % p;
    if (std::popcount(gray) & 1) {
      odd = (odd + prod) % p;
    } else {
      even = (even + prod) % p;
    }
  }
  std::uint64_t total = (even + p - odd) % p;
  if (n & 1) total = (p - total) % p;
  return static_cast<Value>(total);
}

Value ryser_generic(const Matrix& a) {
  const std::size_t n = a.rows();
  const Field& f = a.field();
  std::vector<Value> sums(n, 0);
  Value even = 0, odd = 0;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  std::uint64_t prev_gray = 0;
  for (std::uint64_t k = 1; k < subsets; ++k) {
    const std::uint64_t gray = k ^ (k >> 1);
    const auto j = static_cast<std::size_t>(std::countr_zero(gray ^ prev_gray));
    const bool added = (gray >> j) & 1u;
    prev_gray = gray;
    for (std::size_t i = 0; i < n; ++i) {
      sums[i] = added ? f.add(sums[i], a(i, j)) : f.sub(sums[i], a(i, j));
    }
    Value prod = 1;
    for (std::size_t i = 0; i < n && prod != 0; ++i) prod = f.mul(prod, sums[i]);
    if (std::popcount(gray) & 1) {
      odd = f.add(odd, prod);
    } else {
      even = f.add(even, prod);
    }
  }
  Value total = f.sub(even, odd);
  if (n & 1) total = f.neg(total);
  return total;
}

}  // namespace

FieldElem permanent_expansion(const Matrix& a) {
  require_square(a, kExpansionMaxN, "permanent_expansion");
  const std::size_t n = a.rows();
  ExpansionMemo memo{a, std::vector<Value>(std::size_t{1} << n, 0), std::vector<bool>(std::size_t{1} << n, false)};
  return FieldElem(a.field(), memo.per(static_cast<ColumnMask>((std::uint64_t{1} << n) - 1)));
}

FieldElem permanent_ryser(const Matrix& a) {
  require_square(a, kRyserMaxN, "permanent_ryser");
  if (a.rows() == 0) return FieldElem(a.field(), 1);
  return FieldElem(a.field(), a.field().is_prime() ? ryser_prime(a) : ryser_generic(a));
}

FieldElem permanent(const Matrix& a) {
  if (a.is_square() && a.rows() <= 4) return permanent_expansion(a);
  return permanent_ryser(a);
}

FieldElem per_sub(const Matrix& a, std::span<const std::size_t> removed_cols) {
  if (!a.is_square()) throw Error(ErrorCode::NotSquare, "per_sub expects a square matrix");
  const std::size_t n = a.rows();
  if (removed_cols.size() > n) throw Error(ErrorCode::OutOfRange, "more removed columns than columns");
  const IndexSet keep_cols = complement(removed_cols, n);
  IndexSet keep_rows(n - removed_cols.size());
  for (std::size_t i = 0; i < keep_rows.size(); ++i) keep_rows[i] = i;
  return permanent(submatrix(a, keep_rows, keep_cols));
}

ColumnMask to_mask(std::span<const std::size_t> set) {
  ColumnMask m = 0;
  for (std::size_t i : set) {
    if (i >= 32) throw Error(ErrorCode::OutOfRange, "column index too large for a mask");
    m |= ColumnMask{1} << i;
  }
  return m;
}

IndexSet from_mask(ColumnMask mask) {
  IndexSet out;
  for (; mask; mask &= mask - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
  return out;
}

PrefixPermanents::PrefixPermanents(const Matrix& a, std::size_t depth) : cols_(a.cols()), depth_(depth) {
  if (cols_ > kPrefixTableMaxN) {
    throw Error(ErrorCode::SizeCap, "prefix permanent table limited to " + std::to_string(kPrefixTableMaxN) +
                                        " columns, got " + std::to_string(cols_));
  }
  if (depth > a.rows() || depth > cols_) throw Error(ErrorCode::OutOfRange, "prefix depth exceeds matrix size");
  const std::size_t size = std::size_t{1} << cols_;
  table_.assign(size, 0);
  table_[0] = 1;
  const Field& f = a.field();
  const std::uint64_t p = f.p();
  const bool prime = f.is_prime();
  for (std::size_t s = 1; s < size; ++s) {
    const auto cols = static_cast<ColumnMask>(s);
    const auto r = static_cast<std::size_t>(std::popcount(cols));
    if (r > depth) continue;
    const auto row = a.row(r - 1);
    if (prime) {
      std::uint64_t acc = 0;
      for (ColumnMask rest = cols; rest; rest &= rest - 1) {
        const int j = std::countr_zero(rest);
        acc += std::uint64_t{row[j]} * table_[cols & ~(ColumnMask{1} << j)] % p;
      }
      table_[s] = static_cast<Value>(acc % p);
    } else {
      Value acc = 0;
      for (ColumnMask rest = cols; rest; rest &= rest - 1) {
        const int j = std::countr_zero(rest);
        acc = f.add(acc, f.mul(row[j], table_[cols & ~(ColumnMask{1} << j)]));
      }
      table_[s] = acc;
    }
  }
}

}  // namespace permlab
