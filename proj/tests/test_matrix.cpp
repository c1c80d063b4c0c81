#include <gtest/gtest.h>

#include <bit>
#include <functional>

#include "oracles.hpp"
#include "permlab/permanent.hpp"
#include "permlab/random_stream.hpp"

using namespace permlab;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Usage;
}

}  // namespace

TEST(Matrix, DeleteLastRows) {
  const Field f = Field::make(5);
  RandomStream rs(1);
  const Matrix a = oracle::random_matrix(f, 4, 4, rs);
  EXPECT_EQ(delete_last_rows(a, 0), a);
  const Matrix none = delete_last_rows(a, 4);
  EXPECT_EQ(none.rows(), 0u);
  EXPECT_EQ(none.cols(), 4u);
  const Matrix b = oracle::random_matrix(f, 3, 3, rs);
  const Matrix top = delete_last_rows(b, 1);
  ASSERT_EQ(top.rows(), 2u);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(top(i, j), b(i, j));
  EXPECT_EQ(code_of([&] { delete_last_rows(b, 4); }), ErrorCode::OutOfRange);
}

TEST(Matrix, Submatrix) {
  const Field f = Field::make(7);
  const Matrix m = Matrix::from_rows(f, {{1, 2, 3}, {4, 5, 6}, {0, 1, 2}});
  const IndexSet rows{0, 2}, cols{1, 2};
  EXPECT_EQ(submatrix(m, rows, cols), Matrix::from_rows(f, {{2, 3}, {1, 2}}));
  const IndexSet empty;
  const Matrix e = submatrix(m, empty, cols);
  EXPECT_EQ(e.rows(), 0u);
  EXPECT_EQ(e.cols(), 2u);
  EXPECT_EQ(submatrix(m, rows, empty).cols(), 0u);
  const IndexSet dup{1, 1}, bad{0, 3}, unordered{2, 0};
  EXPECT_EQ(code_of([&] { submatrix(m, dup, cols); }), ErrorCode::DuplicateIndex);
  EXPECT_EQ(code_of([&] { submatrix(m, bad, cols); }), ErrorCode::OutOfRange);
  EXPECT_THROW(submatrix(m, unordered, cols), Error);
  EXPECT_EQ(complement(rows, 3), (IndexSet{1}));
}

TEST(Matrix, RejectsEntriesOutsideField) {
  EXPECT_EQ(code_of([] { Matrix(Field::make(3), 1, 2, {0, 3}); }), ErrorCode::OutOfRange);
  EXPECT_EQ(code_of([] { Matrix(Field::make(3), 2, 2, {0, 1, 2}); }), ErrorCode::OutOfRange);
}

TEST(Determinant, Examples) {
  EXPECT_EQ(determinant(Matrix::identity(Field::make(7), 5)).value(), 1u);
  const Field f3 = Field::make(3);
  EXPECT_EQ(determinant(Matrix::from_rows(f3, {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}})).value(), 2u);
  EXPECT_EQ(determinant(Matrix(f3, 0, 0)).value(), 1u);
  EXPECT_EQ(code_of([&] { determinant(Matrix(f3, 2, 3)); }), ErrorCode::NotSquare);
}

TEST(Determinant, MatchesSignedPermutationSum) {
  RandomStream rs(2);
  for (std::uint32_t q : {5u, 9u, 13u}) {
    const Field f = Field::make(q);
    for (int t = 0; t < 200; ++t) {
      const Matrix a = oracle::random_matrix(f, 4, 4, rs);
      ASSERT_EQ(determinant(a).value(), oracle::det(a));
    }
  }
}

TEST(Determinant, ExhaustiveSmallCases) {
  for (std::uint32_t q : {2u, 3u}) {
    const Field f = Field::make(q);
    for (std::size_t n = 0; n <= 3; ++n) {
      oracle::for_each_matrix(f, n, n, [&](const Matrix& a) {
        ASSERT_EQ(determinant(a).value(), oracle::det(a));
        ASSERT_EQ(permanent(a).value(), oracle::per(a));
      });
    }
  }
}

TEST(Determinant, Exhaustive4x4OverF2) {
  const Field f = Field::make(2);
  oracle::for_each_matrix(f, 4, 4, [&](const Matrix& a) {
    ASSERT_EQ(determinant(a).value(), oracle::det(a));
    ASSERT_EQ(permanent(a).value(), oracle::per(a));
  });
}

TEST(Rank, Properties) {
  const Field f = Field::make(5);
  EXPECT_EQ(rank(Matrix::identity(f, 6)), 6u);
  EXPECT_EQ(rank(Matrix(f, 0, 4)), 0u);
  EXPECT_EQ(rank(Matrix(f, 3, 3)), 0u);
  RandomStream rs(3);
  for (int t = 0; t < 200; ++t) {
    const Matrix a = oracle::random_matrix(f, 3 + t % 4, 2 + t % 5, rs);
    ASSERT_EQ(rank(a), rank(transpose(a)));
  }
  const Field f7 = Field::make(7);
  for (Value a = 1; a < 7; ++a)
    for (Value b = 1; b < 7; ++b)
      for (Value c = 1; c < 7; ++c) {
        ASSERT_EQ(rank(Matrix::from_rows(f7, {{0, a, b}, {a, 0, c}, {b, c, 0}})), 3u);
      }
}

TEST(Permanent, Examples) {
  const Field f5 = Field::make(5);
  const Matrix empty(f5, 0, 0);
  EXPECT_EQ(permanent_expansion(empty).value(), 1u);
  EXPECT_EQ(permanent_ryser(empty).value(), 1u);
  EXPECT_EQ(permanent(Matrix::from_rows(f5, {{1, 2}, {3, 4}})).value(), (1 * 4 + 2 * 3) % 5);
  const Matrix ones = Matrix::from_rows(f5, std::vector<std::vector<Value>>(4, std::vector<Value>(4, 1)));
  EXPECT_EQ(permanent_expansion(ones).value(), 4u);
  EXPECT_EQ(permanent_ryser(ones).value(), 4u);
  EXPECT_EQ(permanent_ryser(Matrix::identity(Field::make(3), 8)).value(), 1u);
}

TEST(Permanent, SizeCaps) {
  const Field f = Field::make(3);
  EXPECT_EQ(code_of([&] { permanent_expansion(Matrix(f, 13, 13)); }), ErrorCode::SizeCap);
  EXPECT_EQ(code_of([&] { permanent_ryser(Matrix(f, 31, 31)); }), ErrorCode::SizeCap);
  EXPECT_EQ(code_of([&] { permanent_ryser(Matrix(f, 2, 3)); }), ErrorCode::NotSquare);
  EXPECT_EQ(code_of([&] { permanent_expansion(Matrix(f, 3, 2)); }), ErrorCode::NotSquare);
}

TEST(Permanent, KernelsAgreeOnRandomMatrices) {
  RandomStream rs(4);
  for (std::uint32_t q : {2u, 3u, 5u, 7u, 9u, 25u}) {
    const Field f = Field::make(q);
    for (std::size_t n : {5u, 6u, 7u, 9u, 12u}) {
      for (int t = 0; t < 20; ++t) {
        const Matrix a = oracle::random_matrix(f, n, n, rs);
        ASSERT_EQ(permanent_ryser(a), permanent_expansion(a)) << "q=" << q << " n=" << n;
      }
    }
  }
}

TEST(Permanent, EqualsDeterminantInCharacteristicTwo) {
  RandomStream rs(5);
  for (std::uint32_t q : {2u, 4u, 8u}) {
    const Field f = Field::make(q);
    for (int t = 0; t < 100; ++t) {
      const Matrix a = oracle::random_matrix(f, 1 + t % 9, 1 + t % 9, rs);
      ASSERT_EQ(permanent_ryser(a), determinant(a));
    }
  }
}

TEST(Permanent, InvarianceAndScaling) {
  const Field f = Field::make(7);
  RandomStream rs(6);
  for (int t = 0; t < 50; ++t) {
    const Matrix a = oracle::random_matrix(f, 6, 6, rs);
    const Value per = permanent(a).value();
    std::vector<std::vector<Value>> rows;
    for (std::size_t i = 0; i < 6; ++i) rows.emplace_back(a.row(i).begin(), a.row(i).end());
    std::swap(rows[1], rows[4]);
    for (auto& r : rows) std::swap(r[0], r[5]);
    ASSERT_EQ(permanent(Matrix::from_rows(f, rows)).value(), per);
    const Value c = 1 + t % 6;
    for (auto& v : rows[2]) v = f.mul(v, c);
    ASSERT_EQ(permanent(Matrix::from_rows(f, rows)).value(), f.mul(per, c));
  }
}

TEST(Permanent, LastRowExpansionIdentity) {
  const Field f = Field::make(5);
  RandomStream rs(7);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + t % 6;
    const Matrix a = oracle::random_matrix(f, n, n, rs);
    Value sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const IndexSet removed{i};
      sum = f.add(sum, f.mul(per_sub(a, removed).value(), a(n - 1, i)));
    }
    ASSERT_EQ(sum, permanent(a).value());
  }
}

TEST(PerSub, Examples) {
  const Field f = Field::make(3);
  RandomStream rs(8);
  const Matrix a = oracle::random_matrix(f, 5, 5, rs);
  const IndexSet all{0, 1, 2, 3, 4}, none;
  EXPECT_EQ(per_sub(a, all).value(), 1u);
  EXPECT_EQ(per_sub(a, none), permanent(a));
  for (int t = 0; t < 100; ++t) {
    const Matrix b = oracle::random_matrix(f, 7, 7, rs);
    IndexSet removed;
    for (std::size_t j = 0; j < 7; ++j)
      if (rs.below(2)) removed.push_back(j);
    IndexSet rows;
    for (std::size_t i = 0; i + removed.size() < 7; ++i) rows.push_back(i);
    const IndexSet keep = complement(removed, 7);
    ASSERT_EQ(per_sub(b, removed), permanent_ryser(submatrix(b, rows, keep)));
  }
}

TEST(PrefixPermanents, MatchesPerSub) {
  const Field f = Field::make(5);
  RandomStream rs(9);
  for (int t = 0; t < 20; ++t) {
    const Matrix a = oracle::random_matrix(f, 8, 8, rs);
    const PrefixPermanents table(a, 6);
    for (ColumnMask removed = 0; removed < 256; ++removed) {
      if (std::popcount(removed) < 2) continue;
      ASSERT_EQ(table.per_removed(removed), per_sub(a, from_mask(removed)).value());
    }
  }
}
