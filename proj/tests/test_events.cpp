#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "permlab/events.hpp"
#include "permlab/graph.hpp"
#include "permlab/permanent.hpp"

using namespace permlab;

namespace {

// Brute-force E(s, ell): exhaustive search over families of disjoint s-sets.
bool brute_E(const Matrix& a, std::size_t s, std::size_t ell) {
  const std::size_t n = a.rows();
  if (s == 0) return oracle::per(a) != 0;
  std::vector<ColumnMask> good;
  for (ColumnMask m = 0; m < (ColumnMask{1} << n); ++m) {
    if (static_cast<std::size_t>(std::popcount(m)) == s && per_sub(a, from_mask(m)).value() != 0) good.push_back(m);
  }
  std::function<bool(std::size_t, ColumnMask, std::size_t)> pack = [&](std::size_t from, ColumnMask used,
                                                                        std::size_t left) {
    if (left == 0) return true;
    for (std::size_t i = from; i < good.size(); ++i) {
      if ((good[i] & used) == 0 && pack(i + 1, used | good[i], left - 1)) return true;
    }
    return false;
  };
  return pack(0, 0, ell);
}

void check_report(const Matrix& a, const EventReport& r) {
  if (!r.holds) return;
  ASSERT_GE(r.witnesses.size(), r.ell);
  std::set<std::size_t> seen;
  for (const auto& w : r.witnesses) {
    ASSERT_EQ(w.size(), r.s);
    ASSERT_NE(per_sub(a, w).value(), 0u);
    for (auto c : w) ASSERT_TRUE(seen.insert(c).second) << "witnesses overlap";
  }
}

}  // namespace

TEST(DetectE, Examples) {
  const Field f = Field::make(3);
  RandomStream rs(1);
  const Matrix a = oracle::random_matrix(f, 5, 5, rs);
  const EventReport full = detect_E(a, 5);
  EXPECT_TRUE(full.holds);
  EXPECT_EQ(full.witnesses.front(), (IndexSet{0, 1, 2, 3, 4}));
  for (int t = 0; t < 50; ++t) {
    const Matrix b = oracle::random_matrix(f, 4, 4, rs);
    EXPECT_EQ(detect_E(b, 0).holds, permanent(b).value() != 0);
  }
  EXPECT_FALSE(detect_E(Matrix(f, 4, 4), 1).holds);
  EXPECT_THROW(detect_E(a, 6), Error);
  EXPECT_THROW(detect_E(a, 1, 0), Error);
}

TEST(DetectE, MatchesBruteForce) {
  RandomStream rs(2);
  for (std::uint32_t q : {2u, 3u, 5u}) {
    const Field f = Field::make(q);
    for (int t = 0; t < 150; ++t) {
      const std::size_t n = 3 + t % 5;
      const Matrix a = oracle::random_matrix(f, n, n, rs);
      for (std::size_t s = 0; s <= n; ++s) {
        for (std::size_t ell = 1; s * ell <= n && ell <= 3; ++ell) {
          const EventReport r = detect_E(a, s, ell);
          ASSERT_TRUE(r.exhaustive);
          ASSERT_EQ(r.holds, brute_E(a, s, ell)) << "q=" << q << " n=" << n << " s=" << s << " ell=" << ell;
          check_report(a, r);
        }
      }
    }
  }
}

TEST(DetectE, GreedyIsOneSided) {
  RandomStream rs(3);
  const Field f = Field::make(3);
  DetectOptions greedy;
  greedy.exact_packing_cap = 0;
  for (int t = 0; t < 100; ++t) {
    const Matrix a = oracle::random_matrix(f, 7, 7, rs);
    for (std::size_t ell = 1; ell <= 3; ++ell) {
      const EventReport g = detect_E(a, 2, ell, greedy);
      check_report(a, g);
      if (g.holds) ASSERT_TRUE(brute_E(a, 2, ell));
      const EventReport exact = detect_E(a, 2, ell);
      if (exact.holds && ell == 1) ASSERT_TRUE(g.holds);
    }
  }
}

TEST(DetectE, GreedyDisabledRaisesSizeCap) {
  const Field f = Field::make(3);
  DetectOptions opts;
  opts.allow_greedy = false;
  opts.exact_search_cap = 10;
  try {
    detect_E(Matrix::identity(f, 8), 3, 1, opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SizeCap);
  }
}

TEST(BuildH, TwoByTwo) {
  const Field f = Field::make(5);
  EXPECT_EQ(build_H(Matrix::from_rows(f, {{3, 4}, {1, 2}})), Matrix::from_rows(f, {{0, 1}, {1, 0}}));
}

TEST(BuildH, SymmetricHollowAndHxIdentity) {
  const Field f = Field::make(5);
  RandomStream rs(4);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 6;
    const Matrix a = oracle::random_matrix(f, n, n, rs);
    const Matrix h = build_H(a);
    const auto x = a.row(n - 2);
    const auto hx = multiply(h, x);
    for (std::size_t i = 0; i < n; ++i) {
      ASSERT_EQ(h(i, i), 0u);
      for (std::size_t j = 0; j < n; ++j) ASSERT_EQ(h(i, j), h(j, i));
      const IndexSet removed{i};
      ASSERT_EQ(hx[i], per_sub(a, removed).value());
    }
    // E(1) holds exactly when H x is nonzero.
    const bool nonzero = std::any_of(hx.begin(), hx.end(), [](Value v) { return v != 0; });
    ASSERT_EQ(detect_E(a, 1).holds, nonzero);
  }
}

TEST(Hollow3, Certificate) {
  const Matrix b3 = Matrix::from_rows(Field::make(3), {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  const auto c3 = hollow3_certificate(b3);
  EXPECT_TRUE(c3.rank3);
  EXPECT_EQ(c3.det.value(), 2u);
  const Matrix b2 = Matrix::from_rows(Field::make(2), {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  const auto c2 = hollow3_certificate(b2);
  EXPECT_FALSE(c2.rank3);
  EXPECT_EQ(c2.det.value(), 0u);
  EXPECT_THROW(hollow3_certificate(Matrix::from_rows(Field::make(3), {{1, 1, 1}, {1, 0, 1}, {1, 1, 0}})), Error);
  EXPECT_THROW(hollow3_certificate(Matrix::from_rows(Field::make(3), {{0, 1, 2}, {1, 0, 1}, {1, 1, 0}})), Error);

  const Field f7 = Field::make(7);
  RandomStream rs(5);
  for (int t = 0; t < 100; ++t) {
    const Value a = rs.below(7), b = rs.below(7), c = rs.below(7);
    const Matrix m = Matrix::from_rows(f7, {{0, a, b}, {a, 0, c}, {b, c, 0}});
    const auto cert = hollow3_certificate(m);
    ASSERT_EQ(cert.det, determinant(m));
    ASSERT_EQ(cert.rank3, rank(m) == 3);
  }
}

TEST(Graph, FromH) {
  const Field f = Field::make(5);
  const Matrix h = Matrix::from_rows(f, {{0, 1, 0}, {1, 0, 3}, {0, 3, 0}});
  const PermGraph g = PermGraph::from_H(h);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_TRUE(g.has_edge(0, 1));
  EXPECT_FALSE(g.has_edge(0, 2));
  EXPECT_TRUE(g.h().has_value());
  EXPECT_THROW(PermGraph::from_H(Matrix::from_rows(f, {{1, 0}, {0, 0}})), Error);
  PermGraph e(3);
  EXPECT_THROW(e.add_edge(1, 1), Error);
}

TEST(Triangles, Examples) {
  EXPECT_TRUE(find_triangle(complete_graph(4)).has_value());
  const PermGraph k33 = complete_bipartite(3, 3);
  EXPECT_EQ(k33.edge_count(), 9u);
  EXPECT_FALSE(find_triangle(k33).has_value());
  const auto packed = pack_disjoint_triangles(complete_graph(9), 3);
  EXPECT_EQ(packed.size(), 3u);
  EXPECT_TRUE(pack_disjoint_triangles(complete_bipartite(5, 4), 3).empty());
}

TEST(Triangles, AboveMantelThresholdAlwaysFound) {
  RandomStream rs(6);
  for (std::size_t n : {5u, 8u, 13u, 21u}) {
    for (int t = 0; t < 200; ++t) {
      const PermGraph g = random_graph(n, n * n / 4 + 1, rs);
      const auto tri = find_triangle(g);
      ASSERT_TRUE(tri.has_value());
      const auto [a, b, c] = *tri;
      ASSERT_TRUE(a < b && b < c);
      ASSERT_TRUE(g.has_edge(a, b) && g.has_edge(a, c) && g.has_edge(b, c));
    }
  }
}

TEST(Triangles, AgreesWithBruteForceOnSparseGraphs) {
  RandomStream rs(7);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 4 + t % 12;
    const PermGraph g = random_graph(n, rs.below(static_cast<std::uint32_t>(n * n / 4 + 1)), rs);
    ASSERT_EQ(find_triangle(g).has_value(), oracle::has_triangle(g));
  }
}

TEST(Triangles, PackingIsDisjoint) {
  RandomStream rs(8);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 12 + t % 20;
    const PermGraph g = random_graph(n, n * (n - 1) / 3, rs);
    std::set<std::size_t> used;
    for (const auto& tri : pack_disjoint_triangles(g, n)) {
      for (auto v : tri) ASSERT_TRUE(used.insert(v).second);
      ASSERT_TRUE(g.has_edge(tri[0], tri[1]) && g.has_edge(tri[0], tri[2]) && g.has_edge(tri[1], tri[2]));
    }
  }
}

TEST(Triangles, RankBridge) {
  // A triangle in G gives a hollow 3x3 principal block of H with rank 3.
  RandomStream rs(9);
  const Field f = Field::make(5);
  int found = 0;
  for (int t = 0; t < 200; ++t) {
    const Matrix a = oracle::random_matrix(f, 7, 7, rs);
    const Matrix h = build_H(a);
    const auto tri = find_triangle(PermGraph::from_H(h));
    if (!tri) continue;
    ++found;
    const IndexSet idx{(*tri)[0], (*tri)[1], (*tri)[2]};
    ASSERT_EQ(rank(submatrix(h, idx, idx)), 3u);
  }
  EXPECT_GT(found, 100);
}

TEST(BuildMj, StructureAndIdentity) {
  RandomStream rs(10);
  const Field f = Field::make(5);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 7, s = 1 + t % 3;
    const Matrix a = oracle::random_matrix(f, n, n, rs);
    IndexSet I;
    for (std::size_t j = 0; j < n && I.size() < s; ++j)
      if (rs.below(2) || n - j == s - I.size()) I.push_back(j);
    const Matrix m = build_Mj(a, I);
    ASSERT_EQ(m.rows(), s);
    ASSERT_EQ(m.cols(), n);
    const Value d = per_sub(a, I).value();
    const Matrix block = submatrix(m, IndexSet([&] {
                                     IndexSet r(s);
                                     std::iota(r.begin(), r.end(), 0);
                                     return r;
                                   }()),
                                   I);
    for (std::size_t r = 0; r < s; ++r)
      for (std::size_t c = 0; c < s; ++c) ASSERT_EQ(block(r, c), r == c ? d : 0u);
    if (d != 0) ASSERT_EQ(rank(block), s);
    const auto mx = multiply(m, a.row(n - s));
    for (std::size_t r = 0; r < s; ++r) {
      IndexSet smaller;
      for (auto c : I)
        if (c != I[r]) smaller.push_back(c);
      ASSERT_EQ(mx[r], per_sub(a, smaller).value());
    }
  }
}

TEST(BuildMj, SpecialisesToH) {
  RandomStream rs(11);
  const Field f = Field::make(7);
  for (int t = 0; t < 50; ++t) {
    const Matrix a = oracle::random_matrix(f, 6, 6, rs);
    const Matrix h = build_H(a);
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t j = i + 1; j < 6; ++j) {
        const IndexSet I{i, j};
        const Matrix m = build_Mj(a, I);
        for (std::size_t c = 0; c < 6; ++c) {
          if (c == i || c == j) continue;
          // Row for i removes {j, c} from A^{up 2}: h_{j c}.
          ASSERT_EQ(m(0, c), h(j, c));
          ASSERT_EQ(m(1, c), h(i, c));
        }
        ASSERT_EQ(m(0, i), h(i, j));
      }
    }
  }
}
