#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "permlab/matrix.hpp"

namespace permlab {

/// Outcome of testing whether the top n-s rows of A carry `ell` pairwise
/// disjoint size-s column sets I with per(A; I) != 0.
struct EventReport {
  std::size_t s = 0;
  std::size_t ell = 1;
  bool holds = false;
  std::vector<IndexSet> witnesses;
  /// False when a greedy search ran; a greedy "holds" is still a certificate.
  bool exhaustive = true;
};

struct DetectOptions {
  bool allow_greedy = true;
  std::size_t greedy_restarts = 16;
  /// Candidate enumeration bound for the exact search.
  std::uint64_t exact_search_cap = 1'000'000;
  /// Candidate bound for exact disjoint packing when ell > 1.
  std::uint64_t exact_packing_cap = 100'000;
  /// Backtracking node budget before the packing search gives up and
  /// reports the greedy answer.
  std::uint64_t packing_node_budget = 10'000'000;
};

/// Throws NotSquare, OutOfRange (s > n), BadConfig (ell = 0), SizeCap.
EventReport detect_E(const Matrix& a, std::size_t s, std::size_t ell = 1, const DetectOptions& options = {});

/// h_ij = per(A; {i, j}) for i != j, h_ii = 0. Needs 2 <= n <= 16.
Matrix build_H(const Matrix& a);

struct HollowCertificate {
  bool rank3;
  FieldElem det;
};

/// For a symmetric zero-diagonal 3x3 B, det(B) = 2 b12 b13 b23.
/// Throws NotHollowSymmetric.
HollowCertificate hollow3_certificate(const Matrix& b);

/// s x n matrix with rows indexed by I (in increasing order):
///   (i, h) -> per(A; I - i + h) for h not in I, per(A; I) for h = i, 0 otherwise.
/// Then (M x)_i = per(A; I \ {i}) with x the (n-s+1)-th row of A.
Matrix build_Mj(const Matrix& a, std::span<const std::size_t> cols);

}  // namespace permlab
