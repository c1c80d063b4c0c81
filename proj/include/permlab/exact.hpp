#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "permlab/distribution.hpp"

namespace permlab {

using Rational = boost::multiprecision::cpp_rational;

enum class Statistic { Permanent, Determinant };

std::string to_string(Statistic stat);
/// Accepts "per"/"permanent" and "det"/"determinant"; throws Usage.
Statistic parse_statistic(const std::string& text);

/// 1 - prod_{i>=1} (1 - q^-i), truncated once the tail sum_{i>m} q^-i drops
/// below tol.
double alpha(std::uint64_t q, double tol = 1e-12);

/// Pr[det A = 0] for uniform A in F_q^{n x n}: 1 - prod_{j=1}^n (1 - q^-j).
Rational exact_det_singular_prob(std::size_t n, std::uint64_t q);

/// prod_{i=from}^{to} (1 - q^-i); 1 for an empty range.
double det_survival_product(std::uint64_t q, std::size_t from, std::size_t to);

inline constexpr std::uint64_t kEnumerationCap = 50'000'000;

struct ExactCounts {
  std::size_t n = 0;
  std::uint32_t q = 0;
  Statistic stat = Statistic::Permanent;
  std::vector<std::uint64_t> counts;  // indexed by field value
  std::uint64_t total = 0;

  Rational probability(Value z) const { return Rational(counts[z], total); }
};

/// Exact value counts of per/det over all q^{n^2} matrices. The top n-1 rows
/// are enumerated once; the last row runs through an odometer that updates
/// the cofactor dot product incrementally. Throws SizeCap above 5e7 matrices.
/// Results do not depend on `workers`.
ExactCounts enumerate_exact(std::size_t n, std::uint64_t q, Statistic stat, unsigned workers = 1);

/// Same sweep weighted by prod mu(a_ij); returns Pr[stat = z] for each z.
/// Summation order is fixed by chunk, so results do not depend on `workers`.
std::vector<double> enumerate_weighted(std::size_t n, const EntryDistribution& dist, Statistic stat,
                                       unsigned workers = 1);

/// True when q^{n^2} is within the enumeration cap.
bool enumeration_feasible(std::size_t n, std::uint64_t q);

}  // namespace permlab
