#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "permlab/distribution.hpp"

namespace permlab {

/// Law of h . x for x with i.i.d. mu entries. Probabilities are carried as
/// deviations from 1/p so that epsilon stays accurate far below machine
/// epsilon relative to 1/p.
struct SumDistribution {
  std::uint32_t p = 0;
  std::vector<double> probabilities;
  std::vector<double> deviations;  // probabilities[z] - 1/p
  /// max_z |P(z) - 1/p|
  double epsilon = 0;
};

/// One convolution per nonzero coefficient; zero coefficients are skipped.
/// Requires a prime field (NonPrimeField otherwise).
SumDistribution exact_sum_distribution(const EntryDistribution& dist, std::span<const Value> h);

/// epsilon of c x_1 + ... + c x_k, for k = 1..max_k (index k-1).
std::vector<double> repeated_sum_epsilons(const EntryDistribution& dist, Value c, std::size_t max_k);

/// Number of equal nonzero coefficients guaranteed among Q nonzero entries by
/// pigeonhole over the p-1 nonzero values: max(1, floor(Q / (p-1))).
std::size_t equal_coefficient_run(std::size_t q_count, std::uint32_t p) noexcept;

/// True if for every nonzero c the run-length-k sum of c x_i is
/// epsilon-almost-uniform, k = equal_coefficient_run(Q, p).
bool almost_uniform_criterion(const EntryDistribution& dist, double epsilon, std::size_t q_count);

/// Smallest Q satisfying almost_uniform_criterion. Throws
/// DegenerateDistribution (rho = 1), BadConfig (epsilon <= 0), SizeCap if the
/// required run exceeds 10^6 terms.
std::size_t find_Q(const EntryDistribution& dist, double epsilon);

}  // namespace permlab
