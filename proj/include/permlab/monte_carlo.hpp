#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "permlab/distribution.hpp"
#include "permlab/exact.hpp"
#include "permlab/matrix.hpp"

namespace permlab {

/// Two-sided 99% normal quantile.
inline constexpr double kWilsonZ99 = 2.5758293035489004;

struct Interval {
  double lo = 0;
  double hi = 1;
};

/// Wilson score interval for `successes` out of `samples`; [0, 1] when
/// samples = 0.
Interval wilson_interval(std::uint64_t successes, std::uint64_t samples, double z = kWilsonZ99);

struct Estimate {
  double point = 0;
  std::uint64_t samples = 0;    // accepted samples (N for unconditional runs)
  std::uint64_t successes = 0;
  double lo = 0;
  double hi = 1;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::uint64_t attempted = 0;  // draws, including rejected ones

  /// sqrt(p (1 - p) / samples) at the given reference value p.
  double sigma_at(double p) const;
  friend bool operator==(const Estimate&, const Estimate&) = default;
};

Estimate make_estimate(std::uint64_t successes, std::uint64_t samples, std::uint64_t seed, unsigned workers,
                       std::uint64_t attempted);

/// A predicate on square matrices.
struct MatrixEvent {
  std::string name;
  std::function<bool(const Matrix&)> test;

  bool operator()(const Matrix& a) const { return test(a); }
};

MatrixEvent per_equals(Value z);
MatrixEvent det_equals(Value z);
/// E(s, ell) via detect_E.
MatrixEvent occurs_E(std::size_t s, std::size_t ell = 1);
MatrixEvent rank_H_at_least(std::size_t r);
MatrixEvent always();
MatrixEvent both(MatrixEvent a, MatrixEvent b);
MatrixEvent either(MatrixEvent a, MatrixEvent b);
MatrixEvent negation(MatrixEvent a);

struct SamplingPlan {
  std::size_t n = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

/// Sample i draws its matrix from RandomStream(seed).split(i), so the result
/// depends on (seed, N) only. Throws BadConfig for N = 0.
Estimate mc_probability(const MatrixEvent& event, const EntryDistribution& dist, const SamplingPlan& plan);

/// Pr[target | cond] by rejection: every one of the N draws is tested against
/// `cond` and accepted draws against `target`. Throws ConditioningTooRare
/// when fewer than 100 draws are accepted.
Estimate conditional_probability(const MatrixEvent& cond, const MatrixEvent& target, const EntryDistribution& dist,
                                 const SamplingPlan& plan);

inline constexpr std::uint64_t kMinAccepted = 100;

/// Histogram of per(A) or det(A) over N draws, indexed by field value.
std::vector<std::uint64_t> mc_value_counts(Statistic stat, const EntryDistribution& dist, const SamplingPlan& plan);

}  // namespace permlab
