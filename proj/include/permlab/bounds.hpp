#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "permlab/distribution.hpp"
#include "permlab/monte_carlo.hpp"

namespace permlab {

/// Claims about Pr[per(A) = z]:
///   trivial-lower-bound   uniform F_q, every n:  Pr[per = 0] >= 1/q
///   separation-all-p      uniform F_q, n -> oo:  limsup Pr[per = 0] < alpha_q
///   asymptotic-p          uniform F_q, n >= 3:   |Pr[per = 0] - 1/q| <= C/q^3
///   separation-general    mu over F_p, n -> oo:  limsup Pr[per = z] <= alpha_p - delta_p, every z
///   asymptotic-general    mu over F_p, n -> oo:  |Pr[per = z] - 1/p| <= C/p^3, every z
/// with C = 11 and delta_p = (1 - 2 alpha_p) p^-2 / 10.
enum class Claim { TrivialLowerBound, SeparationAllP, AsymptoticP, SeparationGeneral, AsymptoticGeneral };

enum class Verdict { Supported, Violated, Inconclusive };

inline constexpr double kBoundC = 11.0;

std::string to_string(Claim claim);
Claim parse_claim(const std::string& text);
std::string to_string(Verdict verdict);
Verdict parse_verdict(const std::string& text);
const std::vector<Claim>& all_claims();
/// Claims about a fixed finite n; the others are limits and are never
/// reported as violated.
bool is_finite_n_claim(Claim claim);
bool is_uniform_claim(Claim claim);

double delta_p(std::uint64_t p);

struct BoundVerdict {
  Claim claim = Claim::TrivialLowerBound;
  std::size_t n = 0;
  std::uint32_t q = 0;
  std::vector<double> weights;
  Value z = 0;
  /// Claimed range for Pr[per = z]; `strict_upper` marks "<" at the top.
  double lower = 0;
  double upper = 1;
  bool strict_upper = false;
  /// Interval for Pr[per = z]; lo = point = hi on the exact path.
  double point = 0;
  double lo = 0;
  double hi = 0;
  bool exact = false;
  std::uint64_t samples = 0;
  std::uint64_t successes = 0;
  Verdict verdict = Verdict::Inconclusive;
  /// Distance from the interval to the nearest violated side of the claim;
  /// positive when the interval lies inside.
  double margin = 0;
  double C = kBoundC;
  double delta = 0;  // delta_p for separation-general, 0 otherwise

  friend bool operator==(const BoundVerdict&, const BoundVerdict&) = default;
};

struct BoundsRequest {
  std::vector<Claim> claims;
  std::size_t n = 0;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  /// Skip the exact path even when enumeration is feasible.
  bool force_monte_carlo = false;
};

/// Exact enumeration when q^{n^2} <= 5e7, otherwise one Monte Carlo histogram
/// of per(A) shared by every claim. Throws CharacteristicTwo (p = 2), BadN
/// (asymptotic-p with n < 3), BadConfig (uniform-only claim with non-uniform
/// mu), NonPrimeField (general claim over q = p^k, k > 1) and
/// DegenerateDistribution.
std::vector<BoundVerdict> check_bounds(const EntryDistribution& dist, const BoundsRequest& request);

/// Verdict for an interval [lo, hi] against [lower, upper].
Verdict judge(double lo, double hi, double lower, double upper, bool strict_upper, bool finite_claim, double& margin);

}  // namespace permlab
