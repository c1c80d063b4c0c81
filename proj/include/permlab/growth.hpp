#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "permlab/distribution.hpp"
#include "permlab/matrix.hpp"
#include "permlab/random_stream.hpp"

namespace permlab {

/// Largest n accepted by the growth process; every step is answered from a
/// full subset table of the top n - T rows.
inline constexpr std::size_t kGrowthMaxN = 22;

enum class GrowthOutcome { SuccessInJ, SuccessNotInJ, Terminated };

std::string to_string(GrowthOutcome outcome);
GrowthOutcome parse_growth_outcome(const std::string& text);

struct GrowthStep {
  std::size_t t = 0;       // 1-based step number
  int phase = 1;           // 1: only outside J may go; 2: outside J preferred
  std::optional<std::size_t> removed;  // 0-based column; empty on termination
  bool bad = false;

  friend bool operator==(const GrowthStep&, const GrowthStep&) = default;
};

struct GrowthParams {
  std::size_t T = 0;
  double delta = 0;
};

/// T' = 2T + floor(delta T). The product is floored with a 1e-9 guard so grid
/// values such as 0.15 * 20 land on the intended integer.
std::size_t growth_t_prime(std::size_t T, double delta);

struct GrowthTrace {
  std::size_t n = 0;
  std::size_t T = 0;
  double delta = 0;
  std::size_t t_prime = 0;
  IndexSet J;
  std::uint32_t q = 0;
  std::vector<double> weights;
  // Stream state the matrix was drawn from.
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> path;
  std::uint64_t counter = 0;

  std::vector<GrowthStep> steps;
  GrowthOutcome outcome = GrowthOutcome::Terminated;
  std::optional<std::size_t> terminated_at;
  IndexSet final_set;  // I_{n-T} when defined
  std::size_t bad_steps = 0;

  friend bool operator==(const GrowthTrace&, const GrowthTrace&) = default;
};

/// Draws a fresh n x n matrix from `stream` and runs the nested-set process
/// I_0 = {0..n-1} ⊇ I_1 ⊇ ... ⊇ I_{n-T}, keeping per(A; I_t) != 0 and always
/// removing the smallest eligible index. Throws BadConfig on violated
/// preconditions (|J| = 2T, n >= T', 0 < delta < 1, T >= 1) and SizeCap for
/// n > 22.
GrowthTrace run_growth_process(const EntryDistribution& dist, std::size_t n, const IndexSet& J, std::size_t T,
                               double delta, RandomStream stream);

/// Smallest grid delta in {0.05, 0.10, ..., 0.95} with 1 - rho(1 + delta) >
/// delta, then the smallest T with T > 2(1 + delta)/(epsilon delta^2) and
/// rho^(delta T)/(1 - rho) < epsilon/4. The first bound carries a 1e-12
/// relative guard so a grid value that is an integer in exact arithmetic
/// (4200 for rho = 1/3, epsilon = 0.2) is not itself accepted. Throws DegenerateDistribution when
/// rho = 1 or no grid delta qualifies (rho >= 0.9048), BadConfig unless
/// 0 < epsilon < 1.
GrowthParams pick_growth_params(const EntryDistribution& dist, double epsilon);

/// Lower bound on Pr[outcome = SuccessInJ] obtained from the termination
/// union bound plus Pr[Binomial(T' - T, rho) >= T].
double growth_success_lower_bound(double rho, std::size_t n, std::size_t T, double delta);

/// Regenerates the matrix from the recorded stream state and re-derives every
/// step with the Gray-code permanent kernel. Throws ReplayMismatch naming the
/// first step that disagrees.
void verify_growth_trace(const GrowthTrace& trace);

}  // namespace permlab
