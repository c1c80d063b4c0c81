#include "permlab/growth.hpp"

#include <bit>
#include <cmath>

#include "permlab/permanent.hpp"

namespace permlab {

namespace {

constexpr double kFloorGuard = 1e-9;

// Which index the process removes from `current`, given a predicate telling
// whether per(A; current \ {i}) != 0. Returns nullopt on termination.
template <typename NonZero>
std::optional<std::size_t> choose(ColumnMask current, ColumnMask j_mask, int phase, NonZero&& nonzero) {
  for (ColumnMask rest = current & ~j_mask; rest; rest &= rest - 1) {
    const auto i = static_cast<std::size_t>(std::countr_zero(rest));
    if (nonzero(i)) return i;
  }
  if (phase == 2) {
    for (ColumnMask rest = current & j_mask; rest; rest &= rest - 1) {
      const auto i = static_cast<std::size_t>(std::countr_zero(rest));
      if (nonzero(i)) return i;
    }
  }
  return std::nullopt;
}

void validate(std::size_t n, const IndexSet& J, std::size_t T, double delta) {
  if (!(delta > 0 && delta < 1)) throw Error(ErrorCode::BadConfig, "delta must lie in (0, 1)");
  if (T == 0) throw Error(ErrorCode::BadConfig, "T must be >= 1");
  if (J.size() != 2 * T) throw Error(ErrorCode::BadConfig, "|J| must equal 2T");
  const std::size_t t_prime = growth_t_prime(T, delta);
  if (n < t_prime) {
    throw Error(ErrorCode::BadConfig, "n = " + std::to_string(n) + " is below T' = " + std::to_string(t_prime));
  }
  if (n > kGrowthMaxN) throw Error(ErrorCode::SizeCap, "growth process limited to n <= 22");
  for (std::size_t i = 0; i < J.size(); ++i) {
    if (J[i] >= n || (i > 0 && J[i] <= J[i - 1])) throw Error(ErrorCode::BadConfig, "J must be a strictly increasing subset of columns");
  }
}

}  // namespace

std::string to_string(GrowthOutcome outcome) {
  switch (outcome) {
    case GrowthOutcome::SuccessInJ: return "SUCCESS_IN_J";
    case GrowthOutcome::SuccessNotInJ: return "SUCCESS_NOT_IN_J";
    case GrowthOutcome::Terminated: return "TERMINATED";
  }
  return "TERMINATED";
}

GrowthOutcome parse_growth_outcome(const std::string& text) {
  if (text == "SUCCESS_IN_J") return GrowthOutcome::SuccessInJ;
  if (text == "SUCCESS_NOT_IN_J") return GrowthOutcome::SuccessNotInJ;
  if (text == "TERMINATED") return GrowthOutcome::Terminated;
  throw Error(ErrorCode::BadConfig, "unknown growth outcome '" + text + "'");
}

std::size_t growth_t_prime(std::size_t T, double delta) {
  return 2 * T + static_cast<std::size_t>(std::floor(delta * static_cast<double>(T) + kFloorGuard));
}

GrowthTrace run_growth_process(const EntryDistribution& dist, std::size_t n, const IndexSet& J, std::size_t T,
                               double delta, RandomStream stream) {
  validate(n, J, T, delta);
  GrowthTrace trace;
  trace.n = n;
  trace.T = T;
  trace.delta = delta;
  trace.t_prime = growth_t_prime(T, delta);
  trace.J = J;
  trace.q = dist.field().q();
  trace.weights = dist.weights();
  trace.seed = stream.seed();
  trace.path = stream.path();
  trace.counter = stream.counter();

  const Matrix a = sample_matrix(n, dist, stream);
  const PrefixPermanents table(a, n - T);
  const ColumnMask j_mask = to_mask(J);
  ColumnMask current = table.full_mask();

  for (std::size_t t = 1; t <= n - T; ++t) {
    const int phase = t <= n - trace.t_prime ? 1 : 2;
    auto nonzero = [&](std::size_t i) { return table.per_removed(current & ~(ColumnMask{1} << i)) != 0; };
    GrowthStep step{t, phase, choose(current, j_mask, phase, nonzero), false};
    if (!step.removed) {
      trace.steps.push_back(step);
      trace.terminated_at = t;
      trace.outcome = GrowthOutcome::Terminated;
      return trace;
    }
    const bool outside_left = (current & ~j_mask) != 0;
    step.bad = phase == 2 && outside_left && ((j_mask >> *step.removed) & 1u);
    trace.bad_steps += step.bad ? 1 : 0;
    current &= ~(ColumnMask{1} << *step.removed);
    trace.steps.push_back(step);
  }
  trace.final_set = from_mask(current);
  trace.outcome = (current & ~j_mask) == 0 ? GrowthOutcome::SuccessInJ : GrowthOutcome::SuccessNotInJ;
  return trace;
}

GrowthParams pick_growth_params(const EntryDistribution& dist, double epsilon) {
  if (!(epsilon > 0 && epsilon < 1)) throw Error(ErrorCode::BadConfig, "epsilon must lie in (0, 1)");
  const double rho = dist.rho();
  if (dist.degenerate() || rho >= 1.0) throw Error(ErrorCode::DegenerateDistribution, "rho = 1");

  GrowthParams out;
  for (int k = 1; k < 20; ++k) {
    const double delta = k / 20.0;
    if (1.0 - rho * (1.0 + delta) > delta) {
      out.delta = delta;
      break;
    }
  }
  if (out.delta == 0) {
    throw Error(ErrorCode::DegenerateDistribution,
                "no grid delta satisfies 1 - rho(1+delta) > delta for rho = " + std::to_string(rho));
  }
  const double delta = out.delta;
  auto t_ok = [&](std::size_t T) {
    const double td = static_cast<double>(T);
    return td > 2.0 * (1.0 + delta) / (epsilon * delta * delta) * (1.0 + 1e-12) &&
           std::pow(rho, delta * td) / (1.0 - rho) < epsilon / 4.0;
  };
  // Both conditions are monotone in T; start from the closed-form estimate
  // and step to the exact boundary.
  const double chebyshev = 2.0 * (1.0 + delta) / (epsilon * delta * delta);
  const double tail = std::log(epsilon * (1.0 - rho) / 4.0) / (delta * std::log(rho));
  std::size_t T = static_cast<std::size_t>(std::max({1.0, std::floor(chebyshev), std::floor(tail)}));
  while (T > 1 && t_ok(T - 1)) --T;
  while (!t_ok(T)) ++T;
  out.T = T;
  return out;
}

double growth_success_lower_bound(double rho, std::size_t n, std::size_t T, double delta) {
  const std::size_t t_prime = growth_t_prime(T, delta);
  if (n < t_prime) return 0.0;
  double fail = 0;
  for (std::size_t t = 0; t + t_prime < n; ++t) fail += std::pow(rho, static_cast<double>(n - t - 2 * T));
  for (std::size_t t = n - t_prime; t < n - T; ++t) fail += std::pow(rho, static_cast<double>(n - t));

  // Pr[Binomial(m, rho) >= T], m = T' - T.
  const std::size_t m = t_prime - T;
  double tail = 0;
  for (std::size_t k = T; k <= m; ++k) {
    const double log_pmf = std::lgamma(m + 1.0) - std::lgamma(k + 1.0) - std::lgamma(m - k + 1.0) +
                           k * std::log(rho) + (m - k) * std::log1p(-rho);
    tail += std::exp(log_pmf);
  }
  return std::max(0.0, 1.0 - fail - tail);
}

void verify_growth_trace(const GrowthTrace& trace) {
  auto mismatch = [](const std::string& what) { throw Error(ErrorCode::ReplayMismatch, what); };

  const Field field = Field::make(trace.q);
  const EntryDistribution dist = make_distribution(field, trace.weights);
  validate(trace.n, trace.J, trace.T, trace.delta);
  if (trace.t_prime != growth_t_prime(trace.T, trace.delta)) mismatch("recorded T' disagrees with 2T + floor(delta T)");

  RandomStream stream(trace.seed, trace.path, trace.counter);
  const Matrix a = sample_matrix(trace.n, dist, stream);
  const std::size_t n = trace.n;
  const ColumnMask j_mask = to_mask(trace.J);
  ColumnMask current = static_cast<ColumnMask>((std::uint64_t{1} << n) - 1);

  std::size_t bad = 0;
  for (const GrowthStep& step : trace.steps) {
    const std::size_t t = step.t;
    const int phase = t <= n - trace.t_prime ? 1 : 2;
    if (static_cast<std::size_t>(std::popcount(current)) != n - t + 1) mismatch("|I_{t-1}| != n - t + 1 at step " + std::to_string(t));
    if (step.phase != phase) mismatch("phase mismatch at step " + std::to_string(t));
    auto nonzero = [&](std::size_t i) {
      return !per_sub(a, from_mask(current & ~(ColumnMask{1} << i))).is_zero();
    };
    const auto expected = choose(current, j_mask, phase, nonzero);
    if (expected != step.removed) mismatch("removed index differs at step " + std::to_string(t));
    if (!expected) {
      if (trace.terminated_at != t || &step != &trace.steps.back()) mismatch("termination recorded inconsistently");
      if (trace.outcome != GrowthOutcome::Terminated) mismatch("terminated trace has a success outcome");
      return;
    }
    const bool should_be_bad = phase == 2 && (current & ~j_mask) != 0 && ((j_mask >> *expected) & 1u);
    if (should_be_bad != step.bad) mismatch("bad flag differs at step " + std::to_string(t));
    bad += should_be_bad ? 1 : 0;
    current &= ~(ColumnMask{1} << *expected);
    if (per_sub(a, from_mask(current)).is_zero()) mismatch("per(A; I_t) = 0 at step " + std::to_string(t));
  }
  if (trace.steps.size() != n - trace.T) mismatch("trace stops before step n - T without terminating");
  if (bad != trace.bad_steps) mismatch("bad step count differs");
  if (from_mask(current) != trace.final_set) mismatch("final set differs");
  const GrowthOutcome outcome = (current & ~j_mask) == 0 ? GrowthOutcome::SuccessInJ : GrowthOutcome::SuccessNotInJ;
  if (outcome != trace.outcome) mismatch("outcome differs");
}

}  // namespace permlab
