#include "permlab/monte_carlo.hpp"

#include <algorithm>
#include <cmath>

#include "parallel.hpp"
#include "permlab/events.hpp"
#include "permlab/permanent.hpp"

namespace permlab {

namespace {

constexpr std::size_t kSampleChunks = 64;

void require_samples(const SamplingPlan& plan) {
  if (plan.samples == 0) throw Error(ErrorCode::BadConfig, "sample count N must be >= 1");
}

// Runs visit(chunk, matrix) over all N draws; chunk results are merged by the
// caller in chunk order.
template <typename Visit>
void sweep_samples(const EntryDistribution& dist, const SamplingPlan& plan, Visit&& visit) {
  const std::size_t chunks = static_cast<std::size_t>(std::min<std::uint64_t>(kSampleChunks, plan.samples));
  const RandomStream root(plan.seed);
  detail::for_each_chunk(chunks, plan.workers, [&](std::size_t chunk) {
    const auto [begin, end] = detail::chunk_range(plan.samples, chunks, chunk);
    for (std::uint64_t i = begin; i < end; ++i) {
      RandomStream stream = root.split(i);
      visit(chunk, sample_matrix(plan.n, dist, stream));
    }
  });
}

}  // namespace

Interval wilson_interval(std::uint64_t successes, std::uint64_t samples, double z) {
  if (samples == 0) return {0.0, 1.0};
  const double n = static_cast<double>(samples);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  return {std::clamp(std::min(centre - half, p), 0.0, 1.0), std::clamp(std::max(centre + half, p), 0.0, 1.0)};
}

double Estimate::sigma_at(double p) const {
  if (samples == 0) return 1.0;
  return std::sqrt(p * (1 - p) / static_cast<double>(samples));
}

Estimate make_estimate(std::uint64_t successes, std::uint64_t samples, std::uint64_t seed, unsigned workers,
                       std::uint64_t attempted) {
  Estimate e;
  e.successes = successes;
  e.samples = samples;
  e.point = samples == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(samples);
  const Interval ci = wilson_interval(successes, samples);
  e.lo = ci.lo;
  e.hi = ci.hi;
  e.seed = seed;
  e.workers = workers;
  e.attempted = attempted;
  return e;
}

MatrixEvent per_equals(Value z) {
  return {"per=" + std::to_string(z), [z](const Matrix& a) { return permanent(a).value() == z; }};
}

MatrixEvent det_equals(Value z) {
  return {"det=" + std::to_string(z), [z](const Matrix& a) { return determinant(a).value() == z; }};
}

MatrixEvent occurs_E(std::size_t s, std::size_t ell) {
  return {"E(" + std::to_string(s) + "," + std::to_string(ell) + ")",
          [s, ell](const Matrix& a) { return detect_E(a, s, ell).holds; }};
}

MatrixEvent rank_H_at_least(std::size_t r) {
  return {"rank(H)>=" + std::to_string(r), [r](const Matrix& a) { return rank(build_H(a)) >= r; }};
}

MatrixEvent always() {
  return {"true", [](const Matrix&) { return true; }};
}

MatrixEvent both(MatrixEvent a, MatrixEvent b) {
  std::string name = "(" + a.name + " and " + b.name + ")";
  return {std::move(name), [a = std::move(a), b = std::move(b)](const Matrix& m) { return a(m) && b(m); }};
}

MatrixEvent either(MatrixEvent a, MatrixEvent b) {
  std::string name = "(" + a.name + " or " + b.name + ")";
  return {std::move(name), [a = std::move(a), b = std::move(b)](const Matrix& m) { return a(m) || b(m); }};
}

MatrixEvent negation(MatrixEvent a) {
  std::string name = "not " + a.name;
  return {std::move(name), [a = std::move(a)](const Matrix& m) { return !a(m); }};
}

Estimate mc_probability(const MatrixEvent& event, const EntryDistribution& dist, const SamplingPlan& plan) {
  require_samples(plan);
  std::vector<std::uint64_t> hits(kSampleChunks, 0);
  sweep_samples(dist, plan, [&](std::size_t chunk, const Matrix& a) {
    if (event(a)) ++hits[chunk];
  });
  std::uint64_t successes = 0;
  for (auto h : hits) successes += h;
  return make_estimate(successes, plan.samples, plan.seed, plan.workers, plan.samples);
}

Estimate conditional_probability(const MatrixEvent& cond, const MatrixEvent& target, const EntryDistribution& dist,
                                 const SamplingPlan& plan) {
  require_samples(plan);
  std::vector<std::uint64_t> accepted(kSampleChunks, 0), hits(kSampleChunks, 0);
  sweep_samples(dist, plan, [&](std::size_t chunk, const Matrix& a) {
    if (!cond(a)) return;
    ++accepted[chunk];
    if (target(a)) ++hits[chunk];
  });
  std::uint64_t acc = 0, successes = 0;
  for (std::size_t c = 0; c < kSampleChunks; ++c) {
    acc += accepted[c];
    successes += hits[c];
  }
  if (acc < kMinAccepted) {
    throw Error(ErrorCode::ConditioningTooRare, "only " + std::to_string(acc) + " of " +
                                                    std::to_string(plan.samples) + " draws satisfied " + cond.name);
  }
  return make_estimate(successes, acc, plan.seed, plan.workers, plan.samples);
}

std::vector<std::uint64_t> mc_value_counts(Statistic stat, const EntryDistribution& dist, const SamplingPlan& plan) {
  require_samples(plan);
  const std::uint32_t q = dist.field().q();
  std::vector<std::vector<std::uint64_t>> partial(kSampleChunks, std::vector<std::uint64_t>(q, 0));
  sweep_samples(dist, plan, [&](std::size_t chunk, const Matrix& a) {
    const Value v = stat == Statistic::Permanent ? permanent(a).value() : determinant(a).value();
    ++partial[chunk][v];
  });
  std::vector<std::uint64_t> counts(q, 0);
  for (const auto& part : partial) {
    for (std::uint32_t z = 0; z < q; ++z) counts[z] += part[z];
  }
  return counts;
}

}  // namespace permlab
