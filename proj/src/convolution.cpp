#include "permlab/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace permlab {

namespace {

constexpr std::size_t kMaxRun = 1'000'000;

void require_prime(const EntryDistribution& dist) {
  if (!dist.field().is_prime()) {
    throw Error(ErrorCode::NonPrimeField, "sum distributions are computed over prime fields only");
  }
}

// d'(z) = sum_x mu(x) d(z - c x)
std::vector<double> convolve(const std::vector<double>& dev, const EntryDistribution& dist, Value c) {
  const Field& f = dist.field();
  const std::uint32_t p = f.p();
  std::vector<double> out(p, 0.0);
  for (Value x = 0; x < p; ++x) {
    const double w = dist.weight(x);
    if (w == 0) continue;
    const Value shift = f.mul(c, x);
    for (Value z = 0; z < p; ++z) out[f.add(z, shift)] += w * dev[z];
  }
  // re-centre: sum(dev) = 0
  double mean = 0;
  for (double d : out) mean += d;
  mean /= p;
  for (double& d : out) d -= mean;
  return out;
}

double max_abs(const std::vector<double>& v) {
  double m = 0;
  for (double d : v) m = std::max(m, std::fabs(d));
  return m;
}

std::vector<double> point_mass_at_zero(std::uint32_t p) {
  std::vector<double> dev(p, -1.0 / p);
  dev[0] += 1.0;
  return dev;
}

}  // namespace

SumDistribution exact_sum_distribution(const EntryDistribution& dist, std::span<const Value> h) {
  require_prime(dist);
  const std::uint32_t p = dist.field().p();
  std::vector<double> dev = point_mass_at_zero(p);
  for (Value c : h) {
    if (!dist.field().contains(c)) throw Error(ErrorCode::OutOfRange, "coefficient not in field");
    if (c != 0) dev = convolve(dev, dist, c);
  }
  SumDistribution out;
  out.p = p;
  out.deviations = dev;
  out.probabilities.resize(p);
  for (std::uint32_t z = 0; z < p; ++z) out.probabilities[z] = 1.0 / p + dev[z];
  out.epsilon = max_abs(dev);
  return out;
}

std::vector<double> repeated_sum_epsilons(const EntryDistribution& dist, Value c, std::size_t max_k) {
  require_prime(dist);
  std::vector<double> dev = point_mass_at_zero(dist.field().p());
  std::vector<double> eps;
  eps.reserve(max_k);
  for (std::size_t k = 1; k <= max_k; ++k) {
    dev = convolve(dev, dist, c);
    eps.push_back(max_abs(dev));
  }
  return eps;
}

std::size_t equal_coefficient_run(std::size_t q_count, std::uint32_t p) noexcept {
  return std::max<std::size_t>(1, q_count / (p - 1));
}

bool almost_uniform_criterion(const EntryDistribution& dist, double epsilon, std::size_t q_count) {
  require_prime(dist);
  const std::uint32_t p = dist.field().p();
  const std::size_t k = equal_coefficient_run(q_count, p);
  for (Value c = 1; c < p; ++c) {
    if (repeated_sum_epsilons(dist, c, k).back() > epsilon) return false;
  }
  return true;
}

std::size_t find_Q(const EntryDistribution& dist, double epsilon) {
  require_prime(dist);
  if (dist.degenerate()) throw Error(ErrorCode::DegenerateDistribution, "entry law is supported on one value");
  if (!(epsilon > 0)) throw Error(ErrorCode::BadConfig, "epsilon must be positive");
  const std::uint32_t p = dist.field().p();

  // Walk all p-1 coefficient classes forward together; the deviation sup
  // norm never increases under convolution, so the first passing k is the
  // smallest one.
  std::vector<std::vector<double>> devs(p - 1, point_mass_at_zero(p));
  for (std::size_t k = 1; k <= kMaxRun; ++k) {
    double worst = 0;
    for (Value c = 1; c < p; ++c) {
      devs[c - 1] = convolve(devs[c - 1], dist, c);
      worst = std::max(worst, max_abs(devs[c - 1]));
    }
    if (worst <= epsilon) return k == 1 ? 1 : k * (p - 1);
  }
  throw Error(ErrorCode::SizeCap, "no run length up to 10^6 reaches epsilon = " + std::to_string(epsilon));
}

}  // namespace permlab
