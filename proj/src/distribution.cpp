#include "permlab/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace permlab {

EntryDistribution::EntryDistribution(Field field, std::vector<double> weights, bool uniform)
    : field_(std::move(field)), weights_(std::move(weights)), uniform_(uniform) {
  rho_ = *std::max_element(weights_.begin(), weights_.end());
  support_size_ = static_cast<std::size_t>(std::count_if(weights_.begin(), weights_.end(), [](double w) { return w > 0; }));
  if (uniform_) return;

  // Vose's alias method.
  const std::size_t q = weights_.size();
  accept_.assign(q, 0.0);
  alias_.assign(q, 0);
  std::vector<double> scaled(q);
  std::vector<Value> small, large;
  for (std::size_t i = 0; i < q; ++i) {
    scaled[i] = weights_[i] * static_cast<double>(q);
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<Value>(i));
  }
  while (!small.empty() && !large.empty()) {
    const Value s = small.back();
    small.pop_back();
    const Value l = large.back();
    accept_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  for (Value l : large) {
    accept_[l] = 1.0;
    alias_[l] = l;
  }
  for (Value s : small) {  // rounding leftovers
    accept_[s] = 1.0;
    alias_[s] = s;
  }
}

EntryDistribution uniform_distribution(const Field& field) {
  const std::size_t q = field.q();
  return EntryDistribution(field, std::vector<double>(q, 1.0 / static_cast<double>(q)), true);
}

EntryDistribution make_distribution(const Field& field, std::vector<double> weights) {
  if (weights.size() != field.q()) {
    throw Error(ErrorCode::BadWeights, "expected " + std::to_string(field.q()) + " weights, got " +
                                           std::to_string(weights.size()));
  }
  double sum = 0;
  for (double w : weights) {
    if (!(w >= 0) || !std::isfinite(w)) throw Error(ErrorCode::BadWeights, "weights must be finite and non-negative");
    sum += w;
  }
  if (std::fabs(sum - 1.0) > EntryDistribution::kSumTolerance) {
    throw Error(ErrorCode::BadWeights, "weights sum to " + std::to_string(sum) + ", not 1");
  }
  const bool uniform = std::all_of(weights.begin(), weights.end(), [&](double w) { return w == weights.front(); });
  if (uniform) return uniform_distribution(field);
  if (!field.is_prime()) {
    throw Error(ErrorCode::NonPrimeField, "non-uniform entry laws need a prime field, got " + field.describe());
  }
  return EntryDistribution(field, std::move(weights), false);
}

std::vector<Value> sample_vector(std::size_t n, const EntryDistribution& dist, RandomStream& stream) {
  std::vector<Value> out(n);
  for (auto& v : out) v = dist.sample(stream);
  return out;
}

Matrix sample_matrix(std::size_t n, const EntryDistribution& dist, RandomStream& stream) {
  return Matrix(dist.field(), n, n, sample_vector(n * n, dist, stream));
}

}  // namespace permlab
