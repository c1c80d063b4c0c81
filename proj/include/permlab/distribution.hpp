#pragma once

#include <cstddef>
#include <vector>

#include "permlab/field.hpp"
#include "permlab/matrix.hpp"
#include "permlab/random_stream.hpp"

namespace permlab {

/// Entry law mu over F_q. Non-uniform laws are restricted to prime fields.
/// Sampling uses a Vose alias table built once at construction.
class EntryDistribution {
 public:
  static constexpr double kSumTolerance = 1e-12;

  const Field& field() const noexcept { return field_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  double weight(Value z) const noexcept { return weights_[z]; }
  /// Largest point mass.
  double rho() const noexcept { return rho_; }
  std::size_t support_size() const noexcept { return support_size_; }
  bool degenerate() const noexcept { return support_size_ <= 1; }
  bool uniform() const noexcept { return uniform_; }

  Value sample(RandomStream& stream) const noexcept {
    const std::uint32_t column = stream.below(field_.q());
    if (uniform_) return column;
    return stream.next_double() < accept_[column] ? column : alias_[column];
  }

  friend EntryDistribution uniform_distribution(const Field& field);
  friend EntryDistribution make_distribution(const Field& field, std::vector<double> weights);

 private:
  EntryDistribution(Field field, std::vector<double> weights, bool uniform);

  Field field_;
  std::vector<double> weights_;
  double rho_ = 0;
  std::size_t support_size_ = 0;
  bool uniform_ = false;
  std::vector<double> accept_;
  std::vector<Value> alias_;
};

EntryDistribution uniform_distribution(const Field& field);

/// Throws BadWeights (wrong length, negative, or not summing to 1 within
/// 1e-12) and NonPrimeField (non-uniform weights over q = p^k, k > 1).
/// Exactly-uniform weights produce the same object as uniform_distribution.
EntryDistribution make_distribution(const Field& field, std::vector<double> weights);

/// n x n matrix with i.i.d. entries, drawn row-major from `stream`.
Matrix sample_matrix(std::size_t n, const EntryDistribution& dist, RandomStream& stream);

std::vector<Value> sample_vector(std::size_t n, const EntryDistribution& dist, RandomStream& stream);

}  // namespace permlab
