#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "permlab/distribution.hpp"
#include "permlab/matrix.hpp"

namespace permlab {

/// Full-enumeration cap on q^cols.
inline constexpr std::uint64_t kLinearMapCap = 10'000'000;

/// Exact law of M x for x with i.i.d. mu entries, keyed by the image vector.
/// Throws SizeCap when q^cols exceeds the cap, FieldMismatch if M and mu live
/// over different fields.
std::map<std::vector<Value>, double> linear_map_distribution(const Matrix& m, const EntryDistribution& dist);

/// Exact Pr[M x = z]. Throws OutOfRange if z has the wrong length.
double brute_force_linear_map(const Matrix& m, const EntryDistribution& dist, std::span<const Value> z);

/// Exact Pr[M x has at most `ell` nonzero entries].
double prob_at_most_nonzero(const Matrix& m, const EntryDistribution& dist, std::size_t ell);

}  // namespace permlab
