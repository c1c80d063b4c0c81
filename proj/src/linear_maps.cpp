#include "permlab/linear_maps.hpp"

#include <algorithm>

namespace permlab {

namespace {

void check_inputs(const Matrix& m, const EntryDistribution& dist) {
  if (!(m.field() == dist.field())) {
    throw Error(ErrorCode::FieldMismatch, "matrix over " + m.field().describe() + ", distribution over " +
                                              dist.field().describe());
  }
  const std::uint64_t q = m.field().q();
  std::uint64_t total = 1;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    total *= q;
    if (total > kLinearMapCap) {
      throw Error(ErrorCode::SizeCap, "q^cols = " + std::to_string(q) + "^" + std::to_string(m.cols()) +
                                          " exceeds 1e7 vectors");
    }
  }
}

// Calls visit(y, weight) for every x, where y = M x, in odometer order.
template <typename Visit>
void sweep(const Matrix& m, const EntryDistribution& dist, Visit&& visit) {
  check_inputs(m, dist);
  const Field& f = m.field();
  const std::uint32_t q = f.q();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<Value> x(cols, 0), y(rows, 0);
  // Prefix weights: w[j] = prod_{i >= j} mu(x_i), so changing digit j only
  // refreshes w[0..j].
  std::vector<double> w(cols + 1, 1.0);
  for (std::size_t j = cols; j-- > 0;) w[j] = w[j + 1] * dist.weight(0);
  for (;;) {
    visit(y, w[0]);
    std::size_t j = 0;
    for (; j < cols; ++j) {
      const Value old = x[j];
      const Value next = old + 1 == q ? 0 : old + 1;
      // Values are field encodings, so step the image by M e_j (next - old).
      const Value diff = f.sub(next, old);
      for (std::size_t i = 0; i < rows; ++i) y[i] = f.add(y[i], f.mul(m(i, j), diff));
      x[j] = next;
      if (next != 0) break;
    }
    if (j == cols) return;
    for (std::size_t i = j + 1; i-- > 0;) w[i] = w[i + 1] * dist.weight(x[i]);
  }
}

}  // namespace

std::map<std::vector<Value>, double> linear_map_distribution(const Matrix& m, const EntryDistribution& dist) {
  std::map<std::vector<Value>, double> out;
  sweep(m, dist, [&](const std::vector<Value>& y, double w) { out[y] += w; });
  return out;
}

double brute_force_linear_map(const Matrix& m, const EntryDistribution& dist, std::span<const Value> z) {
  if (z.size() != m.rows()) {
    throw Error(ErrorCode::OutOfRange, "target has length " + std::to_string(z.size()) + ", expected " +
                                           std::to_string(m.rows()));
  }
  double total = 0;
  sweep(m, dist, [&](const std::vector<Value>& y, double w) {
    if (std::equal(y.begin(), y.end(), z.begin())) total += w;
  });
  return total;
}

double prob_at_most_nonzero(const Matrix& m, const EntryDistribution& dist, std::size_t ell) {
  double total = 0;
  sweep(m, dist, [&](const std::vector<Value>& y, double w) {
    if (static_cast<std::size_t>(std::count_if(y.begin(), y.end(), [](Value v) { return v != 0; })) <= ell) {
      total += w;
    }
  });
  return total;
}

}  // namespace permlab
