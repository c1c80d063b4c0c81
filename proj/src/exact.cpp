#include "permlab/exact.hpp"

#include <bit>
#include <cmath>
#include <cstdio>

#include "parallel.hpp"
#include "permlab/permanent.hpp"

namespace permlab {

namespace {

using boost::multiprecision::cpp_int;

constexpr std::size_t kSweepChunks = 64;

std::uint64_t checked_power(std::uint64_t base, std::size_t exp, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

// Cofactor vector of the last row: per/det = sum_j c_j x_j.
class Cofactors {
 public:
  Cofactors(const Field& f, std::size_t n, Statistic stat)
      : f_(f), n_(n), stat_(stat), table_(std::size_t{1} << n, 0), scratch_((n - 1) * (n - 1)) {}

  void compute(const std::vector<Value>& top, std::vector<Value>& out) {
    if (n_ == 1) {
      out[0] = 1;
      return;
    }
    if (stat_ == Statistic::Permanent) {
      permanent_cofactors(top, out);
    } else {
      determinant_cofactors(top, out);
    }
  }

 private:
  void permanent_cofactors(const std::vector<Value>& top, std::vector<Value>& out) {
    const auto full = static_cast<ColumnMask>((std::size_t{1} << n_) - 1);
    table_[0] = 1;
    for (std::size_t s = 1; s <= full; ++s) {
      const auto cols = static_cast<ColumnMask>(s);
      const auto r = static_cast<std::size_t>(std::popcount(cols));
      if (r > n_ - 1) continue;
      Value acc = 0;
      for (ColumnMask rest = cols; rest; rest &= rest - 1) {
        const int j = std::countr_zero(rest);
        acc = f_.add(acc, f_.mul(top[(r - 1) * n_ + j], table_[cols & ~(ColumnMask{1} << j)]));
      }
      table_[s] = acc;
    }
    for (std::size_t i = 0; i < n_; ++i) out[i] = table_[full & ~(ColumnMask{1} << i)];
  }

  void determinant_cofactors(const std::vector<Value>& top, std::vector<Value>& out) {
    const std::size_t m = n_ - 1;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t r = 0; r < m; ++r) {
        std::size_t cc = 0;
        for (std::size_t c = 0; c < n_; ++c) {
          if (c != i) scratch_[r * m + cc++] = top[r * n_ + c];
        }
      }
      Value d = small_det(m);
      if ((m + i) & 1) d = f_.neg(d);
      out[i] = d;
    }
  }

  Value small_det(std::size_t m) {
    Value det = 1;
    for (std::size_t c = 0; c < m; ++c) {
      std::size_t pivot = c;
      while (pivot < m && scratch_[pivot * m + c] == 0) ++pivot;
      if (pivot == m) return 0;
      if (pivot != c) {
        for (std::size_t j = 0; j < m; ++j) std::swap(scratch_[pivot * m + j], scratch_[c * m + j]);
        det = f_.neg(det);
      }
      const Value pv = scratch_[c * m + c];
      det = f_.mul(det, pv);
      const Value pinv = f_.inv(pv);
      for (std::size_t r = c + 1; r < m; ++r) {
        const Value factor = f_.mul(scratch_[r * m + c], pinv);
        if (factor == 0) continue;
        for (std::size_t j = c; j < m; ++j) {
          scratch_[r * m + j] = f_.sub(scratch_[r * m + j], f_.mul(factor, scratch_[c * m + j]));
        }
      }
    }
    return det;
  }

  const Field& f_;
  std::size_t n_;
  Statistic stat_;
  std::vector<Value> table_;
  std::vector<Value> scratch_;
};

// Calls visit(top_weight_index_state, value) for every matrix in the chunk
// [begin, end) of top-block configurations; `on_row` receives the last-row
// odometer index and the statistic value.
template <typename OnTop, typename OnRow>
void sweep_chunk(const Field& f, std::size_t n, Statistic stat, std::uint64_t begin, std::uint64_t end,
                 OnTop&& on_top, OnRow&& on_row) {
  const std::uint32_t q = f.q();
  const std::size_t top_len = (n - 1) * n;
  std::vector<Value> top(top_len, 0);
  std::uint64_t idx = begin;
  for (std::size_t k = 0; k < top_len; ++k) {
    top[k] = static_cast<Value>(idx % q);
    idx /= q;
  }
  Cofactors cof(f, n, stat);
  std::vector<Value> c(n), x(n);
  const std::uint64_t lasts = checked_power(q, n, ~std::uint64_t{0});

  for (std::uint64_t t = begin; t < end; ++t) {
    cof.compute(top, c);
    on_top(top);
    std::fill(x.begin(), x.end(), 0);
    Value acc = 0;
    for (std::uint64_t li = 0; li < lasts; ++li) {
      on_row(li, acc);
      for (std::size_t j = 0; j < n; ++j) {
        const Value old = x[j];
        const Value next = old + 1 == q ? 0 : old + 1;
        acc = f.add(f.sub(acc, f.mul(c[j], old)), f.mul(c[j], next));
        x[j] = next;
        if (next != 0) break;
      }
    }
    for (std::size_t k = 0; k < top_len; ++k) {
      if (++top[k] < q) break;
      top[k] = 0;
    }
  }
}

std::uint64_t top_count(std::size_t n, std::uint64_t q) {
  return checked_power(q, n * (n - 1), kEnumerationCap);
}

void require_feasible(std::size_t n, std::uint64_t q) {
  if (!enumeration_feasible(n, q)) {
    char cost[32];
    std::snprintf(cost, sizeof cost, "%.3g", std::pow(static_cast<double>(q), static_cast<double>(n * n)));
    throw Error(ErrorCode::SizeCap, "enumeration needs q^(n^2) = " + std::to_string(q) + "^" +
                                        std::to_string(n * n) + " = " + cost + " matrices, cap is 5e7");
  }
}

}  // namespace

std::string to_string(Statistic stat) { return stat == Statistic::Permanent ? "per" : "det"; }

Statistic parse_statistic(const std::string& text) {
  if (text == "per" || text == "permanent") return Statistic::Permanent;
  if (text == "det" || text == "determinant") return Statistic::Determinant;
  throw Error(ErrorCode::Usage, "unknown statistic '" + text + "' (expected per or det)");
}

double alpha(std::uint64_t q, double tol) {
  const double qd = static_cast<double>(q);
  double product = 1.0;
  double term = 1.0;
  for (std::size_t i = 1;; ++i) {
    term /= qd;
    product *= 1.0 - term;
    // Remaining tail sum_{j>i} q^-j = q^-i / (q - 1).
    if (term / (qd - 1.0) < tol) break;
  }
  return 1.0 - product;
}

Rational exact_det_singular_prob(std::size_t n, std::uint64_t q) {
  Rational survive = 1;
  cpp_int power = 1;
  for (std::size_t j = 1; j <= n; ++j) {
    power *= q;
    survive *= Rational(power - 1, power);
  }
  return 1 - survive;
}

double det_survival_product(std::uint64_t q, std::size_t from, std::size_t to) {
  double product = 1.0;
  for (std::size_t i = from; i <= to; ++i) product *= 1.0 - std::pow(static_cast<double>(q), -static_cast<double>(i));
  return product;
}

bool enumeration_feasible(std::size_t n, std::uint64_t q) {
  return checked_power(q, n * n, kEnumerationCap) <= kEnumerationCap;
}

ExactCounts enumerate_exact(std::size_t n, std::uint64_t q, Statistic stat, unsigned workers) {
  const Field f = Field::make(q);
  require_feasible(n, q);
  ExactCounts out;
  out.n = n;
  out.q = f.q();
  out.stat = stat;
  out.counts.assign(f.q(), 0);
  if (n == 0) {
    out.counts[1] = 1;
    out.total = 1;
    return out;
  }
  const std::uint64_t tops = top_count(n, q);
  const std::size_t chunks = static_cast<std::size_t>(std::min<std::uint64_t>(kSweepChunks, tops));
  std::vector<std::vector<std::uint64_t>> partial(chunks, std::vector<std::uint64_t>(f.q(), 0));
  detail::for_each_chunk(chunks, workers, [&](std::size_t chunk) {
    const auto [begin, end] = detail::chunk_range(tops, chunks, chunk);
    auto& counts = partial[chunk];
    sweep_chunk(f, n, stat, begin, end, [](const std::vector<Value>&) {},
                [&](std::uint64_t, Value v) { ++counts[v]; });
  });
  for (const auto& counts : partial) {
    for (std::size_t z = 0; z < counts.size(); ++z) out.counts[z] += counts[z];
  }
  for (auto c : out.counts) out.total += c;
  return out;
}

std::vector<double> enumerate_weighted(std::size_t n, const EntryDistribution& dist, Statistic stat,
                                       unsigned workers) {
  const Field& f = dist.field();
  const std::uint32_t q = f.q();
  require_feasible(n, q);
  std::vector<double> out(q, 0.0);
  if (n == 0) {
    out[1] = 1.0;
    return out;
  }
  const std::uint64_t lasts = checked_power(q, n, kEnumerationCap);
  std::vector<double> last_weight(lasts);
  for (std::uint64_t li = 0; li < lasts; ++li) {
    double w = 1.0;
    std::uint64_t rest = li;
    for (std::size_t j = 0; j < n; ++j) {
      w *= dist.weight(static_cast<Value>(rest % q));
      rest /= q;
    }
    last_weight[li] = w;
  }
  const std::uint64_t tops = top_count(n, q);
  const std::size_t chunks = static_cast<std::size_t>(std::min<std::uint64_t>(kSweepChunks, tops));
  std::vector<std::vector<double>> partial(chunks, std::vector<double>(q, 0.0));
  detail::for_each_chunk(chunks, workers, [&](std::size_t chunk) {
    const auto [begin, end] = detail::chunk_range(tops, chunks, chunk);
    auto& probs = partial[chunk];
    double top_weight = 0;
    sweep_chunk(
        f, n, stat, begin, end,
        [&](const std::vector<Value>& top) {
          top_weight = 1.0;
          for (Value v : top) top_weight *= dist.weight(v);
        },
        [&](std::uint64_t li, Value v) { probs[v] += top_weight * last_weight[li]; });
  });
  for (const auto& probs : partial) {
    for (std::size_t z = 0; z < q; ++z) out[z] += probs[z];
  }
  return out;
}

}  // namespace permlab
