#include "permlab/events.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <memory>
#include <string>

#include "permlab/permanent.hpp"

namespace permlab {

namespace {

constexpr std::size_t kMaxEventN = 64;
constexpr std::size_t kMaxHN = 16;

std::uint64_t binomial_capped(std::size_t n, std::size_t k, std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > cap) return cap + 1;
  }
  return r;
}

// Evaluates per(A; I) for |I| = s, using the subset table when it fits.
class SubPermanents {
 public:
  SubPermanents(const Matrix& a, std::size_t s) : a_(a), s_(s) {
    if (a.rows() <= kPrefixTableMaxN) table_ = std::make_unique<PrefixPermanents>(a, a.rows() - s);
  }

  Value operator()(std::span<const std::size_t> removed) const {
    if (table_) return table_->per_removed(to_mask(removed));
    if (a_.rows() - s_ > kRyserMaxN) {
      throw Error(ErrorCode::SizeCap, "per(A; I) of size " + std::to_string(a_.rows() - s_) + " exceeds kernel cap");
    }
    return per_sub(a_, removed).value();
  }

 private:
  const Matrix& a_;
  std::size_t s_;
  std::unique_ptr<PrefixPermanents> table_;
};

bool next_combination(IndexSet& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::uint64_t mask64(const IndexSet& set) {
  std::uint64_t m = 0;
  for (std::size_t i : set) m |= std::uint64_t{1} << i;
  return m;
}

std::vector<std::size_t> greedy_pack(const std::vector<std::uint64_t>& masks, std::size_t ell, std::size_t restarts) {
  const std::size_t count = masks.size();
  for (std::size_t start = 0; start < std::min(restarts, count); ++start) {
    std::vector<std::size_t> chosen;
    std::uint64_t used = 0;
    for (std::size_t k = 0; k < count && chosen.size() < ell; ++k) {
      const std::size_t idx = (start + k) % count;
      if ((masks[idx] & used) == 0) {
        chosen.push_back(idx);
        used |= masks[idx];
      }
    }
    if (chosen.size() >= ell) return chosen;
  }
  return {};
}

// Exact search for ell pairwise-disjoint candidates; nullopt-like empty
// result with `complete` = false if the node budget ran out.
struct PackResult {
  std::vector<std::size_t> chosen;
  bool complete = true;
};

PackResult exact_pack(const std::vector<std::uint64_t>& masks, std::size_t ell, std::uint64_t budget) {
  PackResult result;
  std::vector<std::size_t> stack;
  std::uint64_t nodes = 0;
  std::function<bool(std::size_t, std::uint64_t)> dfs = [&](std::size_t from, std::uint64_t used) -> bool {
    if (stack.size() == ell) return true;
    if (masks.size() - from < ell - stack.size()) return false;
    for (std::size_t i = from; i < masks.size(); ++i) {
      if (++nodes > budget) {
        result.complete = false;
        return false;
      }
      if (masks[i] & used) continue;
      stack.push_back(i);
      if (dfs(i + 1, used | masks[i])) return true;
      stack.pop_back();
      if (!result.complete) return false;
    }
    return false;
  };
  if (dfs(0, 0)) result.chosen = stack;
  return result;
}

}  // namespace

EventReport detect_E(const Matrix& a, std::size_t s, std::size_t ell, const DetectOptions& options) {
  if (!a.is_square()) throw Error(ErrorCode::NotSquare, "detect_E expects a square matrix");
  const std::size_t n = a.rows();
  if (s > n) throw Error(ErrorCode::OutOfRange, "s = " + std::to_string(s) + " exceeds n = " + std::to_string(n));
  if (ell == 0) throw Error(ErrorCode::BadConfig, "ell must be >= 1");
  if (n > kMaxEventN) throw Error(ErrorCode::SizeCap, "detect_E limited to n <= 64");

  EventReport report;
  report.s = s;
  report.ell = ell;

  if (s == 0) {
    // The only size-0 set is the empty set, which is disjoint from itself.
    report.holds = !permanent(a).is_zero();
    if (report.holds) report.witnesses.assign(ell, IndexSet{});
    return report;
  }
  if (s * ell > n) return report;

  const std::uint64_t total = binomial_capped(n, s, options.exact_search_cap);
  const bool enumerable = total <= options.exact_search_cap;
  if (!enumerable && !options.allow_greedy) {
    throw Error(ErrorCode::SizeCap, "exact E(s, ell) search needs C(" + std::to_string(n) + "," +
                                        std::to_string(s) + ") > " + std::to_string(options.exact_search_cap) +
                                        " permanent evaluations and greedy fallback is disabled");
  }
  const bool exact_packing = enumerable && total <= options.exact_packing_cap;
  if (ell > 1 && !exact_packing && !options.allow_greedy) {
    throw Error(ErrorCode::SizeCap, "exact disjoint packing infeasible and greedy fallback is disabled");
  }

  SubPermanents per(a, s);
  IndexSet current(s);
  for (std::size_t i = 0; i < s; ++i) current[i] = i;

  // Candidates in lexicographic order; enumeration stops at the cap.
  std::vector<IndexSet> candidates;
  std::uint64_t evaluated = 0;
  do {
    if (++evaluated > options.exact_search_cap) break;
    if (per(current) != 0) {
      candidates.push_back(current);
      if (ell == 1) break;
    }
  } while (next_combination(current, n));

  if (ell == 1) {
    report.exhaustive = enumerable;
    if (!candidates.empty()) {
      report.holds = true;
      report.witnesses = {candidates.front()};
    }
    return report;
  }

  std::vector<std::uint64_t> masks;
  masks.reserve(candidates.size());
  for (const auto& c : candidates) masks.push_back(mask64(c));

  std::vector<std::size_t> chosen;
  if (exact_packing) {
    PackResult packed = exact_pack(masks, ell, options.packing_node_budget);
    chosen = packed.chosen;
    report.exhaustive = packed.complete;
    if (!packed.complete) chosen = greedy_pack(masks, ell, options.greedy_restarts);
  } else {
    chosen = greedy_pack(masks, ell, options.greedy_restarts);
    report.exhaustive = false;
  }
  if (chosen.size() >= ell) {
    report.holds = true;
    for (std::size_t idx : chosen) report.witnesses.push_back(candidates[idx]);
  }
  return report;
}

Matrix build_H(const Matrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::NotSquare, "build_H expects a square matrix");
  const std::size_t n = a.rows();
  if (n < 2) throw Error(ErrorCode::OutOfRange, "build_H needs n >= 2");
  if (n > kMaxHN) throw Error(ErrorCode::SizeCap, "build_H limited to n <= 16");
  const PrefixPermanents table(a, n - 2);
  Matrix h(a.field(), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Value v = table.per_removed((ColumnMask{1} << i) | (ColumnMask{1} << j));
      h.set(i, j, v);
      h.set(j, i, v);
    }
  }
  return h;
}

HollowCertificate hollow3_certificate(const Matrix& b) {
  if (b.rows() != 3 || b.cols() != 3) throw Error(ErrorCode::NotHollowSymmetric, "expected a 3x3 matrix");
  for (std::size_t i = 0; i < 3; ++i) {
    if (b(i, i) != 0) throw Error(ErrorCode::NotHollowSymmetric, "diagonal entry is nonzero");
    for (std::size_t j = 0; j < 3; ++j) {
      if (b(i, j) != b(j, i)) throw Error(ErrorCode::NotHollowSymmetric, "matrix is not symmetric");
    }
  }
  const Field& f = b.field();
  const Value det = f.mul(f.from_int(2), f.mul(b(0, 1), f.mul(b(0, 2), b(1, 2))));
  return {det != 0, FieldElem(f, det)};
}

Matrix build_Mj(const Matrix& a, std::span<const std::size_t> cols) {
  if (!a.is_square()) throw Error(ErrorCode::NotSquare, "build_Mj expects a square matrix");
  const std::size_t n = a.rows();
  const std::size_t s = cols.size();
  (void)complement(cols, n);  // validates the index set
  if (s == 0) throw Error(ErrorCode::OutOfRange, "build_Mj needs a nonempty column set");
  if (n > kMaxEventN) throw Error(ErrorCode::SizeCap, "build_Mj limited to n <= 64");

  SubPermanents per(a, s);
  const IndexSet base(cols.begin(), cols.end());
  std::uint64_t in_set = mask64(base);
  const Value diag = per(base);

  Matrix m(a.field(), s, n);
  for (std::size_t r = 0; r < s; ++r) {
    const std::size_t i = base[r];
    for (std::size_t h = 0; h < n; ++h) {
      if (h == i) {
        m.set(r, h, diag);
      } else if (!((in_set >> h) & 1u)) {
        IndexSet swapped;
        swapped.reserve(s);
        for (std::size_t c : base) {
          if (c != i) swapped.push_back(c);
        }
        swapped.insert(std::upper_bound(swapped.begin(), swapped.end(), h), h);
        m.set(r, h, per(swapped));
      }
    }
  }
  return m;
}

}  // namespace permlab
