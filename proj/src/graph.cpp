#include "permlab/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

namespace permlab {

PermGraph::PermGraph(std::size_t n) : n_(n), words_((n + 63) / 64), adj_(n * words_, 0) {}

PermGraph PermGraph::from_H(Matrix h) {
  if (!h.is_square()) throw Error(ErrorCode::NotHollowSymmetric, "H must be square");
  const std::size_t n = h.rows();
  PermGraph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (h(i, i) != 0) throw Error(ErrorCode::NotHollowSymmetric, "H has a nonzero diagonal entry");
    for (std::size_t j = i + 1; j < n; ++j) {
      if (h(i, j) != h(j, i)) throw Error(ErrorCode::NotHollowSymmetric, "H is not symmetric");
      if (h(i, j) != 0) g.add_edge(i, j);
    }
  }
  g.h_ = std::move(h);
  return g;
}

PermGraph PermGraph::from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  PermGraph g(n);
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  return g;
}

std::size_t PermGraph::degree(std::size_t v) const {
  if (v >= n_) throw Error(ErrorCode::OutOfRange, "vertex out of range");
  std::size_t d = 0;
  for (std::size_t w = 0; w < words_; ++w) d += static_cast<std::size_t>(std::popcount(adj_[v * words_ + w]));
  return d;
}

bool PermGraph::has_edge(std::size_t u, std::size_t v) const {
  if (u >= n_ || v >= n_) throw Error(ErrorCode::OutOfRange, "vertex out of range");
  return (adj_[u * words_ + v / 64] >> (v % 64)) & 1u;
}

void PermGraph::add_edge(std::size_t u, std::size_t v) {
  if (u >= n_ || v >= n_) throw Error(ErrorCode::OutOfRange, "vertex out of range");
  if (u == v) throw Error(ErrorCode::OutOfRange, "loops are not allowed");
  if (has_edge(u, v)) return;
  adj_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
  adj_[v * words_ + u / 64] |= std::uint64_t{1} << (u % 64);
  ++edges_;
}

void PermGraph::remove_incident_edges(std::size_t v) {
  for (std::size_t u : neighbours(v)) {
    adj_[u * words_ + v / 64] &= ~(std::uint64_t{1} << (v % 64));
    --edges_;
  }
  std::fill_n(adj_.begin() + static_cast<std::ptrdiff_t>(v * words_), words_, 0);
}

std::vector<std::size_t> PermGraph::neighbours(std::size_t v) const {
  if (v >= n_) throw Error(ErrorCode::OutOfRange, "vertex out of range");
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_; ++w) {
    for (std::uint64_t bits = adj_[v * words_ + w]; bits; bits &= bits - 1) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
    }
  }
  return out;
}

std::optional<std::size_t> PermGraph::common_neighbour(std::size_t u, std::size_t v) const {
  for (std::size_t w = 0; w < words_; ++w) {
    const std::uint64_t both = adj_[u * words_ + w] & adj_[v * words_ + w];
    if (both) return w * 64 + static_cast<std::size_t>(std::countr_zero(both));
  }
  return std::nullopt;
}

PermGraph complete_graph(std::size_t n) {
  PermGraph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
  }
  return g;
}

PermGraph complete_bipartite(std::size_t left, std::size_t right) {
  PermGraph g(left + right);
  for (std::size_t i = 0; i < left; ++i) {
    for (std::size_t j = 0; j < right; ++j) g.add_edge(i, left + j);
  }
  return g;
}

PermGraph random_graph(std::size_t n, std::size_t m, RandomStream& stream) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  if (m > pairs.size()) throw Error(ErrorCode::OutOfRange, "more edges requested than pairs available");
  // Partial Fisher-Yates.
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t pick = k + stream.below(static_cast<std::uint32_t>(pairs.size() - k));
    std::swap(pairs[k], pairs[pick]);
  }
  pairs.resize(m);
  return PermGraph::from_edges(n, pairs);
}

std::optional<Triangle> find_triangle(const PermGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> order(n);
  std::vector<std::size_t> deg(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t v = 0; v < n; ++v) deg[v] = g.degree(v);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return deg[a] > deg[b]; });
  for (std::size_t u : order) {
    if (deg[u] < 2) break;
    for (std::size_t v : g.neighbours(u)) {
      if (auto w = g.common_neighbour(u, v)) {
        Triangle t{u, v, *w};
        std::sort(t.begin(), t.end());
        return t;
      }
    }
  }
  return std::nullopt;
}

std::vector<Triangle> pack_disjoint_triangles(PermGraph g, std::size_t limit) {
  std::vector<Triangle> out;
  while (out.size() < limit) {
    auto t = find_triangle(g);
    if (!t) break;
    out.push_back(*t);
    for (std::size_t v : *t) g.remove_incident_edges(v);
  }
  return out;
}

}  // namespace permlab
