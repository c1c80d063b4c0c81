#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "permlab/matrix.hpp"
#include "permlab/random_stream.hpp"

namespace permlab {

using Triangle = std::array<std::size_t, 3>;

/// Simple undirected graph stored as adjacency bitsets. When built from an H
/// matrix the edges are exactly the nonzero off-diagonal positions and the
/// matrix is kept alongside.
class PermGraph {
 public:
  explicit PermGraph(std::size_t n);

  /// Throws NotHollowSymmetric unless H is square, symmetric, zero-diagonal.
  static PermGraph from_H(Matrix h);
  static PermGraph from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_; }
  std::size_t degree(std::size_t v) const;
  bool has_edge(std::size_t u, std::size_t v) const;
  /// Throws OutOfRange on loops or bad vertices; adding an existing edge is a no-op.
  void add_edge(std::size_t u, std::size_t v);
  void remove_incident_edges(std::size_t v);
  std::vector<std::size_t> neighbours(std::size_t v) const;
  const std::optional<Matrix>& h() const noexcept { return h_; }

  /// First common neighbour of u and v, if any.
  std::optional<std::size_t> common_neighbour(std::size_t u, std::size_t v) const;

 private:
  std::size_t n_;
  std::size_t words_;
  std::size_t edges_ = 0;
  std::vector<std::uint64_t> adj_;
  std::optional<Matrix> h_;
};

PermGraph complete_graph(std::size_t n);
PermGraph complete_bipartite(std::size_t left, std::size_t right);
/// Uniform graph on n vertices with exactly m edges.
PermGraph random_graph(std::size_t n, std::size_t m, RandomStream& stream);

/// Scans vertices by decreasing degree and each neighbourhood for a common
/// neighbour. Returns the vertices in increasing order, or nullopt only when
/// the graph is triangle-free.
std::optional<Triangle> find_triangle(const PermGraph& g);

/// Repeatedly finds a triangle and deletes all edges at its vertices; stops
/// after `limit` triangles or when none is left.
std::vector<Triangle> pack_disjoint_triangles(PermGraph g, std::size_t limit);

}  // namespace permlab
