#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace degseq {

using Vertex = std::uint32_t;

/// Unordered vertex pair, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  auto operator<=>(const Edge&) const = default;
};

/// Number of unordered pairs on n vertices.
constexpr std::size_t pair_count(std::size_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

/// Position of pair {i, j} (i < j) in lexicographic order (0,1), (0,2), ..., (n-2,n-1).
/// The same indexing is used by packed matrices and oracle edge masks.
constexpr std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) {
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

/// Inverse of pair_index.
Edge pair_at(std::size_t n, std::size_t index);

/// Labeled simple graph. Adjacency lists are kept sorted, so two graphs with the
/// same edge set compare equal and order deterministically.
class SimpleGraph {
 public:
  SimpleGraph() = default;
  explicit SimpleGraph(std::size_t n) : adj_(n) {}

  static SimpleGraph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t num_vertices() const { return adj_.size(); }
  std::size_t num_edges() const { return edge_count_; }

  bool has_edge(Vertex a, Vertex b) const;
  bool has_edge(Edge e) const { return has_edge(e.u, e.v); }

  /// Inserts {a, b}. Returns false when the edge already exists.
  /// Throws std::invalid_argument on self-loops or out-of-range vertices.
  bool add_edge(Vertex a, Vertex b);
  bool add_edge(Edge e) { return add_edge(e.u, e.v); }

  std::size_t degree(Vertex v) const { return adj_[v].size(); }
  std::vector<std::uint32_t> degrees() const;
  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }

  /// Edges in lexicographic order.
  std::vector<Edge> edges() const;

  /// First edge (lexicographic) of *this that is missing from other, if any.
  std::optional<Edge> first_edge_not_in(const SimpleGraph& other) const;
  bool is_subgraph_of(const SimpleGraph& other) const { return !first_edge_not_in(other); }

  bool operator==(const SimpleGraph&) const = default;
  auto operator<=>(const SimpleGraph& other) const {
    if (auto c = adj_.size() <=> other.adj_.size(); c != 0) return c;
    return adj_ <=> other.adj_;
  }

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::size_t edge_count_ = 0;
};

}  // namespace degseq
