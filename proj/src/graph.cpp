#include "degseq/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace degseq {

Edge pair_at(std::size_t n, std::size_t index) {
  // Row i owns pairs [start(i), start(i) + n - i - 1).
  std::size_t i = 0;
  std::size_t row_len = n - 1;
  while (index >= row_len) {
    index -= row_len;
    ++i;
    --row_len;
  }
  return Edge(static_cast<Vertex>(i), static_cast<Vertex>(i + 1 + index));
}

SimpleGraph SimpleGraph::from_edges(std::size_t n, std::span<const Edge> edges) {
  SimpleGraph g(n);
  for (const Edge& e : edges) {
    if (!g.add_edge(e)) {
      throw std::invalid_argument("duplicate edge " + std::to_string(e.u) + " " +
                                  std::to_string(e.v));
    }
  }
  return g;
}

bool SimpleGraph::has_edge(Vertex a, Vertex b) const {
  if (a == b || a >= adj_.size() || b >= adj_.size()) return false;
  const auto& shorter = adj_[a].size() <= adj_[b].size() ? adj_[a] : adj_[b];
  const Vertex other = adj_[a].size() <= adj_[b].size() ? b : a;
  return std::binary_search(shorter.begin(), shorter.end(), other);
}

bool SimpleGraph::add_edge(Vertex a, Vertex b) {
  if (a == b) throw std::invalid_argument("self-loop at vertex " + std::to_string(a));
  if (a >= adj_.size() || b >= adj_.size()) {
    throw std::invalid_argument("edge endpoint out of range");
  }
  auto& la = adj_[a];
  auto pos = std::lower_bound(la.begin(), la.end(), b);
  if (pos != la.end() && *pos == b) return false;
  la.insert(pos, b);
  auto& lb = adj_[b];
  lb.insert(std::lower_bound(lb.begin(), lb.end(), a), a);
  ++edge_count_;
  return true;
}

std::vector<std::uint32_t> SimpleGraph::degrees() const {
  std::vector<std::uint32_t> out(adj_.size());
  for (std::size_t v = 0; v < adj_.size(); ++v) out[v] = static_cast<std::uint32_t>(adj_[v].size());
  return out;
}

std::vector<Edge> SimpleGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (std::size_t u = 0; u < adj_.size(); ++u) {
    for (Vertex v : adj_[u]) {
      if (v > u) out.emplace_back(static_cast<Vertex>(u), v);
    }
  }
  return out;
}

std::optional<Edge> SimpleGraph::first_edge_not_in(const SimpleGraph& other) const {
  for (std::size_t u = 0; u < adj_.size(); ++u) {
    for (Vertex v : adj_[u]) {
      if (v > u && !other.has_edge(static_cast<Vertex>(u), v)) {
        return Edge(static_cast<Vertex>(u), v);
      }
    }
  }
  return std::nullopt;
}

}  // namespace degseq
