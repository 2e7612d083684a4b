#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "degseq/degree_sequence.hpp"
#include "degseq/graph.hpp"
#include "degseq/prob_matrix.hpp"
#include "degseq/random.hpp"

namespace degseq {

/// Edge set of a graph on at most 11 vertices, bit pair_index(n, u, v) per edge.
using EdgeMask = std::uint64_t;

constexpr std::size_t kMaskVertexLimit = 11;

EdgeMask to_mask(const SimpleGraph& g);
SimpleGraph from_mask(std::size_t n, EdgeMask mask);

struct OracleOptions {
  std::size_t max_vertices = 10;
  std::size_t max_family = 5'000'000;
};

/// All simple graphs with a fixed degree sequence, as edge masks in increasing
/// (lexicographic bitmask) order.
class GraphFamily {
 public:
  GraphFamily() = default;
  GraphFamily(std::size_t n, std::vector<EdgeMask> masks) : n_(n), masks_(std::move(masks)) {}

  std::size_t num_vertices() const { return n_; }
  std::size_t size() const { return masks_.size(); }
  bool empty() const { return masks_.empty(); }
  std::span<const EdgeMask> masks() const { return masks_; }
  SimpleGraph member(std::size_t i) const { return from_mask(n_, masks_[i]); }
  std::vector<SimpleGraph> members() const;

 private:
  std::size_t n_ = 0;
  std::vector<EdgeMask> masks_;
};

/// Backtracking enumeration with degree-feasibility pruning. Infeasible
/// constraints give an empty family. Throws OracleCapError past the caps and
/// std::invalid_argument when forced and forbidden overlap.
GraphFamily enumerate_graphs(const DegreeSequence& d, std::span<const Edge> forced = {},
                             std::span<const Edge> forbidden = {},
                             const OracleOptions& options = {});

/// Raw scan over all 2^(n choose 2) edge subsets; for cross-checking at n <= 6.
GraphFamily enumerate_graphs_bruteforce(const DegreeSequence& d);

/// Exact G(n,d) machinery over a precomputed family. Counts are integers; all
/// probabilities are ratios of those counts.
class Oracle {
 public:
  explicit Oracle(const DegreeSequence& d, const OracleOptions& options = {});

  const DegreeSequence& degrees() const { return d_; }
  const GraphFamily& family() const { return family_; }

  struct ConditionalCounts {
    /// Members containing the conditioning graph.
    std::uint64_t total = 0;
    /// Per pair_index: members containing the conditioning graph and that pair.
    std::vector<std::uint64_t> per_pair;
  };
  ConditionalCounts conditional_counts(EdgeMask given) const;

  /// W*(d). Throws EmptyConditioningError when d is not graphical.
  SymmetricProbMatrix edge_marginals() const;
  double conditional_edge_prob(const SimpleGraph& given, Edge jk) const;
  SimpleGraph uniform_sample(RandomSource& rng) const;
  std::map<SimpleGraph, double> subgraph_law(std::size_t m) const;

 private:
  DegreeSequence d_;
  GraphFamily family_;
};

SymmetricProbMatrix exact_edge_marginals(const DegreeSequence& d, const OracleOptions& options = {});

/// P(jk in G(n,d) | H subset G(n,d)). Throws std::invalid_argument when jk is in H
/// and EmptyConditioningError when no member contains H.
double exact_conditional_edge_prob(const DegreeSequence& d, const SimpleGraph& h, Edge jk,
                                   const OracleOptions& options = {});

SimpleGraph exact_uniform_sample(const DegreeSequence& d, RandomSource& rng,
                                 const OracleOptions& options = {});

/// Law of G(n,d,m): uniform member, then uniform m-subset of its edges.
std::map<SimpleGraph, double> exact_subgraph_law(const DegreeSequence& d, std::size_t m,
                                                 const OracleOptions& options = {});

}  // namespace degseq
