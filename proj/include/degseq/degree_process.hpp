#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "degseq/degree_sequence.hpp"
#include "degseq/graph.hpp"
#include "degseq/oracle.hpp"
#include "degseq/random.hpp"

namespace degseq {

/// A partially built graph G_m together with its remaining degrees t = d - d^{G_m}.
/// Holds the two step kernels of the sequential G(n,d) construction: the exact
/// conditional law (via an Oracle) and the asymptotic edge-probability weights.
class DegreeProcess {
 public:
  explicit DegreeProcess(const DegreeSequence& d);

  const DegreeSequence& target() const { return d_; }
  const SimpleGraph& graph() const { return g_; }
  std::size_t num_edges() const { return g_.num_edges(); }
  std::uint32_t remaining(Vertex v) const { return t_[v]; }
  const std::vector<std::uint32_t>& remaining() const { return t_; }
  std::uint64_t remaining_total() const { return fenwick_.total(); }
  bool complete() const { return remaining_total() == 0; }
  /// (||d||_1 - 2m) / ||d||_1.
  double p_m() const;
  /// Edge mask of the current graph; valid only for n <= kMaskVertexLimit.
  EdgeMask mask() const { return mask_; }

  /// Adds e. Throws std::logic_error if e is present or would exceed a degree.
  void insert(Edge e);
  void reset();

  /// t_j t_k / (||t||_1 + t_j t_k) for e not in G, else 0.
  double asymptotic_prob(Edge e) const;

  /// Next edge with probability proportional to asymptotic_prob over non-edges.
  /// Returns nullopt when every such weight is zero while degrees are unsaturated.
  std::optional<Edge> draw_asymptotic(RandomSource& rng);

  /// Next edge with probability proportional to P(e in G(n,d) | G_m), exactly.
  Edge draw_exact(const Oracle& oracle, RandomSource& rng) const;

  /// Count of explicit pair scans taken by draw_asymptotic after long rejection runs.
  std::size_t explicit_scans() const { return explicit_scans_; }

 private:
  std::optional<Edge> draw_asymptotic_explicit(RandomSource& rng);

  DegreeSequence d_;
  SimpleGraph g_;
  std::vector<std::uint32_t> t_;
  FenwickSampler fenwick_;
  EdgeMask mask_ = 0;
  bool track_mask_ = false;
  std::size_t explicit_scans_ = 0;
};

}  // namespace degseq
