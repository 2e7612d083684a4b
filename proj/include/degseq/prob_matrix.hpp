#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "degseq/degree_sequence.hpp"
#include "degseq/graph.hpp"

namespace degseq {

/// Symmetric n x n matrix with entries in [0, 1] and zero diagonal, stored as the
/// packed strict upper triangle in pair_index order.
class SymmetricProbMatrix {
 public:
  SymmetricProbMatrix() = default;
  /// All off-diagonal entries equal to value.
  explicit SymmetricProbMatrix(std::size_t n, double value = 0.0);

  /// Builds entry (i, j), i < j, from fn(i, j). Throws std::domain_error if any
  /// value falls outside [0, 1] or is NaN.
  static SymmetricProbMatrix from_function(std::size_t n,
                                           const std::function<double(std::size_t, std::size_t)>& fn);

  std::size_t size() const { return n_; }

  double operator()(std::size_t i, std::size_t j) const {
    if (i == j) return 0.0;
    if (i > j) std::swap(i, j);
    return packed_[pair_index(n_, i, j)];
  }
  double at(Edge e) const { return packed_[pair_index(n_, e.u, e.v)]; }

  /// Packed upper triangle, pair_index order.
  std::span<const double> packed() const { return packed_; }

  /// Sum over unordered pairs.
  double pair_sum() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> packed_;
};

/// P(d): d_i d_j / (||d||_1 + d_i d_j).
SymmetricProbMatrix p_matrix(const DegreeSequence& d);

/// Q(d): d_i d_j / sum_{k<l} d_k d_l. Throws DegenerateSequenceError when the
/// normalizer is zero.
SymmetricProbMatrix q_matrix(const DegreeSequence& d);

/// sum_{k<l} d_k d_l, computed exactly in integers.
unsigned __int128 weighted_pair_total(const DegreeSequence& d);

/// Chung-Lu matrix min(w_j w_k / ||w||_1, 1). Throws std::invalid_argument when w is all zero.
SymmetricProbMatrix chung_lu_matrix(std::span<const double> w);

/// Entrywise 1 - exp(-scale * M_jk).
SymmetricProbMatrix f_c_transform(const SymmetricProbMatrix& m, double scale);

/// Entrywise product; throws std::invalid_argument on dimension mismatch.
SymmetricProbMatrix hadamard(const SymmetricProbMatrix& a, const SymmetricProbMatrix& b);

struct RemainingDegrees {
  DegreeSequence t;
  /// (||d||_1 - 2m) / ||d||_1 with m = |E(H)|; 0 when ||d||_1 = 0.
  double p_m = 0.0;
};

/// t = d - d^H. Throws std::invalid_argument when H exceeds d anywhere or the
/// vertex counts differ.
RemainingDegrees remaining_degrees(const DegreeSequence& d, const SimpleGraph& h);

}  // namespace degseq
