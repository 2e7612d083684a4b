#include "degseq/prob_matrix.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "degseq/errors.hpp"

namespace degseq {

SymmetricProbMatrix::SymmetricProbMatrix(std::size_t n, double value)
    : n_(n), packed_(pair_count(n), value) {
  if (!(value >= 0.0 && value <= 1.0)) throw std::domain_error("matrix entry outside [0,1]");
}

SymmetricProbMatrix SymmetricProbMatrix::from_function(
    std::size_t n, const std::function<double(std::size_t, std::size_t)>& fn) {
  SymmetricProbMatrix m(n);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++idx) {
      const double v = fn(i, j);
      if (!(v >= 0.0 && v <= 1.0)) {
        throw std::domain_error("matrix entry (" + std::to_string(i) + "," + std::to_string(j) +
                                ") = " + std::to_string(v) + " outside [0,1]");
      }
      m.packed_[idx] = v;
    }
  }
  return m;
}

double SymmetricProbMatrix::pair_sum() const {
  return std::accumulate(packed_.begin(), packed_.end(), 0.0);
}

SymmetricProbMatrix p_matrix(const DegreeSequence& d) {
  const double total = static_cast<double>(d.sum());
  return SymmetricProbMatrix::from_function(d.size(), [&](std::size_t i, std::size_t j) {
    const double prod = static_cast<double>(d[i]) * static_cast<double>(d[j]);
    return prod == 0.0 ? 0.0 : prod / (total + prod);
  });
}

unsigned __int128 weighted_pair_total(const DegreeSequence& d) {
  // sum_{k<l} d_k d_l = (S^2 - sum d_i^2) / 2
  unsigned __int128 s = 0;
  unsigned __int128 sq = 0;
  for (std::uint32_t x : d.values()) {
    s += x;
    sq += static_cast<unsigned __int128>(x) * x;
  }
  return (s * s - sq) / 2;
}

SymmetricProbMatrix q_matrix(const DegreeSequence& d) {
  const unsigned __int128 total = weighted_pair_total(d);
  if (total == 0) {
    throw DegenerateSequenceError("Q(d) undefined: fewer than two positive degrees");
  }
  const double denom = static_cast<double>(total);
  return SymmetricProbMatrix::from_function(d.size(), [&](std::size_t i, std::size_t j) {
    return static_cast<double>(d[i]) * static_cast<double>(d[j]) / denom;
  });
}

SymmetricProbMatrix chung_lu_matrix(std::span<const double> w) {
  double total = 0.0;
  for (double x : w) {
    if (!(x >= 0.0)) throw std::invalid_argument("Chung-Lu weights must be non-negative");
    total += x;
  }
  if (total <= 0.0) throw std::invalid_argument("Chung-Lu weights are all zero");
  return SymmetricProbMatrix::from_function(w.size(), [&](std::size_t i, std::size_t j) {
    return std::min(w[i] * w[j] / total, 1.0);
  });
}

SymmetricProbMatrix f_c_transform(const SymmetricProbMatrix& m, double scale) {
  if (!(scale >= 0.0)) throw std::invalid_argument("f_c scale must be non-negative");
  return SymmetricProbMatrix::from_function(m.size(), [&](std::size_t i, std::size_t j) {
    return -std::expm1(-scale * m(i, j));
  });
}

SymmetricProbMatrix hadamard(const SymmetricProbMatrix& a, const SymmetricProbMatrix& b) {
  if (a.size() != b.size()) throw std::invalid_argument("Hadamard product: dimension mismatch");
  return SymmetricProbMatrix::from_function(
      a.size(), [&](std::size_t i, std::size_t j) { return a(i, j) * b(i, j); });
}

RemainingDegrees remaining_degrees(const DegreeSequence& d, const SimpleGraph& h) {
  if (h.num_vertices() != d.size()) {
    throw std::invalid_argument("remaining_degrees: graph and sequence sizes differ");
  }
  std::vector<std::uint32_t> t(d.size());
  for (std::size_t v = 0; v < d.size(); ++v) {
    const std::size_t used = h.degree(static_cast<Vertex>(v));
    if (used > d[v]) {
      throw std::invalid_argument("vertex " + std::to_string(v) + " has degree " +
                                  std::to_string(used) + " in H but only " +
                                  std::to_string(d[v]) + " in d");
    }
    t[v] = d[v] - static_cast<std::uint32_t>(used);
  }
  RemainingDegrees out{DegreeSequence(std::move(t)), 0.0};
  const double total = static_cast<double>(d.sum());
  if (total > 0) out.p_m = (total - 2.0 * static_cast<double>(h.num_edges())) / total;
  return out;
}

}  // namespace degseq
