#include "degseq/degree_process.hpp"

#include <algorithm>
#include <stdexcept>

#include "degseq/errors.hpp"

namespace degseq {

namespace {
// Consecutive rejected proposals before switching to an explicit pair scan.
constexpr std::size_t kMaxRejectionRun = 64;
}  // namespace

DegreeProcess::DegreeProcess(const DegreeSequence& d)
    : d_(d),
      g_(d.size()),
      t_(d.values().begin(), d.values().end()),
      fenwick_(d.values()),
      track_mask_(d.size() <= kMaskVertexLimit) {}

void DegreeProcess::reset() {
  g_ = SimpleGraph(d_.size());
  t_.assign(d_.values().begin(), d_.values().end());
  fenwick_ = FenwickSampler(d_.values());
  mask_ = 0;
}

double DegreeProcess::p_m() const {
  const double total = static_cast<double>(d_.sum());
  return total == 0 ? 0.0 : static_cast<double>(remaining_total()) / total;
}

void DegreeProcess::insert(Edge e) {
  if (t_[e.u] == 0 || t_[e.v] == 0) throw std::logic_error("edge exceeds target degree");
  if (!g_.add_edge(e)) throw std::logic_error("edge already present");
  --t_[e.u];
  --t_[e.v];
  fenwick_.add(e.u, -1);
  fenwick_.add(e.v, -1);
  if (track_mask_) mask_ |= EdgeMask{1} << pair_index(d_.size(), e.u, e.v);
}

double DegreeProcess::asymptotic_prob(Edge e) const {
  if (g_.has_edge(e)) return 0.0;
  const double prod = static_cast<double>(t_[e.u]) * static_cast<double>(t_[e.v]);
  if (prod == 0.0) return 0.0;
  return prod / (static_cast<double>(remaining_total()) + prod);
}

std::optional<Edge> DegreeProcess::draw_asymptotic(RandomSource& rng) {
  if (remaining_total() < 2) return std::nullopt;
  const double total = static_cast<double>(remaining_total());
  // Propose {j,k} with probability proportional to t_j t_k, then accept with
  // ||t||/(||t|| + t_j t_k); the accepted law is proportional to the weight.
  for (std::size_t attempt = 0; attempt < kMaxRejectionRun; ++attempt) {
    const auto j = static_cast<Vertex>(fenwick_.sample(rng));
    const auto k = static_cast<Vertex>(fenwick_.sample(rng));
    const double u = rng.uniform();
    if (j == k || g_.has_edge(j, k)) continue;
    const double prod = static_cast<double>(t_[j]) * static_cast<double>(t_[k]);
    if (u < total / (total + prod)) return Edge(j, k);
  }
  return draw_asymptotic_explicit(rng);
}

std::optional<Edge> DegreeProcess::draw_asymptotic_explicit(RandomSource& rng) {
  ++explicit_scans_;
  std::vector<Vertex> active;
  for (std::size_t v = 0; v < t_.size(); ++v) {
    if (t_[v] > 0) active.push_back(static_cast<Vertex>(v));
  }
  std::vector<Edge> pairs;
  std::vector<double> cumulative;
  double acc = 0.0;
  for (std::size_t a = 0; a < active.size(); ++a) {
    for (std::size_t b = a + 1; b < active.size(); ++b) {
      const Edge e(active[a], active[b]);
      const double w = asymptotic_prob(e);
      if (w <= 0.0) continue;
      acc += w;
      pairs.push_back(e);
      cumulative.push_back(acc);
    }
  }
  if (pairs.empty()) return std::nullopt;
  const double target = rng.uniform() * acc;
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
  const auto idx = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()),
                                         pairs.size() - 1);
  return pairs[idx];
}

Edge DegreeProcess::draw_exact(const Oracle& oracle, RandomSource& rng) const {
  if (!track_mask_) throw OracleCapError("exact kernel requires n <= 11");
  const Oracle::ConditionalCounts counts = oracle.conditional_counts(mask_);
  if (counts.total == 0) {
    throw EmptyConditioningError("current partial graph has no completion");
  }
  // Weight of a non-edge = number of completions containing it.
  std::uint64_t weight_total = 0;
  for (std::size_t p = 0; p < counts.per_pair.size(); ++p) {
    if (((mask_ >> p) & 1) == 0) weight_total += counts.per_pair[p];
  }
  if (weight_total == 0) throw std::logic_error("draw_exact called on a complete graph");
  std::uint64_t r = rng.uniform_below(weight_total);
  for (std::size_t p = 0; p < counts.per_pair.size(); ++p) {
    if ((mask_ >> p) & 1) continue;
    if (r < counts.per_pair[p]) return pair_at(d_.size(), p);
    r -= counts.per_pair[p];
  }
  throw std::logic_error("draw_exact: weight walk overran");
}

}  // namespace degseq
