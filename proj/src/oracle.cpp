#include "degseq/oracle.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "degseq/errors.hpp"

namespace degseq {

EdgeMask to_mask(const SimpleGraph& g) {
  const std::size_t n = g.num_vertices();
  if (n > kMaskVertexLimit) throw OracleCapError("edge masks support at most 11 vertices");
  EdgeMask mask = 0;
  for (const Edge& e : g.edges()) mask |= EdgeMask{1} << pair_index(n, e.u, e.v);
  return mask;
}

SimpleGraph from_mask(std::size_t n, EdgeMask mask) {
  SimpleGraph g(n);
  while (mask != 0) {
    const auto bit = static_cast<std::size_t>(std::countr_zero(mask));
    g.add_edge(pair_at(n, bit));
    mask &= mask - 1;
  }
  return g;
}

std::vector<SimpleGraph> GraphFamily::members() const {
  std::vector<SimpleGraph> out;
  out.reserve(masks_.size());
  for (EdgeMask m : masks_) out.push_back(from_mask(n_, m));
  return out;
}

namespace {

void check_caps(const DegreeSequence& d, const OracleOptions& options) {
  const std::size_t cap = std::min(options.max_vertices, kMaskVertexLimit);
  if (d.size() > cap) {
    throw OracleCapError("oracle vertex cap exceeded: n=" + std::to_string(d.size()) +
                         " > " + std::to_string(cap));
  }
}

EdgeMask edges_to_mask(std::size_t n, std::span<const Edge> edges) {
  EdgeMask mask = 0;
  for (const Edge& e : edges) {
    if (e.u == e.v || e.v >= n) throw std::invalid_argument("constraint edge out of range");
    mask |= EdgeMask{1} << pair_index(n, e.u, e.v);
  }
  return mask;
}

class Backtracker {
 public:
  Backtracker(const DegreeSequence& d, EdgeMask forced, EdgeMask forbidden, std::size_t max_family)
      : n_(d.size()),
        need_(d.values().begin(), d.values().end()),
        forced_(forced),
        forbidden_(forbidden),
        max_family_(max_family) {}

  std::vector<EdgeMask> run() {
    row(0);
    std::sort(found_.begin(), found_.end());
    return std::move(found_);
  }

 private:
  // Decide pairs (i, j) for j = i+1 .. n-1, then move to row i+1.
  void row(std::size_t i) {
    if (i + 1 >= n_) {
      if (n_ == 0 || need_[n_ - 1] == 0) emit();
      return;
    }
    pair(i, i + 1);
  }

  void pair(std::size_t i, std::size_t j) {
    if (j == n_) {
      if (need_[i] != 0) return;
      // Vertices after i can still meet only n-2-i more pairs each.
      for (std::size_t v = i + 1; v < n_; ++v) {
        if (need_[v] > n_ - 2 - i) return;
      }
      row(i + 1);
      return;
    }
    if (need_[i] > n_ - j) return;
    const EdgeMask bit = EdgeMask{1} << pair_index(n_, i, j);
    const bool must = (forced_ & bit) != 0;
    const bool banned = (forbidden_ & bit) != 0;
    if (!banned && need_[i] > 0 && need_[j] > 0) {
      --need_[i];
      --need_[j];
      current_ |= bit;
      pair(i, j + 1);
      current_ &= ~bit;
      ++need_[i];
      ++need_[j];
    }
    if (!must) pair(i, j + 1);
  }

  void emit() {
    if (found_.size() >= max_family_) {
      throw OracleCapError("oracle family cap exceeded (" + std::to_string(max_family_) + ")");
    }
    found_.push_back(current_);
  }

  std::size_t n_;
  std::vector<std::uint32_t> need_;
  EdgeMask forced_;
  EdgeMask forbidden_;
  std::size_t max_family_;
  EdgeMask current_ = 0;
  std::vector<EdgeMask> found_;
};

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Calls fn(sub) for every subset of `mask` with exactly m bits.
template <class Fn>
void for_each_subset(EdgeMask mask, std::size_t m, EdgeMask chosen, Fn& fn) {
  if (m == 0) {
    fn(chosen);
    return;
  }
  if (static_cast<std::size_t>(std::popcount(mask)) < m) return;
  const EdgeMask low = mask & (~mask + 1);
  for_each_subset(mask & ~low, m - 1, chosen | low, fn);
  for_each_subset(mask & ~low, m, chosen, fn);
}

}  // namespace

GraphFamily enumerate_graphs(const DegreeSequence& d, std::span<const Edge> forced,
                             std::span<const Edge> forbidden, const OracleOptions& options) {
  check_caps(d, options);
  const std::size_t n = d.size();
  const EdgeMask forced_mask = edges_to_mask(n, forced);
  const EdgeMask forbidden_mask = edges_to_mask(n, forbidden);
  if ((forced_mask & forbidden_mask) != 0) {
    throw std::invalid_argument("forced and forbidden edge sets intersect");
  }
  for (auto x : d.values()) {
    if (n > 0 && x >= n) return GraphFamily(n, {});
  }
  Backtracker bt(d, forced_mask, forbidden_mask, options.max_family);
  return GraphFamily(n, bt.run());
}

GraphFamily enumerate_graphs_bruteforce(const DegreeSequence& d) {
  const std::size_t n = d.size();
  if (n > 7) throw OracleCapError("brute-force enumeration is limited to n <= 7");
  const std::size_t pairs = pair_count(n);
  std::vector<Edge> pair_list;
  for (std::size_t p = 0; p < pairs; ++p) pair_list.push_back(pair_at(n, p));
  std::vector<EdgeMask> found;
  std::vector<std::uint32_t> deg(n);
  for (EdgeMask mask = 0; mask < (EdgeMask{1} << pairs); ++mask) {
    std::fill(deg.begin(), deg.end(), 0);
    for (std::size_t p = 0; p < pairs; ++p) {
      if ((mask >> p) & 1) {
        ++deg[pair_list[p].u];
        ++deg[pair_list[p].v];
      }
    }
    if (std::equal(deg.begin(), deg.end(), d.values().begin())) found.push_back(mask);
  }
  return GraphFamily(n, std::move(found));
}

Oracle::Oracle(const DegreeSequence& d, const OracleOptions& options)
    : d_(d), family_(enumerate_graphs(d, {}, {}, options)) {}

Oracle::ConditionalCounts Oracle::conditional_counts(EdgeMask given) const {
  ConditionalCounts out;
  out.per_pair.assign(pair_count(d_.size()), 0);
  for (EdgeMask m : family_.masks()) {
    if ((m & given) != given) continue;
    ++out.total;
    for (EdgeMask rest = m; rest != 0; rest &= rest - 1) {
      ++out.per_pair[static_cast<std::size_t>(std::countr_zero(rest))];
    }
  }
  return out;
}

SymmetricProbMatrix Oracle::edge_marginals() const {
  if (family_.empty()) throw EmptyConditioningError("W*(d) undefined: d is not graphical");
  const ConditionalCounts counts = conditional_counts(0);
  const double total = static_cast<double>(counts.total);
  return SymmetricProbMatrix::from_function(d_.size(), [&](std::size_t i, std::size_t j) {
    return static_cast<double>(counts.per_pair[pair_index(d_.size(), i, j)]) / total;
  });
}

double Oracle::conditional_edge_prob(const SimpleGraph& given, Edge jk) const {
  if (given.num_vertices() != d_.size()) {
    throw std::invalid_argument("conditioning graph has the wrong vertex count");
  }
  if (given.has_edge(jk)) throw std::invalid_argument("queried edge is already in H");
  const ConditionalCounts counts = conditional_counts(to_mask(given));
  if (counts.total == 0) {
    throw EmptyConditioningError("no graph with this degree sequence contains H");
  }
  return static_cast<double>(counts.per_pair[pair_index(d_.size(), jk.u, jk.v)]) /
         static_cast<double>(counts.total);
}

SimpleGraph Oracle::uniform_sample(RandomSource& rng) const {
  if (family_.empty()) throw NotGraphicalError("cannot sample: degree sequence is not graphical");
  return family_.member(static_cast<std::size_t>(rng.uniform_below(family_.size())));
}

std::map<SimpleGraph, double> Oracle::subgraph_law(std::size_t m) const {
  const std::uint64_t total_edges = d_.sum() / 2;
  if (m > total_edges) throw std::out_of_range("m exceeds ||d||_1 / 2");
  if (family_.empty()) throw NotGraphicalError("G(n,d,m) undefined: d is not graphical");

  // Every member has the same edge count, so each (member, subset) pair has
  // weight 1 / (|F| C(|E|, m)); aggregate integer hit counts per subgraph.
  std::map<EdgeMask, std::uint64_t> hits;
  auto record = [&](EdgeMask sub) { ++hits[sub]; };
  for (EdgeMask member : family_.masks()) for_each_subset(member, m, EdgeMask{0}, record);

  const double denom =
      static_cast<double>(family_.size()) * static_cast<double>(binomial(total_edges, m));
  std::map<SimpleGraph, double> law;
  for (const auto& [mask, count] : hits) {
    law.emplace(from_mask(d_.size(), mask), static_cast<double>(count) / denom);
  }
  return law;
}

SymmetricProbMatrix exact_edge_marginals(const DegreeSequence& d, const OracleOptions& options) {
  return Oracle(d, options).edge_marginals();
}

double exact_conditional_edge_prob(const DegreeSequence& d, const SimpleGraph& h, Edge jk,
                                   const OracleOptions& options) {
  return Oracle(d, options).conditional_edge_prob(h, jk);
}

SimpleGraph exact_uniform_sample(const DegreeSequence& d, RandomSource& rng,
                                 const OracleOptions& options) {
  return Oracle(d, options).uniform_sample(rng);
}

std::map<SimpleGraph, double> exact_subgraph_law(const DegreeSequence& d, std::size_t m,
                                                 const OracleOptions& options) {
  return Oracle(d, options).subgraph_law(m);
}

}  // namespace degseq
