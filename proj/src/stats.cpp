#include "degseq/stats.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <queue>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "degseq/errors.hpp"

namespace degseq {

namespace {

std::size_t common_size(std::span<const SimpleGraph> samples) {
  if (samples.empty()) return 0;
  const std::size_t n = samples.front().num_vertices();
  for (const auto& g : samples) {
    if (g.num_vertices() != n) throw std::invalid_argument("samples have mixed vertex counts");
  }
  return n;
}

std::vector<std::uint64_t> edge_counts(std::span<const SimpleGraph> samples, std::size_t n) {
  std::vector<std::uint64_t> counts(pair_count(n), 0);
  for (const auto& g : samples) {
    for (const Edge& e : g.edges()) ++counts[pair_index(n, e.u, e.v)];
  }
  return counts;
}

}  // namespace

MarginalReport marginals_from_counts(std::size_t n, std::span<const std::uint64_t> counts,
                                     std::size_t n_runs, const SymmetricProbMatrix& reference) {
  if (n_runs < 100) throw std::invalid_argument("empirical_marginals needs at least 100 samples");
  if (reference.size() != n || counts.size() != pair_count(n)) {
    throw std::invalid_argument("reference matrix size does not match samples");
  }
  MarginalReport r;
  r.n = n;
  r.n_runs = n_runs;
  const auto runs = static_cast<double>(n_runs);
  for (std::size_t p = 0; p < counts.size(); ++p) {
    EdgeMarginal m;
    m.edge = pair_at(n, p);
    m.count = counts[p];
    m.frequency = static_cast<double>(counts[p]) / runs;
    m.reference = reference.packed()[p];
    if (m.reference <= 0.0 || m.reference >= 1.0) {
      m.exact_mismatch = m.frequency != m.reference;
      r.exact_mismatches += m.exact_mismatch ? 1 : 0;
    } else {
      const double se = std::sqrt(m.reference * (1.0 - m.reference) / runs);
      m.z = (m.frequency - m.reference) / se;
      r.worst_abs_z = std::max(r.worst_abs_z, std::abs(*m.z));
    }
    r.edges.push_back(m);
  }
  return r;
}

MarginalReport empirical_marginals(std::span<const SimpleGraph> samples,
                                   const SymmetricProbMatrix& reference) {
  const std::size_t n = common_size(samples);
  return marginals_from_counts(n, edge_counts(samples, n), samples.size(), reference);
}

GofReport chi_square_counts(std::span<const std::uint64_t> observed, std::span<const double> probs) {
  if (observed.size() != probs.size()) throw std::invalid_argument("observed/probability size mismatch");
  double mass = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw std::invalid_argument("negative or NaN probability");
    mass += p;
  }
  if (std::abs(mass - 1.0) > 1e-9) throw std::invalid_argument("probabilities do not sum to 1");

  GofReport r;
  for (auto o : observed) r.n_runs += o;
  const auto runs = static_cast<double>(r.n_runs);

  struct Group {
    double expected;
    double observed;
    bool operator>(const Group& o) const { return expected > o.expected; }
  };
  std::priority_queue<Group, std::vector<Group>, std::greater<>> heap;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] == 0.0) {
      if (observed[i] > 0) throw OutOfSupportError("observation in a zero-probability category");
      continue;
    }
    ++r.support;
    heap.push({probs[i] * runs, static_cast<double>(observed[i])});
  }
  while (heap.size() >= 2 && heap.top().expected < 5.0) {
    Group a = heap.top();
    heap.pop();
    Group b = heap.top();
    heap.pop();
    heap.push({a.expected + b.expected, a.observed + b.observed});
  }
  r.categories = heap.size();
  if (r.categories < 2 || r.n_runs == 0) {
    r.statistic = 0.0;
    r.p_value = 1.0;
    return r;
  }
  while (!heap.empty()) {
    const Group g = heap.top();
    heap.pop();
    const double diff = g.observed - g.expected;
    r.statistic += diff * diff / g.expected;
  }
  const double dof = static_cast<double>(r.categories - 1);
  r.p_value = boost::math::gamma_q(dof / 2.0, r.statistic / 2.0);
  return r;
}

GofReport chi_square_gof(std::span<const SimpleGraph> samples, const std::map<SimpleGraph, double>& law) {
  std::vector<double> probs;
  probs.reserve(law.size());
  for (const auto& [g, p] : law) probs.push_back(p);
  std::vector<std::uint64_t> observed(law.size(), 0);
  for (const auto& s : samples) {
    const auto it = law.find(s);
    if (it == law.end() || it->second == 0.0) {
      throw OutOfSupportError("sample outside the support of the reference law");
    }
    ++observed[static_cast<std::size_t>(std::distance(law.begin(), it))];
  }
  return chi_square_counts(observed, probs);
}

const CovarianceEntry& CovarianceReport::at(Edge e, Edge f) const {
  std::size_t a = pair_index(n, e.u, e.v);
  std::size_t b = pair_index(n, f.u, f.v);
  if (a == b) throw std::invalid_argument("covariance entry needs distinct edges");
  if (a > b) std::swap(a, b);
  const std::size_t pairs = pair_count(n);
  // Row a holds pairs - a - 1 entries; rows are laid out like pair_index.
  return entries[pair_index(pairs, a, b)];
}

CovarianceReport pairwise_covariance(std::span<const SimpleGraph> samples, double sigma) {
  if (samples.size() < 10'000) throw std::invalid_argument("pairwise_covariance needs at least 10^4 samples");
  const std::size_t n = common_size(samples);
  const std::size_t pairs = pair_count(n);
  if (pairs > 4096) throw std::invalid_argument("pairwise_covariance is dense; n too large");
  const auto runs = static_cast<double>(samples.size());

  std::vector<std::uint64_t> single(pairs, 0);
  std::vector<std::uint64_t> joint(pair_count(pairs), 0);
  std::vector<std::size_t> idx;
  for (const auto& g : samples) {
    idx.clear();
    for (const Edge& e : g.edges()) idx.push_back(pair_index(n, e.u, e.v));
    for (std::size_t x = 0; x < idx.size(); ++x) {
      ++single[idx[x]];
      for (std::size_t y = x + 1; y < idx.size(); ++y) ++joint[pair_index(pairs, idx[x], idx[y])];
    }
  }

  CovarianceReport r;
  r.n = n;
  r.n_runs = samples.size();
  r.entries.reserve(joint.size());
  for (std::size_t a = 0; a < pairs; ++a) {
    const double pa = static_cast<double>(single[a]) / runs;
    for (std::size_t b = a + 1; b < pairs; ++b) {
      const double pb = static_cast<double>(single[b]) / runs;
      CovarianceEntry c;
      c.a = a;
      c.b = b;
      c.covariance = static_cast<double>(joint[pair_index(pairs, a, b)]) / runs - pa * pb;
      c.band = sigma * std::sqrt(pa * (1.0 - pa) * pb * (1.0 - pb) / runs);
      c.within = std::abs(c.covariance) <= c.band;
      r.outside += c.within ? 0 : 1;
      r.entries.push_back(c);
    }
  }
  return r;
}

SubgraphReport subgraph_check(std::span<const std::pair<SimpleGraph, SimpleGraph>> pairs) {
  SubgraphReport r;
  r.total = pairs.size();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [small, big] = pairs[i];
    if (small.num_vertices() != big.num_vertices()) {
      throw std::invalid_argument("subgraph_check: vertex counts differ within a pair");
    }
    if (const auto missing = small.first_edge_not_in(big)) {
      r.violations.push_back({i, *missing});
    } else {
      ++r.count_contained;
    }
  }
  return r;
}

std::vector<ConcentrationEntry> degree_concentration_check(
    const DegreeSequence& d, std::span<const std::pair<std::size_t, SimpleGraph>> checkpoints,
    double xi) {
  std::vector<ConcentrationEntry> out;
  const auto total = static_cast<double>(d.sum());
  std::size_t active = 0;
  for (auto x : d.values()) active += x > 0 ? 1 : 0;
  for (const auto& [m, g] : checkpoints) {
    ConcentrationEntry e;
    e.m = m;
    e.p_m = total == 0.0 ? 0.0 : (total - 2.0 * static_cast<double>(g.num_edges())) / total;
    std::size_t violations = 0;
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (d[j] == 0) continue;
      const double target = e.p_m * d[j];
      const double dev = std::abs(static_cast<double>(d[j]) - static_cast<double>(g.degree(static_cast<Vertex>(j))) - target);
      if (dev > xi * target + 1e-12) ++violations;
      if (target > 0.0) e.worst_relative_deviation = std::max(e.worst_relative_deviation, dev / target);
    }
    e.violation_fraction = active == 0 ? 0.0 : static_cast<double>(violations) / static_cast<double>(active);
    out.push_back(e);
  }
  return out;
}

FcpComparison compare_w_to_fcp(const DegreeSequence& d, const CouplingParams& params) {
  const DegreeStats stats = degree_stats(d);
  FcpComparison r;
  r.zeta = params.zeta;
  r.zeta_prime = params.zeta_prime;
  r.degree_ratio = static_cast<double>(stats.max) / static_cast<double>(stats.sum);
  r.driver = r.zeta + r.zeta_prime + r.degree_ratio;

  const std::size_t n = d.size();
  const auto total = static_cast<double>(stats.sum);
  const auto pair_total = static_cast<double>(weighted_pair_total(d));
  if (pair_total == 0.0) throw DegenerateSequenceError("Q(d) undefined: fewer than two positive degrees");
  const std::span<const double> big_lambda = params.big_lambda.packed();
  double sum = 0.0;
  std::size_t count = 0;
  std::size_t idx = 0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k, ++idx) {
      const double dd = static_cast<double>(d[j]) * static_cast<double>(d[k]);
      if (dd == 0.0) continue;
      const double coupled = -std::expm1(-params.lambda * big_lambda[idx] * (dd / pair_total));
      const double target = -std::expm1(-dd / (total + dd));
      const double rel = std::abs(coupled - target) / target;
      sum += rel;
      ++count;
      if (rel > r.max_relative_error) {
        r.max_relative_error = rel;
        r.worst_edge = Edge(static_cast<Vertex>(j), static_cast<Vertex>(k));
      }
    }
  }
  r.mean_relative_error = count == 0 ? 0.0 : sum / static_cast<double>(count);
  return r;
}

KsReport ks_uniform(std::vector<double> values) {
  KsReport r;
  r.n = values.size();
  if (values.empty()) return r;
  std::sort(values.begin(), values.end());
  const auto n = static_cast<double>(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    r.statistic = std::max({r.statistic, values[i] - lo, hi - values[i]});
  }
  const double root = std::sqrt(n);
  const double lambda = (root + 0.12 + 0.11 / root) * r.statistic;
  // Kolmogorov tail 2 sum (-1)^(k-1) exp(-2 k^2 lambda^2).
  double q = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = sign * 2.0 * std::exp(-2.0 * k * k * lambda * lambda);
    q += term;
    if (std::abs(term) < 1e-12) break;
    sign = -sign;
  }
  r.p_value = std::clamp(lambda < 1e-3 ? 1.0 : q, 0.0, 1.0);
  return r;
}

void to_json(nlohmann::json& j, const MarginalReport& r) {
  j = {{"n", r.n}, {"n_runs", r.n_runs}, {"worst_abs_z", r.worst_abs_z},
       {"exact_mismatches", r.exact_mismatches}, {"edges", nlohmann::json::array()}};
  for (const auto& e : r.edges) {
    nlohmann::json row = {{"i", e.edge.u}, {"j", e.edge.v}, {"count", e.count},
                          {"frequency", e.frequency}, {"reference", e.reference}};
    row["z"] = e.z ? nlohmann::json(*e.z) : nlohmann::json(nullptr);
    j["edges"].push_back(row);
  }
}

void to_json(nlohmann::json& j, const GofReport& r) {
  j = {{"categories", r.categories}, {"statistic", r.statistic}, {"p_value", r.p_value},
       {"n_runs", r.n_runs}, {"support", r.support}};
}

void to_json(nlohmann::json& j, const CovarianceReport& r) {
  j = {{"n", r.n}, {"n_runs", r.n_runs}, {"outside", r.outside}, {"entries", nlohmann::json::array()}};
  for (const auto& c : r.entries) {
    const Edge a = pair_at(r.n, c.a);
    const Edge b = pair_at(r.n, c.b);
    j["entries"].push_back({{"edge_a", {a.u, a.v}}, {"edge_b", {b.u, b.v}},
                            {"covariance", c.covariance}, {"band", c.band}, {"within", c.within}});
  }
}

void to_json(nlohmann::json& j, const SubgraphReport& r) {
  j = {{"total", r.total}, {"count_contained", r.count_contained}, {"violations", nlohmann::json::array()}};
  for (const auto& v : r.violations) {
    j["violations"].push_back({{"index", v.index}, {"witness", {v.witness.u, v.witness.v}}});
  }
}

void to_json(nlohmann::json& j, const ConcentrationEntry& r) {
  j = {{"m", r.m}, {"p_m", r.p_m}, {"violation_fraction", r.violation_fraction},
       {"worst_relative_deviation", r.worst_relative_deviation}};
}

void to_json(nlohmann::json& j, const FcpComparison& r) {
  j = {{"max_relative_error", r.max_relative_error}, {"mean_relative_error", r.mean_relative_error},
       {"worst_edge", {r.worst_edge.u, r.worst_edge.v}}, {"zeta", r.zeta}, {"zeta_prime", r.zeta_prime},
       {"degree_ratio", r.degree_ratio}, {"driver", r.driver}};
}

void to_json(nlohmann::json& j, const KsReport& r) {
  j = {{"statistic", r.statistic}, {"p_value", r.p_value}, {"n", r.n}};
}

void write_marginals_csv(std::ostream& out, const MarginalReport& r) {
  const auto precision = out.precision(17);
  out << "i,j,count,frequency,reference,z\n";
  for (const auto& e : r.edges) {
    out << e.edge.u << ',' << e.edge.v << ',' << e.count << ',' << e.frequency << ',' << e.reference << ',';
    if (e.z) out << *e.z;
    out << '\n';
  }
  out.precision(precision);
}

}  // namespace degseq
