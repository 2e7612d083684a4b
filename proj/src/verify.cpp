#include "degseq/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "degseq/coupling.hpp"
#include "degseq/generators.hpp"
#include "degseq/oracle.hpp"
#include "degseq/samplers.hpp"
#include "degseq/stats.hpp"

namespace degseq::verify {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Distinct seed per criterion so suites can run in any subset.
std::uint64_t criterion_seed(const VerifyOptions& o, std::uint64_t k) {
  return o.seed ^ (k * 0x9E3779B97F4A7C15ULL);
}

std::string num(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

std::map<SimpleGraph, double> uniform_law(const GraphFamily& family) {
  std::map<SimpleGraph, double> law;
  for (std::size_t i = 0; i < family.size(); ++i) law[family.member(i)] = 1.0 / static_cast<double>(family.size());
  return law;
}

CriterionResult finish(CriterionResult r, Clock::time_point start, double budget_seconds) {
  r.seconds = since(start);
  r.data["seconds"] = r.seconds;
  r.data["budget_seconds"] = budget_seconds;
  if (r.seconds >= budget_seconds) {
    r.passed = false;
    r.detail += "; over time budget " + num(budget_seconds) + "s";
  }
  return r;
}

}  // namespace

CriterionResult c1_seq_approx_law(const VerifyOptions& o) {
  const auto start = Clock::now();
  CriterionResult r;
  r.id = "C1";
  // Three live vertices plus an isolated one: Q = 1/3 on the live triangle,
  // six edges and fifteen edge pairs overall.
  const DegreeSequence d{2, 2, 2, 0};
  const double lambda = 2.4;
  const SymmetricProbMatrix big_lambda(4, 0.54);
  const WeightedEdgeSampler proposals(d);
  const SymmetricProbMatrix reference = f_c_transform(hadamard(big_lambda, q_matrix(d)), lambda);

  const std::size_t runs = 200'000;
  const auto samples = map_replicas(
      runs, criterion_seed(o, 1),
      [&](std::size_t, RandomSource& rng) { return seq_approx_p(proposals, lambda, big_lambda, rng); }, o.exec);
  const MarginalReport marg = empirical_marginals(samples, reference);
  const CovarianceReport cov = pairwise_covariance(samples);

  r.passed = marg.passed() && cov.outside == 0 && cov.entries.size() == 15;
  r.detail = "worst|z|=" + num(marg.worst_abs_z) + " exact_mismatch=" + std::to_string(marg.exact_mismatches) +
             " cov_outside=" + std::to_string(cov.outside) + "/" + std::to_string(cov.entries.size()) +
             " ref=" + num(reference(0, 1));
  r.data = {{"marginals", marg}, {"covariance_outside", cov.outside}, {"reference", reference(0, 1)}};
  return finish(std::move(r), start, 30.0);
}

CriterionResult c2_seq_sample_uniform(const VerifyOptions& o) {
  const auto start = Clock::now();
  CriterionResult r;
  r.id = "C2";
  r.passed = true;
  std::uint64_t k = 20;
  for (const DegreeSequence& d : {DegreeSequence{2, 2, 2, 2}, DegreeSequence{1, 1, 1, 1}}) {
    const Oracle oracle(d);
    SeqSampleOptions so;
    so.oracle = &oracle;
    const auto samples = map_replicas(
        30'000, criterion_seed(o, k++),
        [&](std::size_t, RandomSource& rng) {
          return seq_sample_d(d, SeqSampleMode::kExactOracle, rng, {}, so).graph;
        },
        o.exec);
    const GofReport gof = chi_square_gof(samples, uniform_law(oracle.family()));
    r.passed = r.passed && gof.passed() && oracle.family().size() == 3;
    r.detail += (r.detail.empty() ? "" : " ") + std::string("d=") + std::to_string(d[0]) + "^4 p=" + num(gof.p_value);
    r.data["gof"].push_back(gof);
  }
  return finish(std::move(r), start, 60.0);
}

CriterionResult c3_checkpoint_law(const VerifyOptions& o) {
  const auto start = Clock::now();
  CriterionResult r;
  r.id = "C3";
  const DegreeSequence d{2, 2, 2, 2};
  const Oracle oracle(d);
  SeqSampleOptions so;
  so.oracle = &oracle;
  const std::vector<std::size_t> checkpoints{1, 2};
  const auto runs = map_replicas(
      30'000, criterion_seed(o, 3),
      [&](std::size_t, RandomSource& rng) {
        return seq_sample_d(d, SeqSampleMode::kExactOracle, rng, checkpoints, so).checkpoints;
      },
      o.exec);
  r.passed = true;
  for (std::size_t c = 0; c < checkpoints.size(); ++c) {
    std::vector<SimpleGraph> snaps;
    snaps.reserve(runs.size());
    for (const auto& run : runs) snaps.push_back(run[c].second);
    const GofReport gof = chi_square_gof(snaps, oracle.subgraph_law(checkpoints[c]));
    r.passed = r.passed && gof.passed();
    r.detail += (c ? " " : "") + std::string("m=") + std::to_string(checkpoints[c]) + " p=" + num(gof.p_value);
    r.data["gof"].push_back(gof);
  }
  return finish(std::move(r), start, 120.0);
}

CriterionResult c4_coupling_small(const VerifyOptions& o) {
  const auto start = Clock::now();
  CriterionResult r;
  r.id = "C4";
  const DegreeSequence d{2, 2, 2, 2};
  ParamOverrides over;
  over.zeta = 0.1;
  over.zeta_prime = 0.1;
  const CouplingParams params = resolve_params(d, over);
  CouplingOptions co;
  co.prob_mode = SeqSampleMode::kExactOracle;
  co.denom_mode = EtaDenominatorMode::kExactMax;
  const CouplingEngine engine(d, params, co);

  const auto results = map_replicas(
      30'000, criterion_seed(o, 4), [&](std::size_t, RandomSource& rng) { return engine.run(rng); }, o.exec);

  std::vector<SimpleGraph> g_l;
  std::vector<SimpleGraph> g;
  std::vector<std::pair<SimpleGraph, SimpleGraph>> coupled;
  std::size_t fallbacks = 0;
  for (const auto& res : results) {
    g_l.push_back(res.g_l);
    g.push_back(res.g);
    if (res.trace.fallback) {
      ++fallbacks;
    } else {
      coupled.emplace_back(res.g_l, res.g);
    }
  }
  const SymmetricProbMatrix reference =
      f_c_transform(hadamard(params.big_lambda, q_matrix(d)), params.lambda);
  const MarginalReport marg = empirical_marginals(g_l, reference);
  const GofReport gof = chi_square_gof(g, uniform_law(engine.oracle()->family()));
  const SubgraphReport sub = subgraph_check(coupled);

  r.passed = marg.passed() && gof.passed() && sub.violations.empty();
  const double fallback_fraction = static_cast<double>(fallbacks) / static_cast<double>(results.size());
  r.detail = "(a) worst|z|=" + num(marg.worst_abs_z) + " (b) p=" + num(gof.p_value) +
             " (c) violations=" + std::to_string(sub.violations.size()) + "/" + std::to_string(sub.total) +
             " fallback=" + num(fallback_fraction);
  r.data = {{"marginals", marg}, {"gof", gof}, {"containment", sub}, {"fallback_fraction", fallback_fraction},
            {"lambda", params.lambda}, {"reference", reference(0, 1)}};
  return finish(std::move(r), start, 120.0);
}

namespace {

struct CouplingSummary {
  std::size_t runs = 0;
  std::size_t fallbacks = 0;
  std::size_t violations = 0;
  double eta_min = 1.0;
  CouplingParams params;
};

CouplingSummary summarize_coupling(const DegreeSequence& d, std::size_t runs, std::uint64_t seed,
                                   Execution exec) {
  CouplingSummary s;
  s.params = default_params(d);
  CouplingOptions co;
  co.prob_mode = SeqSampleMode::kAsymptotic;
  co.denom_mode = EtaDenominatorMode::kCertifiedBound;
  const CouplingEngine engine(d, s.params, co);
  struct Outcome {
    bool fallback;
    bool contained;
    double eta_min;
  };
  const auto out = map_replicas(
      runs, seed,
      [&](std::size_t, RandomSource& rng) {
        const CouplingResult res = engine.run(rng);
        return Outcome{res.trace.fallback, res.g_l.is_subgraph_of(res.g), res.trace.eta_min};
      },
      exec);
  s.runs = runs;
  for (const auto& x : out) {
    s.fallbacks += x.fallback ? 1 : 0;
    s.violations += (!x.fallback && !x.contained) ? 1 : 0;
    s.eta_min = std::min(s.eta_min, x.eta_min);
  }
  return s;
}

}  // namespace

CriterionResult c5_fallback_trend(const VerifyOptions& o) {
  const auto start = Clock::now();
  CriterionResult r;
  r.id = "C5";
  std::vector<double> fractions;
  std::size_t violations = 0;
  std::uint64_t k = 50;
  for (std::size_t n : {500, 1000, 2000}) {
    const double log_n = std::log(static_cast<double>(n));
    const auto deg = static_cast<std::uint32_t>(std::ceil(log_n * log_n));
    const DegreeSequence d = regular_sequence(n, deg).d;
    const CouplingSummary s = summarize_coupling(d, 20, criterion_seed(o, k++), o.exec);
    const double f = static_cast<double>(s.fallbacks) / static_cast<double>(s.runs);
    fractions.push_back(f);
    violations += s.violations;
    r.detail += (r.detail.empty() ? "" : " ") + std::string("n=") + std::to_string(n) + ":" + num(f);
    r.data["runs"].push_back({{"n", n}, {"d", deg}, {"fallback_fraction", f}, {"zeta", s.params.zeta},
                              {"zeta_prime", s.params.zeta_prime}, {"xi", s.params.xi},
                              {"eta_min", s.eta_min}, {"violations", s.violations}});
  }
  const bool monotone = fractions[0] >= fractions[1] && fractions[1] >= fractions[2];
  r.passed = monotone && fractions[2] <= 0.25 && violations == 0;
  r.detail += " violations=" + std::to_string(violations);
  return finish(std::move(r), start, 600.0);
}

CriterionResult c6_marginal_closeness(const VerifyOptions&) {
  const auto start = Clock::now();
  CriterionResult r;
  r.id = "C6";
  const DegreeSequence d = regular_sequence(2000, 50).d;
  const CouplingParams params = default_params(d);
  const FcpComparison cmp = compare_w_to_fcp(d, params);
  const double bound = params.zeta + params.zeta_prime + 0.05;
  r.passed = cmp.max_relative_error < bound;
  r.detail = "max_rel=" + num(cmp.max_relative_error) + " bound=" + num(bound);
  r.data = cmp;
  r.data["bound"] = bound;
  return finish(std::move(r), start, 1.0);
}

CriterionResult c7_oracle_consistency(const VerifyOptions&) {
  const auto start = Clock::now();
  CriterionResult r;
  r.id = "C7";
  std::size_t checked = 0;
  std::size_t mismatches = 0;
  std::size_t row_sum_failures = 0;
  double worst_float_row = 0.0;
  for (std::size_t n = 1; n <= 6; ++n) {
    const std::uint32_t top = static_cast<std::uint32_t>(std::min<std::size_t>(3, n - 1));
    std::vector<std::uint32_t> v(n, 0);
    while (true) {
      const DegreeSequence d(v);
      if (is_graphical(d)) {
        ++checked;
        const GraphFamily fast = enumerate_graphs(d);
        const GraphFamily slow = enumerate_graphs_bruteforce(d);
        if (!std::ranges::equal(fast.masks(), slow.masks())) ++mismatches;
        const Oracle oracle(d);
        const auto counts = oracle.conditional_counts(0);
        const SymmetricProbMatrix w = oracle.edge_marginals();
        for (std::size_t j = 0; j < n; ++j) {
          std::uint64_t hits = 0;
          double row = 0.0;
          for (std::size_t k = 0; k < n; ++k) {
            if (k == j) continue;
            hits += counts.per_pair[pair_index(n, std::min(j, k), std::max(j, k))];
            row += w(j, k);
          }
          if (hits != static_cast<std::uint64_t>(d[j]) * counts.total) ++row_sum_failures;
          worst_float_row = std::max(worst_float_row, std::abs(row - d[j]));
        }
      }
      std::size_t i = 0;
      while (i < n && v[i] == top) v[i++] = 0;
      if (i == n) break;
      ++v[i];
    }
  }
  r.passed = mismatches == 0 && row_sum_failures == 0 && checked > 0;
  r.detail = "sequences=" + std::to_string(checked) + " enum_mismatch=" + std::to_string(mismatches) +
             " row_sum_fail=" + std::to_string(row_sum_failures) + " float_row_dev=" + num(worst_float_row);
  r.data = {{"sequences", checked}, {"enumeration_mismatches", mismatches},
            {"row_sum_failures", row_sum_failures}, {"worst_float_row_deviation", worst_float_row}};
  return finish(std::move(r), start, 120.0);
}

CriterionResult c8_heavy_tail(const VerifyOptions& o) {
  const auto start = Clock::now();
  CriterionResult r;
  r.id = "C8";
  const std::size_t n = 1000;
  // 3 ceil(ln n) = 21 exceeds ceil(n^0.4) = 16; base-10 log keeps d_min <= d_max.
  const auto d_min = static_cast<std::uint32_t>(3 * std::ceil(std::log10(static_cast<double>(n))));
  const auto d_max = static_cast<std::uint32_t>(std::ceil(std::pow(static_cast<double>(n), 0.4)));
  const GeneratedSequence gen = powerlaw_sequence(n, 2.5, d_min, d_max, criterion_seed(o, 8));
  const DegreeStats stats = degree_stats(gen.d);
  const double ratio = static_cast<double>(stats.j) / static_cast<double>(stats.sum);
  const CouplingSummary s = summarize_coupling(gen.d, 20, criterion_seed(o, 80), o.exec);
  const double f = static_cast<double>(s.fallbacks) / static_cast<double>(s.runs);
  r.passed = ratio < 0.3 && s.violations == 0;
  r.detail = "J/S=" + num(ratio) + " fallback=" + num(f) + " (reported only)";
  r.data = {{"d_min", d_min}, {"d_max", d_max}, {"j_over_sum", ratio}, {"fallback_fraction", f},
            {"violations", s.violations}, {"zeta", s.params.zeta}, {"zeta_prime", s.params.zeta_prime}};
  return finish(std::move(r), start, 300.0);
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> table = {
      {"C1", c1_seq_approx_law},     {"C2", c2_seq_sample_uniform}, {"C3", c3_checkpoint_law},
      {"C4", c4_coupling_small},     {"C5", c5_fallback_trend},     {"C6", c6_marginal_closeness},
      {"C7", c7_oracle_consistency}, {"C8", c8_heavy_tail},
  };
  return table;
}

std::vector<CriterionResult> run_criteria(const VerifyOptions& options, std::span<const std::string> ids) {
  for (const auto& id : ids) {
    if (std::ranges::none_of(criteria(), [&](const Criterion& c) { return c.id == id; })) {
      throw std::invalid_argument("unknown criterion " + id);
    }
  }
  std::vector<CriterionResult> out;
  for (const auto& c : criteria()) {
    if (!ids.empty() && std::ranges::find(ids, c.id) == ids.end()) continue;
    out.push_back(c.run(options));
  }
  return out;
}

void to_json(nlohmann::json& j, const CriterionResult& r) {
  j = {{"id", r.id}, {"passed", r.passed}, {"detail", r.detail}, {"seconds", r.seconds}, {"data", r.data}};
}

}  // namespace degseq::verify
