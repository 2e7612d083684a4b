#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "degseq/coupling.hpp"
#include "degseq/errors.hpp"
#include "degseq/generators.hpp"
#include "degseq/stats.hpp"

namespace degseq {
namespace {

SimpleGraph graph_of(std::size_t n, std::initializer_list<Edge> edges) {
  const std::vector<Edge> list(edges);
  return SimpleGraph::from_edges(n, list);
}

void expect_param_equations(const DegreeSequence& d, const CouplingParams& p) {
  const auto s = static_cast<double>(d.sum());
  EXPECT_DOUBLE_EQ(p.lambda, (1.0 - p.zeta_prime) * s / 2.0);
  for (std::size_t j = 0; j < d.size(); ++j) {
    for (std::size_t k = j + 1; k < d.size(); ++k) {
      EXPECT_DOUBLE_EQ(p.big_lambda(j, k), (1.0 - p.zeta) * s / (s + static_cast<double>(d[j]) * d[k]));
    }
  }
}

TEST(DefaultParams, RegularScheduleValues) {
  const auto d = regular_sequence(2000, 50).d;
  const auto p = default_params(d);
  EXPECT_NEAR(p.zeta_prime, std::sqrt(2500.0 / 100000.0), 1e-15);
  EXPECT_NEAR(p.zeta_prime, 0.1581, 5e-5);
  // xi = (ln 2000 / (0.1581 * 50))^(1/3) = 0.987, clamped to 0.5; zeta then clamps to 0.5.
  EXPECT_DOUBLE_EQ(p.xi, 0.5);
  EXPECT_DOUBLE_EQ(p.zeta, 0.5);
  EXPECT_FALSE(p.outside_hypothesis);
  EXPECT_FALSE(p.warnings.empty());
  EXPECT_DOUBLE_EQ(p.lambda, (1.0 - p.zeta_prime) * 50000.0);
}

TEST(DefaultParams, LooserXiCap) {
  const auto d = regular_sequence(2000, 50).d;
  ScheduleConstants k;
  k.xi_max = 1.0;
  const auto p = default_params(d, k);
  const double zp = std::sqrt(0.025);
  EXPECT_NEAR(p.xi, std::cbrt(std::log(2000.0) / (zp * 50.0)), 1e-12);
  EXPECT_NEAR(p.xi, 0.98698, 1e-5);
  EXPECT_DOUBLE_EQ(p.zeta, 0.5);
}

TEST(DefaultParams, EquationsHold) {
  for (const DegreeSequence& d : {DegreeSequence{2, 2, 2}, DegreeSequence{3, 2, 2, 2, 1},
                                  powerlaw_sequence(300, 2.5, 3, 12, 4).d}) {
    expect_param_equations(d, default_params(d));
  }
  expect_param_equations({2, 2, 2, 2}, make_params({2, 2, 2, 2}, 0.1, 0.3, 0.2));
}

TEST(DefaultParams, SmallSequenceWarns) {
  const auto p = default_params({2, 2, 2});
  EXPECT_FALSE(p.warnings.empty());
  // J = 4 < S = 6. J >= S needs at most max-degree many positive entries.
  EXPECT_FALSE(p.outside_hypothesis);
  EXPECT_TRUE(make_params({3, 1, 1}, 0.1, 0.1, 0.1).outside_hypothesis);
  EXPECT_GT(p.lambda, 0.0);
}

TEST(DefaultParams, ZeroMinimumDegree) {
  EXPECT_THROW(default_params({2, 2, 2, 0}), std::domain_error);
  ParamOverrides all;
  all.xi = 0.1;
  all.zeta = 0.1;
  all.zeta_prime = 0.1;
  EXPECT_NO_THROW(resolve_params({2, 2, 2, 0}, all));
  ParamOverrides some;
  some.zeta = 0.2;
  const auto p = resolve_params({3, 2, 2, 2, 1}, some);
  EXPECT_DOUBLE_EQ(p.zeta, 0.2);
  EXPECT_DOUBLE_EQ(p.zeta_prime, default_params({3, 2, 2, 2, 1}).zeta_prime);
}

TEST(MakeParams, RejectsOutOfRange) {
  EXPECT_THROW(make_params({2, 2, 2}, 0.1, 1.5, 0.1), std::invalid_argument);
  EXPECT_THROW(make_params({2, 2, 2}, 0.1, 0.1, -0.1), std::invalid_argument);
}

TEST(Rho, Examples) {
  EXPECT_DOUBLE_EQ(rho({1, 1, 1, 1}, graph_of(4, {{0, 1}}), Edge(2, 3), SeqSampleMode::kExactOracle), 1.0);
  EXPECT_DOUBLE_EQ(rho({2, 2, 2, 2}, SimpleGraph(4), Edge(0, 2), SeqSampleMode::kExactOracle), 1.0 / 6.0);
  EXPECT_DOUBLE_EQ(rho({2, 2, 2, 2}, SimpleGraph(4), Edge(0, 2), SeqSampleMode::kAsymptotic), 1.0 / 12.0);
  // Vertex 0 still needs three neighbours but 1 and 2 are saturated.
  EXPECT_THROW(rho({3, 1, 1, 1}, graph_of(4, {{1, 2}}), Edge(0, 3), SeqSampleMode::kExactOracle),
               EmptyConditioningError);
  EXPECT_THROW(rho({1, 1, 1, 1}, graph_of(4, {{0, 1}, {0, 2}}), Edge(1, 3), SeqSampleMode::kExactOracle),
               std::invalid_argument);
}

TEST(EtaDenominator, Examples) {
  const DegreeSequence d{2, 2, 2, 2};
  const SimpleGraph empty(4);
  EXPECT_DOUBLE_EQ(
      eta_denominator(d, empty, EtaDenominatorMode::kCertifiedBound, SeqSampleMode::kAsymptotic), 1.0 / 8.0);
  EXPECT_DOUBLE_EQ(eta_denominator(d, empty, EtaDenominatorMode::kExactMax, SeqSampleMode::kAsymptotic),
                   1.0 / 12.0);
  EXPECT_DOUBLE_EQ(eta_denominator(d, empty, EtaDenominatorMode::kExactMax, SeqSampleMode::kExactOracle),
                   1.0 / 6.0);
  EXPECT_DOUBLE_EQ(
      eta_denominator(d, empty, EtaDenominatorMode::kCertifiedBound, SeqSampleMode::kExactOracle), 1.0 / 4.0);

  const auto reg = regular_sequence(9, 4).d;
  EXPECT_DOUBLE_EQ(eta_denominator(reg, SimpleGraph(9), EtaDenominatorMode::kExactMax, SeqSampleMode::kAsymptotic),
                   rho(reg, SimpleGraph(9), Edge(3, 7), SeqSampleMode::kAsymptotic));
}

TEST(EtaDenominator, NoEligiblePair) {
  const auto cycle = graph_of(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  EXPECT_THROW(
      eta_denominator({2, 2, 2, 2}, cycle, EtaDenominatorMode::kExactMax, SeqSampleMode::kAsymptotic),
      std::domain_error);
}

TEST(EtaDenominator, ExactMaxBelowCertifiedOnRandomStates) {
  RandomSource rng(21, 0);
  for (const DegreeSequence& d : {DegreeSequence{3, 3, 2, 2, 2, 1, 1}, DegreeSequence{4, 3, 3, 3, 2, 2, 1},
                                  DegreeSequence{2, 2, 2, 2, 2, 2, 2, 2}}) {
    const Oracle oracle(d);
    SeqSampleOptions options;
    options.oracle = &oracle;
    const std::size_t edges = d.sum() / 2;
    for (int trial = 0; trial < 40; ++trial) {
      const std::vector<std::size_t> at{rng.uniform_below(edges)};
      const auto state = seq_sample_d(d, SeqSampleMode::kExactOracle, rng, at, options).checkpoints[0].second;
      for (auto mode : {SeqSampleMode::kAsymptotic, SeqSampleMode::kExactOracle}) {
        const double exact = eta_denominator(d, state, EtaDenominatorMode::kExactMax, mode, &oracle);
        const double bound = eta_denominator(d, state, EtaDenominatorMode::kCertifiedBound, mode, &oracle);
        EXPECT_LE(exact, bound * (1.0 + 1e-12));
        for (std::size_t p = 0; p < pair_count(d.size()); ++p) {
          const Edge e = pair_at(d.size(), p);
          if (state.has_edge(e)) continue;
          EXPECT_LE(rho(d, state, e, mode, &oracle), exact * (1.0 + 1e-12));
        }
      }
    }
  }
}

CouplingParams c4_params() { return make_params({2, 2, 2, 2}, 0.1, 0.1, 0.1); }

CouplingOptions exact_options() {
  CouplingOptions o;
  o.prob_mode = SeqSampleMode::kExactOracle;
  o.denom_mode = EtaDenominatorMode::kExactMax;
  return o;
}

void expect_trace_consistent(const CouplingResult& r) {
  const auto& t = r.trace;
  EXPECT_GE(t.eta_min, 0.0);
  EXPECT_LE(t.eta_min, 1.0);
  if (t.fallback) {
    ASSERT_TRUE(t.fallback_step.has_value());
    EXPECT_LE(*t.fallback_step, t.poisson_steps);
    return;
  }
  EXPECT_EQ(t.rejections_g + t.g_insertions + t.duplicate_hits, t.poisson_steps);
  EXPECT_LE(t.rejections_l_only, t.g_insertions);
  EXPECT_TRUE(r.g_l.is_subgraph_of(r.g));
}

TEST(Coupling, FrozenExactLawOnFourCycles) {
  // Exact law of the procedure (d = (2,2,2,2), zeta = zeta' = 0.1, exact oracle
  // + exact max) from a dynamic program over (G, L) states mixed over I:
  // every G_L edge marginal is 0.267780974842 and P(fallback) = 0.70928171325.
  const DegreeSequence d{2, 2, 2, 2};
  const CouplingEngine engine(d, c4_params(), exact_options());
  const std::size_t runs = 40'000;
  const auto results = map_replicas(runs, 404, [&](std::size_t, RandomSource& rng) { return engine.run(rng); });

  std::vector<std::uint64_t> counts(6, 0);
  std::size_t fallbacks = 0;
  std::vector<SimpleGraph> gs;
  for (const auto& r : results) {
    ASSERT_EQ(DegreeSequence(r.g.degrees()), d);
    for (const Edge& e : r.g_l.edges()) ++counts[pair_index(4, e.u, e.v)];
    fallbacks += r.trace.fallback ? 1 : 0;
    gs.push_back(r.g);
    expect_trace_consistent(r);
  }
  const SymmetricProbMatrix frozen(4, 0.267780974842);
  const auto marginals = marginals_from_counts(4, counts, runs, frozen);
  EXPECT_TRUE(marginals.passed()) << marginals.worst_abs_z;

  const double pf = 0.70928171325;
  const double z = (static_cast<double>(fallbacks) / runs - pf) / std::sqrt(pf * (1 - pf) / runs);
  EXPECT_LT(std::abs(z), kThresholds.z_max) << fallbacks;

  std::map<SimpleGraph, double> uniform;
  for (const auto& g : engine.oracle()->family().members()) uniform[g] = 1.0 / 3.0;
  EXPECT_GT(chi_square_gof(gs, uniform).p_value, kThresholds.p_min);
}

TEST(Coupling, ZeroLambdaMatrixGivesEmptyGl) {
  const DegreeSequence d{3, 3, 2, 2, 1, 1};
  const auto params = make_params(d, 0.1, 1.0, 0.1);
  const CouplingEngine engine(d, params, exact_options());
  std::vector<SimpleGraph> gs;
  for (std::size_t r = 0; r < 3000; ++r) {
    RandomSource rng(31, r);
    const auto out = engine.run(rng);
    EXPECT_EQ(out.g_l.num_edges(), 0u);
    EXPECT_FALSE(out.trace.fallback);
    EXPECT_EQ(DegreeSequence(out.g.degrees()), d);
    gs.push_back(out.g);
  }
  std::map<SimpleGraph, double> uniform;
  const auto& family = engine.oracle()->family();
  for (const auto& g : family.members()) uniform[g] = 1.0 / static_cast<double>(family.size());
  EXPECT_GT(chi_square_gof(gs, uniform).p_value, kThresholds.p_min);
}

TEST(Coupling, ContainmentAndTraceAcrossModes) {
  struct Case {
    DegreeSequence d;
    CouplingOptions options;
    CouplingParams params;
  };
  std::vector<Case> cases;
  cases.push_back({{2, 2, 2, 2}, exact_options(), make_params({2, 2, 2, 2}, 0.1, 0.8, 0.1)});
  CouplingOptions cert = exact_options();
  cert.denom_mode = EtaDenominatorMode::kCertifiedBound;
  cases.push_back({{3, 3, 2, 2, 2, 1, 1}, cert, make_params({3, 3, 2, 2, 2, 1, 1}, 0.1, 0.9, 0.2)});
  const auto reg = regular_sequence(60, 6).d;
  cases.push_back({reg, CouplingOptions{}, make_params(reg, 0.1, 0.8, 0.5)});
  CouplingOptions asym_max;
  asym_max.denom_mode = EtaDenominatorMode::kExactMax;
  cases.push_back({reg, asym_max, make_params(reg, 0.1, 0.8, 0.5)});

  for (const auto& c : cases) {
    const CouplingEngine engine(c.d, c.params, c.options);
    std::size_t clean = 0;
    for (std::size_t r = 0; r < 300; ++r) {
      RandomSource rng(32, r);
      const auto out = engine.run(rng);
      EXPECT_EQ(DegreeSequence(out.g.degrees()), c.d);
      expect_trace_consistent(out);
      clean += out.trace.fallback ? 0 : 1;
    }
    EXPECT_GT(clean, 0u);
  }
}

TEST(Coupling, FallbackMonotoneInZeta) {
  const auto d = regular_sequence(40, 6).d;
  const std::vector<double> zetas{0.05, 0.2, 0.4, 0.6, 0.8};
  std::vector<CouplingEngine> engines;
  for (double z : zetas) engines.emplace_back(d, make_params(d, 0.1, z, 0.2));
  std::vector<std::size_t> totals(zetas.size(), 0);
  for (std::size_t r = 0; r < 200; ++r) {
    bool previous = true;
    for (std::size_t k = 0; k < engines.size(); ++k) {
      RandomSource rng(33, r);
      const bool fell = engines[k].run(rng).trace.fallback;
      EXPECT_LE(fell, previous) << "stream " << r << " zeta " << zetas[k];
      previous = fell;
      totals[k] += fell ? 1 : 0;
    }
  }
  EXPECT_GT(totals.front(), totals.back());
}

TEST(Coupling, Deterministic) {
  const auto d = regular_sequence(30, 4).d;
  const CouplingEngine engine(d, make_params(d, 0.1, 0.5, 0.2));
  RandomSource a(34, 5);
  RandomSource b(34, 5);
  const auto ra = engine.run(a);
  const auto rb = engine.run(b);
  EXPECT_EQ(ra.g, rb.g);
  EXPECT_EQ(ra.g_l, rb.g_l);
  EXPECT_EQ(ra.trace.poisson_steps, rb.trace.poisson_steps);
  EXPECT_EQ(ra.trace.fallback, rb.trace.fallback);
}

TEST(Coupling, EngineErrors) {
  EXPECT_THROW(CouplingEngine({3, 3, 1, 1}, make_params({3, 3, 1, 1}, 0.1, 0.1, 0.1)), NotGraphicalError);
  EXPECT_THROW(CouplingEngine({2, 2, 2, 2}, make_params({2, 2, 2}, 0.1, 0.1, 0.1)), std::invalid_argument);
  const auto big = regular_sequence(14, 2).d;
  EXPECT_THROW(CouplingEngine(big, make_params(big, 0.1, 0.1, 0.1), exact_options()), OracleCapError);
}

TEST(IndSample, MarginalsAndDegrees) {
  const DegreeSequence d{2, 2, 2, 2};
  const auto params = c4_params();
  const CouplingEngine engine(d, params, exact_options());
  const std::size_t runs = 100'000;
  const auto pairs = map_replicas(runs, 35, [&](std::size_t, RandomSource& rng) { return engine.ind_sample(rng); });
  std::vector<SimpleGraph> gl;
  gl.reserve(runs);
  bool some_not_contained = false;
  for (const auto& [l, g] : pairs) {
    ASSERT_EQ(DegreeSequence(g.degrees()), d);
    some_not_contained |= !l.is_subgraph_of(g);
    gl.push_back(l);
  }
  EXPECT_TRUE(some_not_contained);
  const auto reference = f_c_transform(hadamard(params.big_lambda, q_matrix(d)), params.lambda);
  // 1 - exp(-3.6 * 0.6 / 6) = 0.302323673929...
  EXPECT_NEAR(reference(0, 1), 0.302323673929, 1e-12);
  EXPECT_LT(empirical_marginals(gl, reference).worst_abs_z, 3.0);
}

TEST(IndSample, AsymptoticGraphAboveCap) {
  const auto d = regular_sequence(50, 4).d;
  const CouplingEngine engine(d, make_params(d, 0.1, 0.3, 0.2));
  RandomSource rng(36, 0);
  bool approximate = false;
  const auto [l, g] = engine.ind_sample(rng, &approximate);
  EXPECT_TRUE(approximate);
  EXPECT_EQ(DegreeSequence(g.degrees()), d);
  EXPECT_EQ(l.num_vertices(), 50u);
}

}  // namespace
}  // namespace degseq
