#include <gtest/gtest.h>

#include <stdexcept>
#include <vector>

#include "degseq/coupling.hpp"
#include "degseq/generators.hpp"
#include "degseq/kernels.hpp"
#include "degseq/parallel.hpp"
#include "degseq/samplers.hpp"

namespace degseq {
namespace {

TEST(MapReplicas, SerialAndParallelAgree) {
  auto draw = [](std::size_t r, RandomSource& rng) { return rng.next_u64() ^ r; };
  const auto serial = map_replicas(1000, 5, draw, Execution::kSerial);
  const auto parallel = map_replicas(1000, 5, draw, Execution::kParallel);
  EXPECT_EQ(serial, parallel);
  RandomSource third(5, 3);
  EXPECT_EQ(serial[3], third.next_u64() ^ 3U);
}

TEST(MapReplicas, RethrowsFirstError) {
  auto fn = [](std::size_t r, RandomSource&) -> int {
    if (r == 7) throw std::runtime_error("seven");
    if (r == 9) throw std::logic_error("nine");
    return 0;
  };
  for (auto exec : {Execution::kSerial, Execution::kParallel}) {
    try {
      map_replicas(20, 1, fn, exec);
      FAIL() << "no exception";
    } catch (const std::runtime_error& e) {
      EXPECT_STREQ(e.what(), "seven");
    }
  }
}

TEST(MapReplicas, CouplingRunsIdentical) {
  const auto d = regular_sequence(40, 6).d;
  const CouplingEngine engine(d, make_params(d, 0.1, 0.4, 0.2));
  auto run = [&](std::size_t, RandomSource& rng) { return engine.run(rng); };
  const auto a = map_replicas(24, 8, run, Execution::kSerial);
  const auto b = map_replicas(24, 8, run, Execution::kParallel);
  for (std::size_t r = 0; r < a.size(); ++r) {
    EXPECT_EQ(a[r].g, b[r].g);
    EXPECT_EQ(a[r].g_l, b[r].g_l);
    EXPECT_EQ(a[r].trace.fallback, b[r].trace.fallback);
    EXPECT_EQ(a[r].trace.steps_total, b[r].trace.steps_total);
  }
}

TEST(Kernels, MaxAsymptoticRhoMatchesScan) {
  const auto d = powerlaw_sequence(300, 2.5, 3, 20, 2).d;
  RandomSource rng(9, 0);
  const std::vector<std::size_t> at{d.sum() / 8, d.sum() / 4, d.sum() / 3};
  const auto run = seq_sample_d(d, SeqSampleMode::kAsymptotic, rng, at);
  for (const auto& [m, g] : run.checkpoints) {
    std::vector<std::uint32_t> t(d.size());
    std::uint64_t total = 0;
    for (std::size_t v = 0; v < d.size(); ++v) {
      t[v] = d[v] - static_cast<std::uint32_t>(g.degree(static_cast<Vertex>(v)));
      total += t[v];
    }
    // Reference: direct O(n^2) scan of the weight.
    double expected = 0.0;
    for (std::size_t a = 0; a < d.size(); ++a) {
      for (std::size_t b = a + 1; b < d.size(); ++b) {
        if (t[a] == 0 || t[b] == 0 || g.has_edge(static_cast<Vertex>(a), static_cast<Vertex>(b))) continue;
        const double tt = static_cast<double>(t[a]) * t[b];
        expected = std::max(expected, tt / (static_cast<double>(d[a]) * d[b] * (static_cast<double>(total) + tt)));
      }
    }
    const double serial = kernels::max_asymptotic_rho(d.values(), t, total, g, Execution::kSerial);
    const double parallel = kernels::max_asymptotic_rho(d.values(), t, total, g, Execution::kParallel);
    EXPECT_EQ(serial, expected) << "m=" << m;
    EXPECT_EQ(parallel, serial) << "m=" << m;
  }
}

TEST(Kernels, MaxAsymptoticRhoEmptyIsZero) {
  const std::vector<std::uint32_t> d{1, 1};
  const std::vector<std::uint32_t> t{0, 0};
  SimpleGraph g(2);
  g.add_edge(0, 1);
  EXPECT_EQ(kernels::max_asymptotic_rho(d, t, 0, g, Execution::kParallel), 0.0);
}

}  // namespace
}  // namespace degseq
