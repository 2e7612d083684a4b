#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "degseq/degree_sequence.hpp"
#include "degseq/graph.hpp"
#include "degseq/oracle.hpp"
#include "degseq/prob_matrix.hpp"
#include "degseq/random.hpp"

namespace degseq {

/// How conditional edge probabilities P(jk in G(n,d) | H) are obtained.
enum class SeqSampleMode {
  kExactOracle,  ///< exact, by enumeration; n <= oracle cap
  kAsymptotic,   ///< t_j t_k / (||t||_1 + t_j t_k); approximate
};

/// Unordered pair {j,k} with probability Q(d)_jk: two independent
/// degree-proportional vertex draws, rejecting equal ones.
class WeightedEdgeSampler {
 public:
  /// Throws DegenerateSequenceError with fewer than two positive degrees.
  explicit WeightedEdgeSampler(const DegreeSequence& d);
  Edge sample(RandomSource& rng) const;

 private:
  AliasTable vertices_;
};

Edge sample_weighted_edge(const DegreeSequence& d, RandomSource& rng);

/// Each pair included independently with probability W_jk.
SimpleGraph sample_gnw(const SymmetricProbMatrix& w, RandomSource& rng);

/// Poissonized sequential sampler. Output law is G(n, 1 - exp(-lambda Lambda.Q(d))).
SimpleGraph seq_approx_p(const DegreeSequence& d, double lambda, const SymmetricProbMatrix& big_lambda,
                         RandomSource& rng);
SimpleGraph seq_approx_p(const WeightedEdgeSampler& proposals, double lambda,
                         const SymmetricProbMatrix& big_lambda, RandomSource& rng);

struct SeqSampleResult {
  SimpleGraph graph;
  /// (m, G_m) for each requested checkpoint, in request order.
  std::vector<std::pair<std::size_t, SimpleGraph>> checkpoints;
  /// Asymptotic mode only: times the process got stuck and started over.
  std::size_t restarts = 0;
};

struct SeqSampleOptions {
  /// Reused when set (must be built for the same d); otherwise built on demand.
  const Oracle* oracle = nullptr;
  OracleOptions oracle_options;
  std::size_t max_restarts = 10'000;
};

/// Sequential G(n,d) construction, one edge per step for ||d||_1 / 2 steps.
/// Throws NotGraphicalError for non-graphical d, OracleCapError when the exact
/// mode exceeds the cap, std::out_of_range for checkpoints beyond ||d||_1 / 2.
SeqSampleResult seq_sample_d(const DegreeSequence& d, SeqSampleMode mode, RandomSource& rng,
                             std::span<const std::size_t> checkpoints = {},
                             const SeqSampleOptions& options = {});

}  // namespace degseq
