#include "degseq/samplers.hpp"

#include <algorithm>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "degseq/degree_process.hpp"
#include "degseq/errors.hpp"

namespace degseq {

namespace {

std::vector<double> as_weights(const DegreeSequence& d) {
  if (d.positive_count() < 2) {
    throw DegenerateSequenceError("need at least two positive degrees to propose pairs");
  }
  return {d.values().begin(), d.values().end()};
}

}  // namespace

WeightedEdgeSampler::WeightedEdgeSampler(const DegreeSequence& d) : vertices_(as_weights(d)) {}

Edge WeightedEdgeSampler::sample(RandomSource& rng) const {
  // P({j,k}) = 2 d_j d_k / (S^2 - sum d^2) = Q_jk after rejecting j == k.
  for (;;) {
    const auto j = static_cast<Vertex>(vertices_.sample(rng));
    const auto k = static_cast<Vertex>(vertices_.sample(rng));
    if (j != k) return Edge(j, k);
  }
}

Edge sample_weighted_edge(const DegreeSequence& d, RandomSource& rng) {
  return WeightedEdgeSampler(d).sample(rng);
}

SimpleGraph sample_gnw(const SymmetricProbMatrix& w, RandomSource& rng) {
  const std::size_t n = w.size();
  SimpleGraph g(n);
  const auto packed = w.packed();
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++idx) {
      if (rng.uniform() < packed[idx]) {
        g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
      }
    }
  }
  return g;
}

SimpleGraph seq_approx_p(const WeightedEdgeSampler& proposals, double lambda,
                         const SymmetricProbMatrix& big_lambda, RandomSource& rng) {
  const std::uint64_t steps = sample_poisson(lambda, rng);
  SimpleGraph g(big_lambda.size());
  for (std::uint64_t i = 0; i < steps; ++i) {
    const Edge e = proposals.sample(rng);
    if (rng.uniform() < big_lambda.at(e)) g.add_edge(e);
  }
  return g;
}

SimpleGraph seq_approx_p(const DegreeSequence& d, double lambda, const SymmetricProbMatrix& big_lambda,
                         RandomSource& rng) {
  if (big_lambda.size() != d.size()) throw std::invalid_argument("Lambda has the wrong dimension");
  if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be non-negative");
  return seq_approx_p(WeightedEdgeSampler(d), lambda, big_lambda, rng);
}

SeqSampleResult seq_sample_d(const DegreeSequence& d, SeqSampleMode mode, RandomSource& rng,
                             std::span<const std::size_t> checkpoints,
                             const SeqSampleOptions& options) {
  if (!is_graphical(d)) throw NotGraphicalError("degree sequence is not graphical");
  const std::size_t total_steps = d.sum() / 2;
  for (std::size_t m : checkpoints) {
    if (m > total_steps) {
      throw std::out_of_range("checkpoint " + std::to_string(m) + " exceeds ||d||_1/2 = " +
                              std::to_string(total_steps));
    }
  }

  std::unique_ptr<Oracle> owned;
  const Oracle* oracle = options.oracle;
  if (mode == SeqSampleMode::kExactOracle && oracle == nullptr) {
    owned = std::make_unique<Oracle>(d, options.oracle_options);
    oracle = owned.get();
  }

  SeqSampleResult result;
  DegreeProcess process(d);
  auto snapshot = [&] {
    for (std::size_t m : checkpoints) {
      if (m == process.num_edges()) result.checkpoints.emplace_back(m, process.graph());
    }
  };

  snapshot();
  while (!process.complete()) {
    if (mode == SeqSampleMode::kExactOracle) {
      process.insert(process.draw_exact(*oracle, rng));
    } else {
      const std::optional<Edge> next = process.draw_asymptotic(rng);
      if (!next) {
        if (++result.restarts > options.max_restarts) {
          throw std::runtime_error("asymptotic sampler exceeded its restart budget");
        }
        process.reset();
        result.checkpoints.clear();
        snapshot();
        continue;
      }
      process.insert(*next);
    }
    snapshot();
  }

  // Restore request order (snapshots arrive in m order).
  std::vector<std::pair<std::size_t, SimpleGraph>> ordered;
  ordered.reserve(checkpoints.size());
  for (std::size_t m : checkpoints) {
    auto it = std::find_if(result.checkpoints.begin(), result.checkpoints.end(),
                           [m](const auto& c) { return c.first == m; });
    ordered.push_back(*it);
  }
  result.checkpoints = std::move(ordered);
  result.graph = process.graph();
  return result;
}

}  // namespace degseq
