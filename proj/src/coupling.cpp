#include "degseq/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "degseq/degree_process.hpp"
#include "degseq/errors.hpp"
#include "degseq/kernels.hpp"

namespace degseq {

CouplingParams make_params(const DegreeSequence& d, double xi, double zeta, double zeta_prime) {
  for (double v : {xi, zeta, zeta_prime}) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("slack parameters must lie in [0,1]");
  }
  CouplingParams p;
  p.xi = xi;
  p.zeta = zeta;
  p.zeta_prime = zeta_prime;
  const double total = static_cast<double>(d.sum());
  p.lambda = (1.0 - zeta_prime) * total / 2.0;
  p.big_lambda = SymmetricProbMatrix::from_function(d.size(), [&](std::size_t j, std::size_t k) {
    if (total == 0.0) return 0.0;
    const double prod = static_cast<double>(d[j]) * static_cast<double>(d[k]);
    return (1.0 - zeta) * total / (total + prod);
  });
  const DegreeStats stats = degree_stats(d);
  p.outside_hypothesis = stats.j >= stats.sum;
  if (p.outside_hypothesis) p.warnings.emplace_back("J(d) >= ||d||_1: outside the schedule's regime");
  return p;
}

CouplingParams default_params(const DegreeSequence& d, const ScheduleConstants& c) {
  const DegreeStats stats = degree_stats(d);
  if (stats.min == 0) {
    throw std::domain_error("schedule undefined: minimum degree is zero");
  }
  const double total = static_cast<double>(stats.sum);
  const double j_ratio = static_cast<double>(stats.j) / total;
  std::vector<std::string> warnings;

  double zeta_prime = std::max(std::pow(total, -c.zeta_prime_sum_exponent),
                               std::pow(j_ratio, c.zeta_prime_j_exponent));
  if (zeta_prime > c.zeta_prime_max) {
    zeta_prime = c.zeta_prime_max;
    warnings.emplace_back("zeta' clamped");
  }
  const double log_n = std::log(static_cast<double>(d.size()));
  double xi = std::pow(log_n / (zeta_prime * stats.min), c.xi_exponent);
  if (xi > c.xi_max) {
    xi = c.xi_max;
    warnings.emplace_back("xi clamped");
  }
  double zeta = c.zeta_c * (j_ratio / zeta_prime + xi);
  if (zeta > c.zeta_max) {
    zeta = c.zeta_max;
    warnings.emplace_back("zeta clamped");
  }

  CouplingParams p = make_params(d, xi, zeta, zeta_prime);
  p.warnings.insert(p.warnings.end(), warnings.begin(), warnings.end());
  return p;
}

CouplingParams resolve_params(const DegreeSequence& d, const ParamOverrides& o) {
  if (o.xi && o.zeta && o.zeta_prime) {
    return make_params(d, *o.xi, *o.zeta, *o.zeta_prime);
  }
  const CouplingParams base = default_params(d, o.constants);
  CouplingParams p = make_params(d, o.xi.value_or(base.xi), o.zeta.value_or(base.zeta),
                                 o.zeta_prime.value_or(base.zeta_prime));
  for (const auto& w : base.warnings) {
    if (std::find(p.warnings.begin(), p.warnings.end(), w) == p.warnings.end()) p.warnings.push_back(w);
  }
  return p;
}

namespace {

// Read-only view of a partial graph and its remaining degrees.
struct StepView {
  const DegreeSequence& d;
  std::span<const std::uint32_t> t;
  std::uint64_t t_total;
  const SimpleGraph& g;
};

double asymptotic_rho(const StepView& s, Edge e) {
  const double prod = static_cast<double>(s.t[e.u]) * static_cast<double>(s.t[e.v]);
  if (prod == 0.0) return 0.0;
  const double dd = static_cast<double>(s.d[e.u]) * static_cast<double>(s.d[e.v]);
  return prod / (dd * (static_cast<double>(s.t_total) + prod));
}

double oracle_rho(const StepView& s, const Oracle::ConditionalCounts& counts, Edge e) {
  const std::size_t p = pair_index(s.d.size(), e.u, e.v);
  const double dd = static_cast<double>(s.d[e.u]) * static_cast<double>(s.d[e.v]);
  return static_cast<double>(counts.per_pair[p]) / (static_cast<double>(counts.total) * dd);
}

bool has_eligible_pair(const StepView& s) {
  std::size_t active = 0;
  for (auto x : s.t) active += x > 0 ? 1 : 0;
  return active >= 2;
}

double certified_bound(const StepView& s, SeqSampleMode prob_mode) {
  if (prob_mode == SeqSampleMode::kAsymptotic) {
    // rho = t_h t_l / (d_h d_l (T + t_h t_l)) <= (t_h/d_h)(t_l/d_l) / T.
    double best = 0.0;
    for (std::size_t h = 0; h < s.t.size(); ++h) {
      if (s.t[h] > 0) best = std::max(best, static_cast<double>(s.t[h]) / s.d[h]);
    }
    return best * best / static_cast<double>(s.t_total);
  }
  // Conditional probabilities are at most 1 and vanish unless both ends are
  // unsaturated, so rho <= 1/(d_h d_l) over active pairs.
  std::uint32_t lo1 = std::numeric_limits<std::uint32_t>::max();
  std::uint32_t lo2 = lo1;
  for (std::size_t h = 0; h < s.t.size(); ++h) {
    if (s.t[h] == 0) continue;
    if (s.d[h] < lo1) {
      lo2 = lo1;
      lo1 = s.d[h];
    } else if (s.d[h] < lo2) {
      lo2 = s.d[h];
    }
  }
  return 1.0 / (static_cast<double>(lo1) * static_cast<double>(lo2));
}

double oracle_exact_max(const StepView& s, const Oracle::ConditionalCounts& counts) {
  double best = 0.0;
  const std::size_t n = s.d.size();
  for (std::size_t p = 0; p < counts.per_pair.size(); ++p) {
    const Edge e = pair_at(n, p);
    if (s.d[e.u] == 0 || s.d[e.v] == 0 || s.g.has_edge(e)) continue;
    best = std::max(best, oracle_rho(s, counts, e));
  }
  return best;
}

std::unique_ptr<Oracle> maybe_oracle(const DegreeSequence& d, const OracleOptions& options) {
  return std::make_unique<Oracle>(d, options);
}

}  // namespace

double rho(const DegreeSequence& d, const SimpleGraph& state, Edge jk, SeqSampleMode mode,
           const Oracle* oracle) {
  if (state.has_edge(jk)) throw std::invalid_argument("rho: edge already in the state");
  if (d[jk.u] == 0 || d[jk.v] == 0) throw std::invalid_argument("rho: endpoint with zero degree");
  const RemainingDegrees rem = remaining_degrees(d, state);
  const StepView view{d, rem.t.values(), rem.t.sum(), state};
  if (mode == SeqSampleMode::kAsymptotic) return asymptotic_rho(view, jk);
  std::unique_ptr<Oracle> owned;
  if (oracle == nullptr) {
    owned = maybe_oracle(d, {});
    oracle = owned.get();
  }
  const auto counts = oracle->conditional_counts(to_mask(state));
  if (counts.total == 0) throw EmptyConditioningError("no graph with degree d contains the state");
  return oracle_rho(view, counts, jk);
}

double eta_denominator(const DegreeSequence& d, const SimpleGraph& state, EtaDenominatorMode mode,
                       SeqSampleMode prob_mode, const Oracle* oracle, Execution exec) {
  const RemainingDegrees rem = remaining_degrees(d, state);
  const StepView view{d, rem.t.values(), rem.t.sum(), state};
  if (!has_eligible_pair(view)) throw std::domain_error("eta denominator: no eligible pair");
  if (mode == EtaDenominatorMode::kCertifiedBound) return certified_bound(view, prob_mode);
  if (prob_mode == SeqSampleMode::kAsymptotic) {
    const double best = kernels::max_asymptotic_rho(d.values(), view.t, view.t_total, state, exec);
    if (best <= 0.0) throw std::domain_error("eta denominator: no eligible pair");
    return best;
  }
  std::unique_ptr<Oracle> owned;
  if (oracle == nullptr) {
    owned = maybe_oracle(d, {});
    oracle = owned.get();
  }
  const auto counts = oracle->conditional_counts(to_mask(state));
  if (counts.total == 0) throw EmptyConditioningError("no graph with degree d contains the state");
  return oracle_exact_max(view, counts);
}

CouplingEngine::CouplingEngine(const DegreeSequence& d, CouplingParams params,
                               CouplingOptions options)
    : d_(d), params_(std::move(params)), options_(options), proposals_(d) {
  if (!is_graphical(d)) throw NotGraphicalError("degree sequence is not graphical");
  if (params_.big_lambda.size() != d.size()) {
    throw std::invalid_argument("coupling params built for a different vertex count");
  }
  oracle_ = options_.oracle;
  if (oracle_ == nullptr) {
    if (options_.prob_mode == SeqSampleMode::kExactOracle) {
      owned_oracle_ = std::make_unique<Oracle>(d, options_.oracle_options);
    } else if (d.size() <= std::min(options_.oracle_options.max_vertices, kMaskVertexLimit)) {
      try {
        owned_oracle_ = std::make_unique<Oracle>(d, options_.oracle_options);
      } catch (const OracleCapError&) {
        // Family too large; IndSample falls back to the asymptotic sampler.
      }
    }
    oracle_ = owned_oracle_.get();
  }
}

CouplingEngine::~CouplingEngine() = default;
CouplingEngine::CouplingEngine(CouplingEngine&&) noexcept = default;

std::pair<SimpleGraph, SimpleGraph> CouplingEngine::ind_sample(RandomSource& rng, bool* approximate,
                                                               std::size_t* restarts) const {
  SimpleGraph g;
  if (oracle_ != nullptr) {
    g = oracle_->uniform_sample(rng);
    if (approximate) *approximate = false;
  } else {
    SeqSampleResult r = seq_sample_d(d_, SeqSampleMode::kAsymptotic, rng);
    g = std::move(r.graph);
    if (approximate) *approximate = true;
    if (restarts) *restarts += r.restarts;
  }
  SimpleGraph g_l = seq_approx_p(proposals_, params_.lambda, params_.big_lambda, rng);
  return {std::move(g_l), std::move(g)};
}

CouplingResult CouplingEngine::run(RandomSource& rng) const {
  const bool exact = options_.prob_mode == SeqSampleMode::kExactOracle;
  CouplingResult out;
  CouplingTrace& trace = out.trace;
  DegreeProcess process(d_);
  SimpleGraph l(d_.size());

  auto fall_back = [&](std::uint64_t step, const char* reason) {
    trace.fallback = true;
    trace.fallback_step = step;
    trace.fallback_reason = reason;
    auto [g_l, g] = ind_sample(rng, &trace.g_approximate, &trace.restarts);
    out.g_l = std::move(g_l);
    out.g = std::move(g);
    return out;
  };

  const std::uint64_t steps = sample_poisson(params_.lambda, rng);
  trace.poisson_steps = steps;
  const std::uint64_t stride = std::max<std::uint64_t>(1, steps / std::max<std::size_t>(1, options_.p_m_samples));

  for (std::uint64_t i = 1; i <= steps; ++i) {
    ++trace.steps_total;
    const Edge e = proposals_.sample(rng);
    // One uniform per step drives every branch, so G's trajectory does not
    // depend on Lambda for a fixed stream.
    const double u = rng.uniform();
    const double accept_l = params_.big_lambda.at(e);

    if (process.graph().has_edge(e)) {
      ++trace.duplicate_hits;
      if (u < accept_l) l.add_edge(e);
    } else {
      const StepView view{d_, process.remaining(), process.remaining_total(), process.graph()};
      double candidate = 0.0;
      double denom = 0.0;
      if (exact) {
        const auto counts = oracle_->conditional_counts(process.mask());
        candidate = oracle_rho(view, counts, e);
        denom = options_.denom_mode == EtaDenominatorMode::kExactMax
                    ? oracle_exact_max(view, counts)
                    : certified_bound(view, SeqSampleMode::kExactOracle);
      } else {
        candidate = asymptotic_rho(view, e);
        denom = options_.denom_mode == EtaDenominatorMode::kExactMax
                    ? kernels::max_asymptotic_rho(d_.values(), view.t, view.t_total, view.g,
                                                  options_.scan_exec)
                    : (has_eligible_pair(view) ? certified_bound(view, SeqSampleMode::kAsymptotic)
                                               : 0.0);
      }
      const double eta = denom > 0.0 ? std::min(1.0, candidate / denom) : 0.0;
      trace.eta_min = std::min(trace.eta_min, eta);
      if (eta < accept_l) return fall_back(i, "eta_below_lambda");

      // Branch table: (Lambda, eta - Lambda, 1 - eta).
      if (u < accept_l) {
        process.insert(e);
        l.add_edge(e);
        ++trace.g_insertions;
      } else if (u < eta) {
        process.insert(e);
        ++trace.g_insertions;
        ++trace.rejections_l_only;
      } else {
        ++trace.rejections_g;
      }
    }
    if (l.has_edge(e) && !process.graph().has_edge(e)) {
      throw std::logic_error("containment violated during coupling step");
    }
    if (i % stride == 0 || i == steps) trace.p_m_checkpoints.emplace_back(i, process.p_m());
  }

  while (!process.complete()) {
    if (exact) {
      process.insert(process.draw_exact(*oracle_, rng));
    } else {
      const std::optional<Edge> next = process.draw_asymptotic(rng);
      if (!next) return fall_back(steps, "completion_stuck");
      process.insert(*next);
    }
    ++trace.steps_total;
  }

  out.g_l = std::move(l);
  out.g = process.graph();
  return out;
}

CouplingResult run_coupling(const DegreeSequence& d, const CouplingParams& params,
                            SeqSampleMode prob_mode, EtaDenominatorMode denom_mode,
                            RandomSource& rng) {
  CouplingOptions options;
  options.prob_mode = prob_mode;
  options.denom_mode = denom_mode;
  return CouplingEngine(d, params, options).run(rng);
}

std::pair<SimpleGraph, SimpleGraph> ind_sample(const DegreeSequence& d, const CouplingParams& params,
                                               RandomSource& rng) {
  return CouplingEngine(d, params, {}).ind_sample(rng);
}

}  // namespace degseq
