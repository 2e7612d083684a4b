#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "degseq/degree_sequence.hpp"
#include "degseq/graph.hpp"
#include "degseq/oracle.hpp"
#include "degseq/parallel.hpp"
#include "degseq/prob_matrix.hpp"
#include "degseq/random.hpp"
#include "degseq/samplers.hpp"

namespace degseq {

/// How the per-step normalizer max_{hl not in G} rho(hl) is obtained.
enum class EtaDenominatorMode {
  kExactMax,        ///< scan every non-edge
  kCertifiedBound,  ///< closed-form upper bound B >= max rho
};

/// Finite-n constants for the vanishing slack parameters. The asymptotic
/// conditions only fix orders of growth; these pick one concrete schedule:
///   zeta'  = max(S^-a, (J/S)^b)            capped at zeta_prime_max
///   xi     = (log n / (zeta' delta))^c      clamped to (0, xi_max]
///   zeta   = min(zeta_max, C (J/(zeta' S) + xi))
struct ScheduleConstants {
  double zeta_prime_sum_exponent = 0.25;
  double zeta_prime_j_exponent = 0.5;
  double zeta_prime_max = 0.99;
  double xi_exponent = 1.0 / 3.0;
  double xi_max = 0.5;
  double zeta_c = 3.0;
  double zeta_max = 0.5;
};

struct CouplingParams {
  double xi = 0.0;
  double zeta = 0.0;
  double zeta_prime = 0.0;
  /// (1 - zeta') ||d||_1 / 2
  double lambda = 0.0;
  /// Lambda_jk = (1 - zeta) ||d||_1 / (||d||_1 + d_j d_k)
  SymmetricProbMatrix big_lambda;
  /// J(d) >= ||d||_1: outside the regime where the schedule is meaningful.
  bool outside_hypothesis = false;
  std::vector<std::string> warnings;
};

/// lambda and Lambda from explicit slack values.
CouplingParams make_params(const DegreeSequence& d, double xi, double zeta, double zeta_prime);

/// Concrete schedule. Throws std::domain_error when the minimum degree is zero.
CouplingParams default_params(const DegreeSequence& d, const ScheduleConstants& constants = {});

struct ParamOverrides {
  std::optional<double> xi;
  std::optional<double> zeta;
  std::optional<double> zeta_prime;
  ScheduleConstants constants;
};

/// default_params with any explicitly given slack replaced. When every
/// override is present the schedule is not evaluated (so delta(d) = 0 is allowed).
CouplingParams resolve_params(const DegreeSequence& d, const ParamOverrides& overrides);

/// (d_j d_k)^-1 P(jk in G(n,d) | state). The oracle is consulted in exact mode
/// (built on demand when null).
double rho(const DegreeSequence& d, const SimpleGraph& state, Edge jk, SeqSampleMode mode,
           const Oracle* oracle = nullptr);

/// Normalizer for eta. kExactMax returns the true maximum of rho over non-edges;
/// kCertifiedBound returns (max_h t_h/d_h)^2 / ||t||_1 in asymptotic mode and
/// 1 / (d_a d_b) over the two smallest degrees with t >= 1 in exact mode. Throws
/// std::domain_error when no non-edge has positive remaining degree at both ends.
double eta_denominator(const DegreeSequence& d, const SimpleGraph& state, EtaDenominatorMode mode,
                       SeqSampleMode prob_mode, const Oracle* oracle = nullptr,
                       Execution exec = Execution::kSerial);

struct CouplingTrace {
  /// Poisson step budget I.
  std::uint64_t poisson_steps = 0;
  bool fallback = false;
  std::optional<std::uint64_t> fallback_step;
  /// "eta_below_lambda" or "completion_stuck" when fallback is set.
  std::string fallback_reason;
  /// Loop steps executed plus completion insertions.
  std::uint64_t steps_total = 0;
  /// Smallest eta seen on a non-duplicate step (1 if none).
  double eta_min = 1.0;
  /// Non-duplicate steps where G rejected the candidate.
  std::uint64_t rejections_g = 0;
  /// Non-duplicate steps where G accepted and L rejected.
  std::uint64_t rejections_l_only = 0;
  /// Steps whose candidate was already in G.
  std::uint64_t duplicate_hits = 0;
  /// Edges inserted into G during the Poisson loop.
  std::uint64_t g_insertions = 0;
  /// (step, p_m) samples through the Poisson loop.
  std::vector<std::pair<std::uint64_t, double>> p_m_checkpoints;
  /// G came from an approximate sampler (fallback at n above the oracle cap).
  bool g_approximate = false;
  std::size_t restarts = 0;
};

struct CouplingResult {
  SimpleGraph g_l;
  SimpleGraph g;
  CouplingTrace trace;
};

struct CouplingOptions {
  SeqSampleMode prob_mode = SeqSampleMode::kAsymptotic;
  EtaDenominatorMode denom_mode = EtaDenominatorMode::kCertifiedBound;
  /// Borrowed oracle for d; built internally when null and n is within the cap.
  const Oracle* oracle = nullptr;
  OracleOptions oracle_options;
  /// Execution of the O(n^2) exact-max scan (asymptotic mode).
  Execution scan_exec = Execution::kSerial;
  std::size_t p_m_samples = 10;
};

/// Reusable coupling runner for a fixed (d, params, options); run() is const
/// and thread-safe, each call owning its RandomSource.
class CouplingEngine {
 public:
  CouplingEngine(const DegreeSequence& d, CouplingParams params, CouplingOptions options = {});
  ~CouplingEngine();
  CouplingEngine(CouplingEngine&&) noexcept;

  const CouplingParams& params() const { return params_; }
  const Oracle* oracle() const { return oracle_; }

  CouplingResult run(RandomSource& rng) const;

  /// Independent (G_L, G). Sets *approximate when G came from the asymptotic sampler.
  std::pair<SimpleGraph, SimpleGraph> ind_sample(RandomSource& rng, bool* approximate = nullptr,
                                                 std::size_t* restarts = nullptr) const;

 private:
  DegreeSequence d_;
  CouplingParams params_;
  CouplingOptions options_;
  WeightedEdgeSampler proposals_;
  std::unique_ptr<Oracle> owned_oracle_;
  const Oracle* oracle_ = nullptr;
};

CouplingResult run_coupling(const DegreeSequence& d, const CouplingParams& params,
                            SeqSampleMode prob_mode, EtaDenominatorMode denom_mode,
                            RandomSource& rng);

std::pair<SimpleGraph, SimpleGraph> ind_sample(const DegreeSequence& d, const CouplingParams& params,
                                               RandomSource& rng);

}  // namespace degseq
