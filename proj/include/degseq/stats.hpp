#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "json.hpp"

#include "degseq/coupling.hpp"
#include "degseq/degree_sequence.hpp"
#include "degseq/graph.hpp"
#include "degseq/prob_matrix.hpp"

namespace degseq {

/// Every verification threshold in one place. Suites run with fixed seeds, so
/// a failure is reproducible rather than a flake.
///   p_min = 0.01: a correct sampler fails one chi-square test in 100.
///   z_max = 4.5: two-sided Gaussian tail 6.8e-6 per edge, so below 1e-4
///     for the 15 edges of the largest n = 6 checks.
///   sigma = 3: per-entry band for covariances, two-sided tail 2.7e-3.
struct StatsThresholds {
  double p_min = 0.01;
  double z_max = 4.5;
  double sigma = 3.0;
};

inline constexpr StatsThresholds kThresholds{};

struct EdgeMarginal {
  Edge edge;
  std::uint64_t count = 0;
  double frequency = 0.0;
  double reference = 0.0;
  /// Empty when the reference is 0 or 1 (checked for exact agreement instead).
  std::optional<double> z;
  bool exact_mismatch = false;
};

struct MarginalReport {
  std::size_t n = 0;
  std::size_t n_runs = 0;
  std::vector<EdgeMarginal> edges;
  double worst_abs_z = 0.0;
  std::size_t exact_mismatches = 0;

  bool passed(double z_max = kThresholds.z_max) const {
    return exact_mismatches == 0 && worst_abs_z < z_max;
  }
};

/// Per-edge empirical frequencies against reference with Bernoulli z-scores.
/// Throws std::invalid_argument for mixed n, a reference of another size, or
/// fewer than 100 samples.
MarginalReport empirical_marginals(std::span<const SimpleGraph> samples,
                                   const SymmetricProbMatrix& reference);

/// Same, from per-pair hit counts (index pair_index) over n_runs samples.
MarginalReport marginals_from_counts(std::size_t n, std::span<const std::uint64_t> counts,
                                     std::size_t n_runs, const SymmetricProbMatrix& reference);

struct GofReport {
  /// After merging categories with expected count below 5.
  std::size_t categories = 0;
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n_runs = 0;
  std::size_t support = 0;

  bool passed(double p_min = kThresholds.p_min) const { return p_value > p_min; }
};

/// Pearson chi-square of observed counts against probabilities (same length,
/// summing to 1), merging sparse categories. A single category gives
/// statistic 0 and p = 1.
GofReport chi_square_counts(std::span<const std::uint64_t> observed, std::span<const double> probs);

/// Throws OutOfSupportError when a sample has zero mass under law.
GofReport chi_square_gof(std::span<const SimpleGraph> samples, const std::map<SimpleGraph, double>& law);

struct CovarianceEntry {
  std::size_t a = 0;  ///< pair_index of the first edge
  std::size_t b = 0;  ///< pair_index of the second edge, a < b
  double covariance = 0.0;
  /// sigma * standard error under independence.
  double band = 0.0;
  bool within = true;
};

struct CovarianceReport {
  std::size_t n = 0;
  std::size_t n_runs = 0;
  std::vector<CovarianceEntry> entries;
  std::size_t outside = 0;

  const CovarianceEntry& at(Edge e, Edge f) const;
};

/// Empirical covariance of every pair of distinct edge indicators with
/// independence-null bands. Throws std::invalid_argument below 10^4 samples or for mixed n.
CovarianceReport pairwise_covariance(std::span<const SimpleGraph> samples,
                                     double sigma = kThresholds.sigma);

struct SubgraphViolation {
  std::size_t index = 0;
  Edge witness;
};

struct SubgraphReport {
  std::size_t total = 0;
  std::size_t count_contained = 0;
  std::vector<SubgraphViolation> violations;
};

/// Exact containment first ⊆ second per pair. Throws std::invalid_argument on
/// mismatched n within a pair.
SubgraphReport subgraph_check(std::span<const std::pair<SimpleGraph, SimpleGraph>> pairs);

struct ConcentrationEntry {
  std::size_t m = 0;
  double p_m = 0.0;
  double violation_fraction = 0.0;
  double worst_relative_deviation = 0.0;
};

/// Band |t_j - p_m d_j| <= xi p_m d_j over vertices with d_j > 0, per checkpoint.
/// Soft diagnostic: the band holds only with high probability.
std::vector<ConcentrationEntry> degree_concentration_check(
    const DegreeSequence& d, std::span<const std::pair<std::size_t, SimpleGraph>> checkpoints,
    double xi);

struct FcpComparison {
  double max_relative_error = 0.0;
  double mean_relative_error = 0.0;
  Edge worst_edge;
  double zeta = 0.0;
  double zeta_prime = 0.0;
  /// Delta / ||d||_1
  double degree_ratio = 0.0;
  /// zeta + zeta' + Delta / ||d||_1
  double driver = 0.0;
};

/// Relative error of 1 - exp(-lambda Lambda_jk Q_jk) against 1 - exp(-P_jk)
/// over pairs with d_j d_k > 0.
FcpComparison compare_w_to_fcp(const DegreeSequence& d, const CouplingParams& params);

struct KsReport {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
};

/// One-sample Kolmogorov-Smirnov test against Uniform(0,1), asymptotic
/// p-value with the small-sample correction sqrt(n) + 0.12 + 0.11/sqrt(n).
KsReport ks_uniform(std::vector<double> values);

void to_json(nlohmann::json& j, const MarginalReport& r);
void to_json(nlohmann::json& j, const GofReport& r);
void to_json(nlohmann::json& j, const CovarianceReport& r);
void to_json(nlohmann::json& j, const SubgraphReport& r);
void to_json(nlohmann::json& j, const ConcentrationEntry& r);
void to_json(nlohmann::json& j, const FcpComparison& r);
void to_json(nlohmann::json& j, const KsReport& r);

/// "i,j,count,frequency,reference,z" with one row per edge.
void write_marginals_csv(std::ostream& out, const MarginalReport& r);

}  // namespace degseq
