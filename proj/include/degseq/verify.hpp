#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "degseq/parallel.hpp"

namespace degseq::verify {

struct CriterionResult {
  std::string id;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  /// Measured quantities for the report.
  nlohmann::json data;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  Execution exec = Execution::kParallel;
};

/// seq_approx_p exact law: marginals and pairwise covariances on n = 4.
CriterionResult c1_seq_approx_law(const VerifyOptions& options);
/// SeqSample-D uniformity in exact mode on two 3-member families.
CriterionResult c2_seq_sample_uniform(const VerifyOptions& options);
/// Checkpoint laws G(n,d,m) for m = 1, 2.
CriterionResult c3_checkpoint_law(const VerifyOptions& options);
/// Coupling at n = 4: G_L marginals, G uniformity, containment.
CriterionResult c4_coupling_small(const VerifyOptions& options);
/// Fallback-rate trend on regular(n, ceil(ln^2 n)).
CriterionResult c5_fallback_trend(const VerifyOptions& options);
/// lambda Lambda Q against f_c(P) on regular(2000, 50).
CriterionResult c6_marginal_closeness(const VerifyOptions& options);
/// Backtracking vs raw enumeration and W* row sums for n <= 6, max degree <= 3.
CriterionResult c7_oracle_consistency(const VerifyOptions& options);
/// Heavy-tailed sequence smoke run.
CriterionResult c8_heavy_tail(const VerifyOptions& options);

struct Criterion {
  std::string id;
  std::function<CriterionResult(const VerifyOptions&)> run;
};

const std::vector<Criterion>& criteria();

/// Runs the named criteria (all when ids is empty), in table order.
/// Throws std::invalid_argument for an unknown id.
std::vector<CriterionResult> run_criteria(const VerifyOptions& options, std::span<const std::string> ids = {});

void to_json(nlohmann::json& j, const CriterionResult& r);

}  // namespace degseq::verify
