#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "degseq/coupling.hpp"
#include "degseq/oracle.hpp"
#include "degseq/samplers.hpp"

namespace degseq::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kNotGraphical = 2,
  kOracleCap = 3,
  kIo = 4,
  kStatisticalFailure = 5,
};

struct ExperimentConfig {
  /// sample-gnd | sample-gnw | seq-approx-p | couple | oracle | verify-suite
  std::string kind;

  // Degree source: exactly one of these (not needed by verify-suite, and
  // optional for sample-gnw when a matrix or constant is given).
  std::filesystem::path degree_file;
  std::string generator;
  std::vector<std::uint32_t> degrees;

  std::size_t runs = 1;
  std::uint64_t seed = 1;
  ParamOverrides overrides;
  SeqSampleMode mode = SeqSampleMode::kAsymptotic;
  EtaDenominatorMode denom = EtaDenominatorMode::kCertifiedBound;
  std::vector<std::size_t> checkpoints;
  std::filesystem::path out = "out";
  bool write_graphs = false;
  bool serial = false;

  // sample-gnw only.
  std::optional<double> w_constant;
  std::filesystem::path matrix_file;
  std::size_t n = 0;

  // verify-suite only; empty runs every criterion.
  std::vector<std::string> criteria;

  OracleOptions oracle;
};

/// Applies DEGSEQ_ORACLE_CAP when set. Throws std::invalid_argument on a bad value.
void apply_environment(ExperimentConfig& config);

/// Runs one experiment and writes its artifacts under config.out. Progress and
/// errors go to log. Returns an ExitCode.
int run_experiment(const ExperimentConfig& config, std::ostream& log);

}  // namespace degseq::cli
