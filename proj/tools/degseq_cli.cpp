// degseq: sampling, coupling and verification runs for random graphs with a
// given degree sequence.
//
//   degseq couple --generator "regular(2000,50)" --runs 20 --out out/
//   degseq verify-suite --seed 1
//
// Options may also come from a TOML/INI file given with --config; explicit
// flags win over the file.

#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "experiment.hpp"

namespace {

template <class T>
std::vector<T> split_list(const std::string& text) {
  std::vector<T> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("bad list entry '" + item + "'");
    out.push_back(static_cast<T>(v));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using degseq::cli::ExperimentConfig;
  ExperimentConfig config;
  std::string degrees_text;
  std::string checkpoints_text;
  std::string criteria_text;
  std::string mode = "asymptotic";
  std::string denom = "certified-bound";
  double xi = -1.0;
  double zeta = -1.0;
  double zeta_prime = -1.0;
  auto& k = config.overrides.constants;

  CLI::App app{"Random graphs with a given degree sequence: sampling, coupling, verification"};
  app.set_config("--config", "", "TOML or INI file with option values; flags win");
  app.fallthrough();
  app.require_subcommand(1);

  app.add_option("--seed", config.seed, "Base seed; replica r uses stream r");
  app.add_option("--runs", config.runs, "Monte Carlo replicas")->check(CLI::PositiveNumber);
  app.add_option("--out", config.out, "Output directory");
  app.add_option("--mode", mode, "Conditional edge probabilities")->check(CLI::IsMember({"exact", "asymptotic"}));
  app.add_option("--denom", denom, "Coupling eta normalizer")
      ->check(CLI::IsMember({"exact-max", "certified-bound"}));
  app.add_option("--checkpoints", checkpoints_text, "Snapshot edge counts m1,m2,...");
  app.add_option("--degrees-file", config.degree_file, "One degree per line");
  app.add_option("--generator", config.generator,
                 "regular(n,d) | powerlaw(n,exp,dmin,dmax) | perturbed-regular(n,d,frac,seed)");
  app.add_option("--degrees", degrees_text, "Inline degree list d1,d2,...");
  app.add_option("--xi", xi, "Override xi");
  app.add_option("--zeta", zeta, "Override zeta");
  app.add_option("--zeta-prime", zeta_prime, "Override zeta'");
  app.add_option("--zeta-prime-sum-exponent", k.zeta_prime_sum_exponent);
  app.add_option("--zeta-prime-j-exponent", k.zeta_prime_j_exponent);
  app.add_option("--zeta-prime-max", k.zeta_prime_max);
  app.add_option("--xi-exponent", k.xi_exponent);
  app.add_option("--xi-max", k.xi_max);
  app.add_option("--zeta-c", k.zeta_c);
  app.add_option("--zeta-max", k.zeta_max);
  app.add_flag("--write-graphs", config.write_graphs, "Write every sampled graph as an edge list");
  app.add_flag("--serial", config.serial, "Run replicas on one thread");
  app.add_option("--w-constant", config.w_constant, "sample-gnw: constant edge probability");
  app.add_option("--matrix", config.matrix_file, "sample-gnw: i,j,value CSV");
  app.add_option("--n", config.n, "sample-gnw: vertex count for --w-constant/--matrix");
  app.add_option("--criteria", criteria_text, "verify-suite: subset such as C1,C4");

  for (const char* name : {"sample-gnd", "sample-gnw", "seq-approx-p", "couple", "oracle", "verify-suite"}) {
    app.add_subcommand(name)->callback([&config, name] { config.kind = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : degseq::cli::kUsage;
  }

  try {
    config.mode = mode == "exact" ? degseq::SeqSampleMode::kExactOracle : degseq::SeqSampleMode::kAsymptotic;
    config.denom =
        denom == "exact-max" ? degseq::EtaDenominatorMode::kExactMax : degseq::EtaDenominatorMode::kCertifiedBound;
    if (!degrees_text.empty()) config.degrees = split_list<std::uint32_t>(degrees_text);
    if (!checkpoints_text.empty()) config.checkpoints = split_list<std::size_t>(checkpoints_text);
    std::stringstream ids(criteria_text);
    for (std::string id; std::getline(ids, id, ',');) {
      if (!id.empty()) config.criteria.push_back(id);
    }
    if (xi >= 0.0) config.overrides.xi = xi;
    if (zeta >= 0.0) config.overrides.zeta = zeta;
    if (zeta_prime >= 0.0) config.overrides.zeta_prime = zeta_prime;
    degseq::cli::apply_environment(config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return degseq::cli::kUsage;
  }
  return degseq::cli::run_experiment(config, std::cerr);
}
