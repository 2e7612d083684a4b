#include "experiment.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "degseq/errors.hpp"
#include "degseq/generators.hpp"
#include "degseq/io.hpp"
#include "degseq/parallel.hpp"
#include "degseq/stats.hpp"
#include "degseq/verify.hpp"

namespace degseq::cli {

namespace {

constexpr const char* kVersion = "1.0.0";

using nlohmann::json;

struct Source {
  DegreeSequence d;
  json meta;
};

Source load_degrees(const ExperimentConfig& c) {
  const int given = (c.degree_file.empty() ? 0 : 1) + (c.generator.empty() ? 0 : 1) + (c.degrees.empty() ? 0 : 1);
  if (given != 1) throw std::invalid_argument("give exactly one of --degrees-file, --generator, --degrees");
  Source s;
  if (!c.degree_file.empty()) {
    s.d = read_degree_file(c.degree_file);
    s.meta = {{"kind", "file"}, {"path", c.degree_file.string()}};
  } else if (!c.generator.empty()) {
    const GeneratedSequence g = generate_degree_sequence(c.generator, c.seed);
    s.d = g.d;
    s.meta = {{"kind", "generator"}, {"spec", c.generator}};
    if (g.adjusted_index) {
      s.meta["parity_adjustment"] = {{"index", *g.adjusted_index}, {"delta", g.adjustment}};
    }
  } else {
    s.d = DegreeSequence(c.degrees);
    s.meta = {{"kind", "inline"}};
  }
  if (!is_graphical(s.d)) throw NotGraphicalError("degree sequence is not graphical");
  const DegreeStats st = degree_stats(s.d);
  s.meta["n"] = s.d.size();
  s.meta["sum"] = st.sum;
  s.meta["max"] = st.max;
  s.meta["min"] = st.min;
  s.meta["J"] = st.j;
  return s;
}

std::string mode_name(SeqSampleMode m) { return m == SeqSampleMode::kExactOracle ? "exact" : "asymptotic"; }
std::string denom_name(EtaDenominatorMode m) {
  return m == EtaDenominatorMode::kExactMax ? "exact-max" : "certified-bound";
}

json params_json(const CouplingParams& p) {
  return {{"xi", p.xi},         {"zeta", p.zeta},         {"zeta_prime", p.zeta_prime},
          {"lambda", p.lambda}, {"warnings", p.warnings}, {"outside_hypothesis", p.outside_hypothesis}};
}

void write_json(const std::filesystem::path& path, const json& j) {
  auto out = open_output(path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

void write_graph(const std::filesystem::path& path, const SimpleGraph& g) {
  auto out = open_output(path);
  write_edge_list(out, g);
  if (!out) throw IoError("write failed: " + path.string());
}

std::string run_name(const std::string& prefix, std::size_t r) {
  std::ostringstream s;
  s << prefix << std::setw(6) << std::setfill('0') << r << ".txt";
  return s.str();
}

void write_marginals(const ExperimentConfig& c, std::span<const SimpleGraph> samples,
                     const SymmetricProbMatrix& reference, json& meta, const std::string& name) {
  if (samples.size() < 100) {
    meta["marginals_skipped"] = "fewer than 100 runs";
    return;
  }
  const MarginalReport r = empirical_marginals(samples, reference);
  auto out = open_output(c.out / (name + ".csv"));
  write_marginals_csv(out, r);
  meta[name] = {{"worst_abs_z", r.worst_abs_z}, {"exact_mismatches", r.exact_mismatches}};
}

std::unique_ptr<Oracle> try_oracle(const DegreeSequence& d, const OracleOptions& o, bool required) {
  if (required) return std::make_unique<Oracle>(d, o);
  try {
    return std::make_unique<Oracle>(d, o);
  } catch (const OracleCapError&) {
    return nullptr;
  }
}

std::map<SimpleGraph, double> uniform_law(const GraphFamily& f) {
  std::map<SimpleGraph, double> law;
  for (std::size_t i = 0; i < f.size(); ++i) law[f.member(i)] = 1.0 / static_cast<double>(f.size());
  return law;
}

Execution exec_of(const ExperimentConfig& c) { return c.serial ? Execution::kSerial : Execution::kParallel; }

int sample_gnd(const ExperimentConfig& c, json& meta) {
  const Source src = load_degrees(c);
  meta["degrees"] = src.meta;
  meta["mode"] = mode_name(c.mode);
  const DegreeSequence& d = src.d;
  const auto oracle = try_oracle(d, c.oracle, c.mode == SeqSampleMode::kExactOracle);
  SeqSampleOptions so;
  so.oracle = oracle.get();
  so.oracle_options = c.oracle;

  const auto results = map_replicas(
      c.runs, c.seed,
      [&](std::size_t, RandomSource& rng) { return seq_sample_d(d, c.mode, rng, c.checkpoints, so); },
      exec_of(c));

  std::vector<SimpleGraph> graphs;
  std::size_t restarts = 0;
  for (const auto& r : results) {
    graphs.push_back(r.graph);
    restarts += r.restarts;
  }
  meta["restarts"] = restarts;
  if (oracle) {
    meta["reference"] = "exact_edge_marginals";
    write_marginals(c, graphs, oracle->edge_marginals(), meta, "marginals");
    if (oracle->family().size() >= 2) write_json(c.out / "gof.json", chi_square_gof(graphs, uniform_law(oracle->family())));
  } else {
    meta["reference"] = "p_matrix";
    write_marginals(c, graphs, p_matrix(d), meta, "marginals");
  }
  if (!c.checkpoints.empty()) {
    const double xi = c.overrides.xi.value_or(0.2);
    json conc = json::array();
    for (const auto& r : results) conc.push_back(degree_concentration_check(d, r.checkpoints, xi));
    write_json(c.out / "concentration.json", {{"xi", xi}, {"runs", conc}});
  }
  if (c.write_graphs) {
    for (std::size_t r = 0; r < graphs.size(); ++r) write_graph(c.out / "graphs" / run_name("g_", r), graphs[r]);
  }
  return kOk;
}

int sample_gnw(const ExperimentConfig& c, json& meta) {
  SymmetricProbMatrix w;
  if (!c.matrix_file.empty()) {
    if (c.n == 0) throw std::invalid_argument("--matrix needs --n");
    std::ifstream in(c.matrix_file);
    if (!in) throw IoError("cannot open " + c.matrix_file.string());
    w = parse_matrix_csv(in, c.n);
    meta["w"] = {{"kind", "file"}, {"path", c.matrix_file.string()}};
  } else if (c.w_constant) {
    if (c.n == 0) throw std::invalid_argument("--w-constant needs --n");
    w = SymmetricProbMatrix(c.n, *c.w_constant);
    meta["w"] = {{"kind", "constant"}, {"value", *c.w_constant}, {"n", c.n}};
  } else {
    const Source src = load_degrees(c);
    w = p_matrix(src.d);
    meta["w"] = {{"kind", "p_matrix"}, {"degrees", src.meta}};
  }
  const auto graphs = map_replicas(
      c.runs, c.seed, [&](std::size_t, RandomSource& rng) { return sample_gnw(w, rng); }, exec_of(c));
  write_marginals(c, graphs, w, meta, "marginals");
  if (c.write_graphs) {
    for (std::size_t r = 0; r < graphs.size(); ++r) write_graph(c.out / "graphs" / run_name("g_", r), graphs[r]);
  }
  return kOk;
}

int seq_approx(const ExperimentConfig& c, json& meta) {
  const Source src = load_degrees(c);
  meta["degrees"] = src.meta;
  const CouplingParams params = resolve_params(src.d, c.overrides);
  meta["params"] = params_json(params);
  const WeightedEdgeSampler proposals(src.d);
  const auto graphs = map_replicas(
      c.runs, c.seed,
      [&](std::size_t, RandomSource& rng) { return seq_approx_p(proposals, params.lambda, params.big_lambda, rng); },
      exec_of(c));
  write_marginals(c, graphs, f_c_transform(hadamard(params.big_lambda, q_matrix(src.d)), params.lambda), meta,
                  "marginals");
  if (c.write_graphs) {
    for (std::size_t r = 0; r < graphs.size(); ++r) write_graph(c.out / "graphs" / run_name("g_", r), graphs[r]);
  }
  return kOk;
}

int couple(const ExperimentConfig& c, json& meta) {
  const Source src = load_degrees(c);
  meta["degrees"] = src.meta;
  meta["mode"] = mode_name(c.mode);
  meta["denom"] = denom_name(c.denom);
  const CouplingParams params = resolve_params(src.d, c.overrides);
  meta["params"] = params_json(params);
  CouplingOptions co;
  co.prob_mode = c.mode;
  co.denom_mode = c.denom;
  co.oracle_options = c.oracle;
  const CouplingEngine engine(src.d, params, co);

  const auto results = map_replicas(
      c.runs, c.seed, [&](std::size_t, RandomSource& rng) { return engine.run(rng); }, exec_of(c));

  std::vector<CouplingTrace> traces;
  std::vector<SimpleGraph> g_l;
  std::vector<SimpleGraph> g;
  std::vector<std::pair<SimpleGraph, SimpleGraph>> coupled;
  std::size_t fallbacks = 0;
  for (const auto& r : results) {
    traces.push_back(r.trace);
    g_l.push_back(r.g_l);
    g.push_back(r.g);
    if (r.trace.fallback) {
      ++fallbacks;
    } else {
      coupled.emplace_back(r.g_l, r.g);
    }
  }
  {
    auto out = open_output(c.out / "traces.ndjson");
    write_trace_ndjson(out, traces);
    if (!out) throw IoError("write failed: traces.ndjson");
  }
  const SubgraphReport sub = subgraph_check(coupled);
  meta["fallback_fraction"] = static_cast<double>(fallbacks) / static_cast<double>(c.runs);
  meta["containment"] = {{"non_fallback_runs", sub.total}, {"contained", sub.count_contained}};
  if (c.mode == SeqSampleMode::kAsymptotic) meta["approximate"] = true;

  write_marginals(c, g_l, f_c_transform(hadamard(params.big_lambda, q_matrix(src.d)), params.lambda), meta,
                  "marginals_gl");
  if (const Oracle* oracle = engine.oracle()) {
    write_marginals(c, g, oracle->edge_marginals(), meta, "marginals_g");
    if (oracle->family().size() >= 2) write_json(c.out / "gof.json", chi_square_gof(g, uniform_law(oracle->family())));
  }
  if (c.write_graphs) {
    for (std::size_t r = 0; r < results.size(); ++r) {
      write_graph(c.out / "graphs" / run_name("gl_", r), g_l[r]);
      write_graph(c.out / "graphs" / run_name("g_", r), g[r]);
    }
  }
  return kOk;
}

int oracle(const ExperimentConfig& c, json& meta) {
  const Source src = load_degrees(c);
  meta["degrees"] = src.meta;
  const Oracle o(src.d, c.oracle);
  meta["family_size"] = o.family().size();
  {
    auto out = open_output(c.out / "family.txt");
    write_family(out, o.family());
    if (!out) throw IoError("write failed: family.txt");
  }
  if (!o.family().empty()) {
    auto out = open_output(c.out / "wstar.csv");
    write_matrix_csv(out, o.edge_marginals());
    if (!out) throw IoError("write failed: wstar.csv");
  }
  return kOk;
}

int verify_suite(const ExperimentConfig& c, json& meta, std::ostream& log) {
  verify::VerifyOptions vo;
  vo.seed = c.seed;
  vo.exec = exec_of(c);
  const auto results = verify::run_criteria(vo, c.criteria);
  bool all = true;
  for (const auto& r : results) {
    log << (r.passed ? "PASS " : "FAIL ") << r.id << "  " << r.detail << '\n';
    all = all && r.passed;
  }
  write_json(c.out / "verify.json", results);
  meta["criteria_passed"] = all;
  return all ? kOk : kStatisticalFailure;
}

}  // namespace

void apply_environment(ExperimentConfig& config) {
  if (const char* cap = std::getenv("DEGSEQ_ORACLE_CAP")) {
    std::size_t pos = 0;
    const std::string s(cap);
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != s.size()) throw std::invalid_argument("DEGSEQ_ORACLE_CAP must be an integer");
    config.oracle.max_vertices = static_cast<std::size_t>(v);
  }
}

int run_experiment(const ExperimentConfig& c, std::ostream& log) {
  const auto start = std::chrono::steady_clock::now();
  json meta = {{"tool", "degseq"},
               {"version", kVersion},
               {"kind", c.kind},
               {"seed", c.seed},
               {"runs", c.runs},
               {"oracle_cap", c.oracle.max_vertices}};
  int code = kOk;
  try {
    if (c.runs == 0) throw std::invalid_argument("--runs must be at least 1");
    if (c.kind == "sample-gnd") {
      code = sample_gnd(c, meta);
    } else if (c.kind == "sample-gnw") {
      code = sample_gnw(c, meta);
    } else if (c.kind == "seq-approx-p") {
      code = seq_approx(c, meta);
    } else if (c.kind == "couple") {
      code = couple(c, meta);
    } else if (c.kind == "oracle") {
      code = oracle(c, meta);
    } else if (c.kind == "verify-suite") {
      code = verify_suite(c, meta, log);
    } else {
      throw std::invalid_argument("unknown experiment kind " + c.kind);
    }
  } catch (const NotGraphicalError& e) {
    log << "error: " << e.what() << '\n';
    return kNotGraphical;
  } catch (const OracleCapError& e) {
    log << "error: " << e.what() << '\n';
    return kOracleCap;
  } catch (const IoError& e) {
    log << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kUsage;
  }
  meta["exit_code"] = code;
  meta["wall_time_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  try {
    write_json(c.out / "metadata.json", meta);
  } catch (const IoError& e) {
    log << "error: " << e.what() << '\n';
    return kIo;
  }
  return code;
}

}  // namespace degseq::cli
