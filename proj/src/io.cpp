#include "degseq/io.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "degseq/errors.hpp"

namespace degseq {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

bool skippable(const std::string& line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

[[noreturn]] void parse_error(std::size_t line_no, const std::string& what) {
  throw IoError("line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

DegreeSequence parse_degrees(std::istream& in) {
  std::vector<std::uint32_t> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    std::istringstream fields(line);
    long long v = -1;
    std::string rest;
    if (!(fields >> v) || (fields >> rest) || v < 0 || v > 0xFFFFFFFFLL) {
      parse_error(line_no, "expected one non-negative integer");
    }
    values.push_back(static_cast<std::uint32_t>(v));
  }
  if (in.bad()) throw IoError("read failure");
  return DegreeSequence(std::move(values));
}

DegreeSequence read_degree_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_degrees(in);
}

void write_degrees(std::ostream& out, const DegreeSequence& d) {
  for (auto v : d.values()) out << v << '\n';
}

SimpleGraph parse_edge_list(std::istream& in, std::size_t n) {
  SimpleGraph g(n);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    std::istringstream fields(line);
    long long a = -1;
    long long b = -1;
    std::string rest;
    if (!(fields >> a >> b) || (fields >> rest)) parse_error(line_no, "expected \"j k\"");
    if (a < 0 || b < 0 || a >= b || static_cast<std::size_t>(b) >= n) {
      parse_error(line_no, "need 0 <= j < k < n");
    }
    if (!g.add_edge(static_cast<Vertex>(a), static_cast<Vertex>(b))) parse_error(line_no, "duplicate edge");
  }
  if (in.bad()) throw IoError("read failure");
  return g;
}

SimpleGraph read_edge_list(const std::filesystem::path& path, std::size_t n) {
  auto in = open_input(path);
  return parse_edge_list(in, n);
}

void write_edge_list(std::ostream& out, const SimpleGraph& g) {
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

void write_matrix_csv(std::ostream& out, const SymmetricProbMatrix& m) {
  const auto precision = out.precision(17);
  out << "i,j,value\n";
  for (std::size_t p = 0; p < m.packed().size(); ++p) {
    const Edge e = pair_at(m.size(), p);
    out << e.u << ',' << e.v << ',' << m.packed()[p] << '\n';
  }
  out.precision(precision);
}

SymmetricProbMatrix parse_matrix_csv(std::istream& in, std::size_t n) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("i,j,value", 0) != 0) throw IoError("missing i,j,value header");
  std::vector<double> values(pair_count(n), 0.0);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    std::istringstream fields(line);
    long long i = -1;
    long long j = -1;
    double v = 0.0;
    char c1 = 0;
    char c2 = 0;
    if (!(fields >> i >> c1 >> j >> c2 >> v) || c1 != ',' || c2 != ',') parse_error(line_no, "expected i,j,value");
    if (i < 0 || i >= j || static_cast<std::size_t>(j) >= n) parse_error(line_no, "need 0 <= i < j < n");
    values[pair_index(n, static_cast<std::size_t>(i), static_cast<std::size_t>(j))] = v;
  }
  try {
    return SymmetricProbMatrix::from_function(
        n, [&](std::size_t i, std::size_t j) { return values[pair_index(n, i, j)]; });
  } catch (const std::domain_error& e) {
    throw IoError(e.what());
  }
}

void write_family(std::ostream& out, const GraphFamily& family) {
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (i > 0) out << '\n';
    write_edge_list(out, family.member(i));
  }
}

nlohmann::json trace_to_json(const CouplingTrace& t) {
  nlohmann::json j = {
      {"I", t.poisson_steps},
      {"fallback", t.fallback},
      {"fallback_step", t.fallback_step ? nlohmann::json(*t.fallback_step) : nlohmann::json(nullptr)},
      {"fallback_reason", t.fallback ? nlohmann::json(t.fallback_reason) : nlohmann::json(nullptr)},
      {"steps_total", t.steps_total},
      {"eta_min", t.eta_min},
      {"rejections_G", t.rejections_g},
      {"rejections_L_only", t.rejections_l_only},
      {"duplicate_hits", t.duplicate_hits},
      {"g_insertions", t.g_insertions},
      {"g_approximate", t.g_approximate},
      {"restarts", t.restarts},
      {"p_m_checkpoints", nlohmann::json::array()},
  };
  for (const auto& [step, p] : t.p_m_checkpoints) j["p_m_checkpoints"].push_back({step, p});
  return j;
}

void write_trace_ndjson(std::ostream& out, std::span<const CouplingTrace> traces) {
  for (const auto& t : traces) out << trace_to_json(t).dump() << '\n';
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace degseq
