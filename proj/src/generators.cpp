#include "degseq/generators.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <regex>
#include <stdexcept>
#include <vector>

#include "degseq/errors.hpp"
#include "degseq/random.hpp"

namespace degseq {

namespace {

// Generators draw from a stream no replica uses.
constexpr std::uint64_t kGeneratorStream = ~std::uint64_t{0};

void fix_parity_last_positive(GeneratedSequence& g) {
  if (g.d.sum() % 2 == 0) return;
  auto& v = g.d.mutable_values();
  for (std::size_t i = v.size(); i-- > 0;) {
    if (v[i] > 0) {
      --v[i];
      g.adjusted_index = i;
      g.adjustment = -1;
      return;
    }
  }
}

void require_graphical(const GeneratedSequence& g) {
  if (!is_graphical(g.d)) throw NotGraphicalError("generated sequence is not graphical: " + g.spec);
}

}  // namespace

GeneratedSequence regular_sequence(std::size_t n, std::uint32_t d) {
  if (n == 0 || d >= n) throw std::invalid_argument("regular(n,d) needs d < n");
  GeneratedSequence g;
  g.spec = "regular(" + std::to_string(n) + "," + std::to_string(d) + ")";
  g.d = DegreeSequence(std::vector<std::uint32_t>(n, d));
  fix_parity_last_positive(g);
  require_graphical(g);
  return g;
}

GeneratedSequence powerlaw_sequence(std::size_t n, double exponent, std::uint32_t d_min,
                                    std::uint32_t d_max, std::uint64_t seed) {
  if (n == 0 || !(exponent > 1.0) || d_min == 0 || d_min > d_max || d_max >= n) {
    throw std::invalid_argument("powerlaw needs exponent > 1 and 1 <= d_min <= d_max < n");
  }
  std::vector<double> weights;
  for (std::uint32_t k = d_min; k <= d_max; ++k) weights.push_back(std::pow(static_cast<double>(k), -exponent));
  const AliasTable table(weights);
  RandomSource rng(seed, kGeneratorStream);
  std::vector<std::uint32_t> values(n);
  for (auto& v : values) v = d_min + static_cast<std::uint32_t>(table.sample(rng));

  GeneratedSequence g;
  g.spec = "powerlaw(" + std::to_string(n) + "," + std::to_string(exponent) + "," +
           std::to_string(d_min) + "," + std::to_string(d_max) + ")";
  g.d = DegreeSequence(std::move(values));
  fix_parity_last_positive(g);
  require_graphical(g);
  return g;
}

GeneratedSequence perturbed_regular_sequence(std::size_t n, std::uint32_t d, double fraction,
                                             std::uint64_t seed) {
  if (n == 0 || d == 0 || d >= n || !(fraction >= 0.0 && fraction <= 1.0)) {
    throw std::invalid_argument("perturbed-regular needs 0 < d < n and fraction in [0,1]");
  }
  const auto k = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n)));
  RandomSource rng(seed, kGeneratorStream);

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.uniform_below(n - i));
    std::swap(order[i], order[j]);
  }
  std::vector<std::size_t> chosen(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(chosen.begin(), chosen.end());

  std::vector<std::uint32_t> values(n, d);
  const std::uint32_t lo = d / 2;
  for (std::size_t i : chosen) values[i] = lo + static_cast<std::uint32_t>(rng.uniform_below(d - lo));

  GeneratedSequence g;
  g.spec = "perturbed-regular(" + std::to_string(n) + "," + std::to_string(d) + "," +
           std::to_string(fraction) + "," + std::to_string(seed) + ")";
  g.d = DegreeSequence(std::move(values));
  if (g.d.sum() % 2 != 0) {
    if (chosen.empty()) {
      fix_parity_last_positive(g);
    } else {
      auto& v = g.d.mutable_values();
      const std::size_t i = chosen.back();
      if (v[i] > 0) {
        --v[i];
        g.adjustment = -1;
      } else if (v[i] + 1 < d) {
        ++v[i];
        g.adjustment = 1;
      } else {
        throw std::invalid_argument("perturbed-regular: cannot fix parity below d");
      }
      g.adjusted_index = i;
    }
  }
  require_graphical(g);
  return g;
}

GeneratedSequence generate_degree_sequence(const std::string& spec, std::uint64_t seed) {
  static const std::regex call(R"(^\s*([a-z-]+)\s*\(([^)]*)\)\s*$)");
  std::smatch m;
  if (!std::regex_match(spec, m, call)) throw std::invalid_argument("bad generator spec: " + spec);
  const std::string name = m[1];
  std::vector<std::string> args;
  {
    std::string cur;
    for (char c : std::string(m[2])) {
      if (c == ',') {
        args.push_back(cur);
        cur.clear();
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        cur += c;
      }
    }
    args.push_back(cur);
  }
  auto as_uint = [&](std::size_t i) -> std::uint64_t {
    std::size_t pos = 0;
    const auto v = std::stoull(args.at(i), &pos);
    if (pos != args[i].size()) throw std::invalid_argument("bad integer in generator spec: " + spec);
    return v;
  };
  auto as_real = [&](std::size_t i) {
    std::size_t pos = 0;
    const double v = std::stod(args.at(i), &pos);
    if (pos != args[i].size()) throw std::invalid_argument("bad number in generator spec: " + spec);
    return v;
  };
  try {
    if (name == "regular" && args.size() == 2) {
      return regular_sequence(as_uint(0), static_cast<std::uint32_t>(as_uint(1)));
    }
    if (name == "powerlaw" && args.size() == 4) {
      return powerlaw_sequence(as_uint(0), as_real(1), static_cast<std::uint32_t>(as_uint(2)),
                               static_cast<std::uint32_t>(as_uint(3)), seed);
    }
    if (name == "perturbed-regular" && args.size() == 4) {
      return perturbed_regular_sequence(as_uint(0), static_cast<std::uint32_t>(as_uint(1)), as_real(2),
                                        as_uint(3));
    }
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("generator argument out of range: " + spec);
  }
  throw std::invalid_argument("unknown generator spec: " + spec);
}

}  // namespace degseq
