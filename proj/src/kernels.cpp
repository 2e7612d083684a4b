#include "degseq/kernels.hpp"

#include <algorithm>
#include <cstddef>
#include <vector>

namespace degseq::kernels {

namespace {

double row_max(std::size_t h, std::span<const std::uint32_t> d, std::span<const std::uint32_t> t,
               double total, const SimpleGraph& g) {
  double best = 0.0;
  const std::size_t n = t.size();
  const double th = t[h];
  const double dh = d[h];
  for (std::size_t l = h + 1; l < n; ++l) {
    if (t[l] == 0) continue;
    const double prod = th * static_cast<double>(t[l]);
    const double rho = prod / (dh * static_cast<double>(d[l]) * (total + prod));
    if (rho > best && !g.has_edge(static_cast<Vertex>(h), static_cast<Vertex>(l))) best = rho;
  }
  return best;
}

}  // namespace

double max_asymptotic_rho(std::span<const std::uint32_t> d, std::span<const std::uint32_t> t,
                          std::uint64_t t_total, const SimpleGraph& g, Execution exec) {
  const auto n = static_cast<std::int64_t>(t.size());
  const auto total = static_cast<double>(t_total);
  double best = 0.0;
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic, 16) reduction(max : best)
    for (std::int64_t h = 0; h < n; ++h) {
      if (t[static_cast<std::size_t>(h)] == 0) continue;
      best = std::max(best, row_max(static_cast<std::size_t>(h), d, t, total, g));
    }
    return best;
  }
  for (std::size_t h = 0; h < t.size(); ++h) {
    if (t[h] == 0) continue;
    best = std::max(best, row_max(h, d, t, total, g));
  }
  return best;
}

}  // namespace degseq::kernels
