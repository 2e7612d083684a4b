#include "degseq/degree_sequence.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace degseq {

std::uint64_t DegreeSequence::sum() const {
  return std::accumulate(degrees_.begin(), degrees_.end(), std::uint64_t{0});
}

std::size_t DegreeSequence::positive_count() const {
  return static_cast<std::size_t>(
      std::count_if(degrees_.begin(), degrees_.end(), [](std::uint32_t x) { return x > 0; }));
}

DegreeStats degree_stats(const DegreeSequence& d) {
  DegreeStats s;
  if (d.size() == 0) return s;
  std::vector<std::uint32_t> sorted(d.values().begin(), d.values().end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  s.sum = std::accumulate(sorted.begin(), sorted.end(), std::uint64_t{0});
  s.max = sorted.front();
  s.min = sorted.back();
  const std::size_t top = std::min<std::size_t>(s.max, sorted.size());
  s.j = std::accumulate(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(top),
                        std::uint64_t{0});
  return s;
}

bool is_graphical(const DegreeSequence& d) {
  const std::size_t n = d.size();
  std::vector<std::uint64_t> sorted(d.values().begin(), d.values().end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  std::uint64_t total = 0;
  for (auto x : sorted) {
    if (x >= n && x > 0) return false;
    total += x;
  }
  if (total % 2 != 0) return false;

  // Erdos-Gallai: for every k, sum_{i<=k} d_i <= k(k-1) + sum_{i>k} min(d_i, k).
  // Entries >= k form a prefix of the sorted vector, so the min() sum splits into
  // k * (#large tail entries) + suffix sum of the small ones.
  std::vector<std::uint64_t> suffix(n + 1, 0);
  for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + sorted[i];
  std::size_t at_least_k = n;
  std::uint64_t prefix = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    prefix += sorted[k - 1];
    while (at_least_k > 0 && sorted[at_least_k - 1] < k) --at_least_k;
    const std::size_t boundary = std::max(at_least_k, k);
    const std::uint64_t rhs = static_cast<std::uint64_t>(k) * (k - 1) +
                              static_cast<std::uint64_t>(k) * (boundary - k) + suffix[boundary];
    if (prefix > rhs) return false;
  }
  return true;
}

}  // namespace degseq
