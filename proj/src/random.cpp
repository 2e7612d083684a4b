#include "degseq/random.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace degseq {

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x9e3779b9u};
  engine_.seed(seq);
}

std::uint64_t RandomSource::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
  // Lemire's multiply-shift with rejection of the biased low region.
  unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(engine_()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

std::uint64_t sample_poisson(double mean, RandomSource& rng) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw std::invalid_argument("Poisson mean must be finite and non-negative");
  }
  if (mean == 0.0) return 0;

  if (mean < 30.0) {
    // Inversion by sequential search of the CDF.
    const double u = rng.uniform();
    double p = std::exp(-mean);
    double cdf = p;
    std::uint64_t k = 0;
    while (u >= cdf) {
      ++k;
      p *= mean / static_cast<double>(k);
      const double next = cdf + p;
      if (next == cdf) break;  // remaining tail below double resolution
      cdf = next;
    }
    return k;
  }

  // PTRS (W. Hormann, "The transformed rejection method for generating Poisson
  // random variables", 1993).
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = rng.uniform() - 0.5;
    const double v = rng.uniform();
    const double us = 0.5 - std::fabs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
        -mean + kf * loglam - std::lgamma(kf + 1.0)) {
      return static_cast<std::uint64_t>(kf);
    }
  }
}

AliasTable::AliasTable(std::span<const double> weights)
    : prob_(weights.size(), 0.0), alias_(weights.size(), 0) {
  const std::size_t n = weights.size();
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("alias table weights must be non-negative");
    total += w;
  }
  if (!(total > 0.0)) throw std::invalid_argument("alias table weights are all zero");

  std::vector<double> scaled(n);
  std::vector<std::uint32_t> small;
  std::vector<std::uint32_t> large;
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = weights[i] * static_cast<double>(n) / total;
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
  }
  while (!small.empty() && !large.empty()) {
    const std::uint32_t s = small.back();
    small.pop_back();
    const std::uint32_t l = large.back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // Leftovers are 1 up to rounding.
  for (std::uint32_t i : large) {
    prob_[i] = 1.0;
    alias_[i] = i;
  }
  for (std::uint32_t i : small) {
    prob_[i] = weights[i] > 0.0 ? 1.0 : 0.0;
    alias_[i] = i;
  }
  // A zero-weight column left in `small` has no partner; point it at any
  // positive-weight index so it can never be returned.
  std::uint32_t positive = 0;
  while (weights[positive] <= 0.0) ++positive;
  for (std::size_t i = 0; i < n; ++i) {
    if (prob_[i] == 0.0 && alias_[i] == i) alias_[i] = positive;
  }
}

std::size_t AliasTable::sample(RandomSource& rng) const {
  const auto column = static_cast<std::size_t>(rng.uniform_below(prob_.size()));
  return rng.uniform() < prob_[column] ? column : alias_[column];
}

FenwickSampler::FenwickSampler(std::span<const std::uint32_t> weights)
    : tree_(weights.size() + 1, 0) {
  const std::size_t n = weights.size();
  for (std::size_t i = 0; i < n; ++i) {
    tree_[i + 1] += weights[i];
    const std::size_t parent = (i + 1) + ((i + 1) & (~(i + 1) + 1));
    if (parent <= n) tree_[parent] += tree_[i + 1];
    total_ += weights[i];
  }
  top_bit_ = n == 0 ? 0 : std::bit_floor(n);
}

void FenwickSampler::add(std::size_t index, std::int64_t delta) {
  total_ = static_cast<std::uint64_t>(static_cast<std::int64_t>(total_) + delta);
  for (std::size_t i = index + 1; i < tree_.size(); i += i & (~i + 1)) {
    tree_[i] = static_cast<std::uint64_t>(static_cast<std::int64_t>(tree_[i]) + delta);
  }
}

std::size_t FenwickSampler::find(std::uint64_t target) const {
  std::size_t pos = 0;
  for (std::size_t step = top_bit_; step > 0; step >>= 1) {
    const std::size_t next = pos + step;
    if (next < tree_.size() && tree_[next] <= target) {
      pos = next;
      target -= tree_[next];
    }
  }
  return pos;  // zero-based index of the selected weight
}

}  // namespace degseq
