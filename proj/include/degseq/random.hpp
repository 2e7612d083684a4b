#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace degseq {

/// Seeded, stream-addressable generator. Every draw is derived from the raw
/// mt19937_64 output with fixed arithmetic (no std:: distributions, whose
/// algorithms are implementation-defined), so a given (seed, stream) reproduces
/// the same sequence on every platform.
class RandomSource {
 public:
  using result_type = std::uint64_t;

  RandomSource(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Unbiased uniform integer in [0, bound). bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return engine_(); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

/// Exact Poisson variate: sequential inversion below mean 30, Hormann's PTRS
/// transformed rejection above. Throws std::invalid_argument on negative or
/// non-finite mean.
std::uint64_t sample_poisson(double mean, RandomSource& rng);

/// Walker/Vose alias table over non-negative weights; O(1) draws.
class AliasTable {
 public:
  AliasTable() = default;
  /// Throws std::invalid_argument when all weights are zero.
  explicit AliasTable(std::span<const double> weights);

  std::size_t size() const { return prob_.size(); }
  std::size_t sample(RandomSource& rng) const;

 private:
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
};

/// Fenwick tree over integer weights supporting point updates and exact
/// weight-proportional index draws in O(log n).
class FenwickSampler {
 public:
  FenwickSampler() = default;
  explicit FenwickSampler(std::span<const std::uint32_t> weights);

  std::uint64_t total() const { return total_; }
  void add(std::size_t index, std::int64_t delta);
  /// Smallest index whose prefix sum exceeds target (target < total()).
  std::size_t find(std::uint64_t target) const;
  std::size_t sample(RandomSource& rng) const { return find(rng.uniform_below(total_)); }

 private:
  std::vector<std::uint64_t> tree_;
  std::uint64_t total_ = 0;
  std::size_t top_bit_ = 0;
};

}  // namespace degseq
