#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <type_traits>
#include <vector>

#include "degseq/random.hpp"

namespace degseq {

enum class Execution { kSerial, kParallel };

/// Runs fn(replica, rng) for replica = 0..runs-1, each with its own
/// RandomSource(seed, replica). Results are returned in replica order, so the
/// output is identical for serial and OpenMP execution. The first exception (by
/// replica index) is rethrown after all replicas finish.
template <class Fn>
auto map_replicas(std::size_t runs, std::uint64_t seed, Fn&& fn, Execution exec = Execution::kParallel)
    -> std::vector<std::invoke_result_t<Fn&, std::size_t, RandomSource&>> {
  using Result = std::invoke_result_t<Fn&, std::size_t, RandomSource&>;
  std::vector<std::optional<Result>> slots(runs);
  std::vector<std::exception_ptr> errors(runs);

  auto one = [&](std::size_t r) {
    try {
      RandomSource rng(seed, r);
      slots[r].emplace(fn(r, rng));
    } catch (...) {
      errors[r] = std::current_exception();
    }
  };

  if (exec == Execution::kParallel) {
    const auto count = static_cast<std::int64_t>(runs);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t r = 0; r < count; ++r) one(static_cast<std::size_t>(r));
  } else {
    for (std::size_t r = 0; r < runs; ++r) one(r);
  }

  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<Result> out;
  out.reserve(runs);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace degseq
