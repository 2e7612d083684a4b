#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "degseq/degree_sequence.hpp"

namespace degseq {

struct GeneratedSequence {
  DegreeSequence d;
  std::string spec;
  /// Set when the raw draw had odd sum and one entry was moved by one.
  std::optional<std::size_t> adjusted_index;
  int adjustment = 0;
};

/// Every vertex degree d. Odd n*d: the last positive entry is decremented.
/// Throws std::invalid_argument unless d < n.
GeneratedSequence regular_sequence(std::size_t n, std::uint32_t d);

/// n i.i.d. draws from p(k) proportional to k^-exponent on [d_min, d_max], then
/// the last positive entry decremented if the sum is odd.
GeneratedSequence powerlaw_sequence(std::size_t n, double exponent, std::uint32_t d_min,
                                    std::uint32_t d_max, std::uint64_t seed);

/// d-regular with exactly floor(fraction * n) uniformly chosen entries lowered
/// to a uniform value in [floor(d/2), d-1]. Parity is fixed on the last
/// perturbed entry so no entry ends at or above d.
GeneratedSequence perturbed_regular_sequence(std::size_t n, std::uint32_t d, double fraction,
                                             std::uint64_t seed);

/// Parses "regular(n,d)", "powerlaw(n,exponent,d_min,d_max)" or
/// "perturbed-regular(n,d,fraction,seed)". powerlaw uses the given seed.
/// Throws std::invalid_argument on bad syntax or parameters and
/// NotGraphicalError if the result is not graphical.
GeneratedSequence generate_degree_sequence(const std::string& spec, std::uint64_t seed);

}  // namespace degseq
