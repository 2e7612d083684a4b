#pragma once

#include <cstdint>
#include <span>

#include "degseq/graph.hpp"
#include "degseq/parallel.hpp"

namespace degseq::kernels {

/// max over non-edges hl of G with t_h, t_l >= 1 of
///   t_h t_l / (d_h d_l (t_total + t_h t_l)),
/// i.e. the exact maximum of the asymptotic acceptance weight rho. Returns 0
/// when no such pair exists. O(n^2); the parallel version splits rows across
/// OpenMP threads and reduces with max, which is order-independent.
double max_asymptotic_rho(std::span<const std::uint32_t> d, std::span<const std::uint32_t> t,
                          std::uint64_t t_total, const SimpleGraph& g, Execution exec);

}  // namespace degseq::kernels
