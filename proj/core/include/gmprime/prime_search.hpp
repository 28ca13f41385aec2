#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "gmprime/gm_filter.hpp"
#include "gmprime/primality.hpp"

namespace gmprime {

/// Called with every pipeline verdict, in ascending order of n.
using VerdictObserver = std::function<void(std::uint64_t, const PrimalityVerdict&)>;

/// Primes in [lo, hi]: filter survivors confirmed by the hybrid pipeline.
///
/// With `drop_first_terms` the moduli themselves are not candidates, but
/// every modulus inside the range is still handed to the pipeline, so a prime
/// modulus is recovered instead of silently lost.
std::vector<std::uint64_t> find_primes(std::span<const std::uint64_t> moduli, std::uint64_t lo,
                                       std::uint64_t hi, const FilterOptions& filter = {},
                                       const PipelineConfig& pipeline = {},
                                       const VerdictObserver& observe = {});

}  // namespace gmprime
