#include "gmprime/prime_search.hpp"

#include <algorithm>

namespace gmprime {

std::vector<std::uint64_t> find_primes(std::span<const std::uint64_t> moduli, std::uint64_t lo,
                                       std::uint64_t hi, const FilterOptions& filter,
                                       const PipelineConfig& pipeline,
                                       const VerdictObserver& observe) {
  auto confirm = [&](std::uint64_t m) {
    PrimalityVerdict v = hybrid_is_prime(m, pipeline);
    if (observe) observe(m, v);
    return v.is_prime();
  };
  std::vector<std::uint64_t> primes;
  scan_survivors(moduli, lo, hi, filter, [&](std::uint64_t m) {
    if (confirm(m)) primes.push_back(m);
  });
  if (!filter.drop_first_terms) return primes;

  std::vector<std::uint64_t> recovered;
  for (std::uint64_t d : moduli) {
    if (d >= lo && d <= hi && confirm(d)) recovered.push_back(d);
  }
  std::sort(recovered.begin(), recovered.end());
  std::vector<std::uint64_t> merged;
  merged.reserve(primes.size() + recovered.size());
  std::merge(primes.begin(), primes.end(), recovered.begin(), recovered.end(),
             std::back_inserter(merged));
  return merged;
}

}  // namespace gmprime
