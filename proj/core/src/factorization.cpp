#include "gmprime/factorization.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "gmprime/errors.hpp"

namespace gmprime {

const char* to_string(FactorStatus status) {
  switch (status) {
    case FactorStatus::FullyFactored: return "fully_factored";
    case FactorStatus::PartialFactors: return "partial_factors";
    case FactorStatus::NoHit: return "no_hit";
  }
  return "?";
}

FactorProbeResult gm_factor_probe(u64 target, std::span<const u64> moduli) {
  if (target < 2) throw DomainError("factor target must be >= 2, got " + std::to_string(target));
  FactorProbeResult result;
  result.target = target;
  std::vector<u64> sorted(moduli.begin(), moduli.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (u64 d : sorted) {
    if (d < 2) throw DomainError("probe modulus must be >= 2");
    if (target % d == 0) result.hits.push_back({d, target / d});
  }
  result.status = result.hits.empty() ? FactorStatus::NoHit : FactorStatus::PartialFactors;
  return result;
}

namespace {

void note(std::vector<std::string>& trace, const char* stage) {
  if (trace.empty() || trace.back() != stage) trace.emplace_back(stage);
}

u64 smallest_divisor(u64 n) {
  for (u64 p : {2, 3, 5}) {
    if (n % p == 0) return p;
  }
  // Mod-30 wheel: only candidates coprime to 30.
  static constexpr unsigned kStep[8] = {4, 2, 4, 2, 4, 6, 2, 6};
  const u64 limit = isqrt(n);
  constexpr u64 kExactBelow = u64{1} << 16;
  const double nd = static_cast<double>(n);
  unsigned k = 0;
  u64 i = 7;
  for (; i <= limit && i < kExactBelow; i += kStep[k], k = (k + 1) & 7) {
    if (n % i == 0) return i;
  }
  // Past 2^16 the rounded quotient is off by at most one, so the signed
  // remainder lands in {-i, 0, i} exactly when i divides n.
  for (; i <= limit; i += kStep[k], k = (k + 1) & 7) {
    const u64 q = static_cast<u64>(nd / static_cast<double>(i));
    const auto r = static_cast<std::int64_t>(n - q * i);
    const auto si = static_cast<std::int64_t>(i);
    if (r == 0 || r == si || r == -si) return i;
  }
  return n;
}

}  // namespace

FactorProbeResult factor_complete(u64 target, const FactorConfig& config) {
  if (target < 2) throw DomainError("factor target must be >= 2, got " + std::to_string(target));
  if (target > config.cap) {
    throw DomainError("factor target " + std::to_string(target) + " exceeds cap " +
                      std::to_string(config.cap));
  }
  FactorProbeResult result = gm_factor_probe(target, config.moduli);

  std::vector<u64> pending{target};
  while (!pending.empty()) {
    const u64 n = pending.back();
    pending.pop_back();
    if (n == 1) continue;
    const PrimalityVerdict v = hybrid_is_prime(n, config.pipeline);
    if (v.is_prime()) {
      note(result.method_trace, "primality");
      result.factors.push_back(n);
      continue;
    }
    if (v.classification == Classification::ProbablyPrime) {
      throw InvariantError("factor_complete needs a deterministic pipeline; " +
                           std::to_string(n) + " is only probably prime");
    }
    u64 split = 0;
    for (u64 d : config.moduli) {
      if (d >= 2 && d < n && n % d == 0) {
        split = d;
        break;
      }
    }
    if (split != 0) {
      note(result.method_trace, "gm_probe");
    } else {
      split = smallest_divisor(n);
      note(result.method_trace, "trial_division");
      if (split == n) throw InvariantError("composite verdict without a divisor for " +
                                           std::to_string(n));
    }
    pending.push_back(split);
    pending.push_back(n / split);
  }
  std::sort(result.factors.begin(), result.factors.end());
  result.status = FactorStatus::FullyFactored;
  return result;
}

EccPrimeResult ecc_prime_search(unsigned k, u64 c_max, const PipelineConfig& pipeline) {
  if (k < 2) throw DomainError("ecc search requires k >= 2");
  const BigInt power = BigInt(1) << k;
  for (u64 c = 1; c <= c_max; c += 2) {
    if (BigInt(c) + 2 > power) break;
    BigInt p = power - c;
    PrimalityVerdict v = hybrid_is_prime(p, pipeline);
    if (v.classification == Classification::Composite) continue;
    return {k, c, std::move(p), std::move(v), k <= 64};
  }
  throw DomainError("no prime of the form 2^" + std::to_string(k) + " - c with odd c <= " +
                    std::to_string(c_max));
}

RsaChallenge rsa_toy_challenge(unsigned bits, u64 seed) {
  if (bits < 8 || bits > 32) {
    throw DomainError("challenge bits must lie in [8, 32], got " + std::to_string(bits));
  }
  std::mt19937_64 rng(seed);
  const u64 lo = u64{1} << (bits - 1);
  const u64 span = lo;  // [2^(bits-1), 2^bits - 1]
  auto draw_prime = [&] {
    for (;;) {
      const u64 candidate = (lo + rng() % span) | 1U;
      if (hybrid_is_prime(candidate).is_prime()) return candidate;
    }
  };
  const u64 p = draw_prime();
  u64 q = draw_prime();
  while (q == p) q = draw_prime();
  return {bits, seed, std::min(p, q), std::max(p, q), p * q};
}

std::pair<u64, u64> solve_challenge(u64 modulus, const FactorConfig& config) {
  FactorProbeResult r = factor_complete(modulus, config);
  if (r.factors.size() != 2) {
    throw DomainError(std::to_string(modulus) + " is not a product of exactly two primes");
  }
  return {r.factors[0], r.factors[1]};
}

}  // namespace gmprime
