#pragma once

// Divisibility probes against GM moduli, small-scale complete factorization,
// pseudo-Mersenne prime search (2^k - c), and toy RSA moduli.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gmprime/arith.hpp"
#include "gmprime/primality.hpp"

namespace gmprime {

enum class FactorStatus { FullyFactored, PartialFactors, NoHit };
const char* to_string(FactorStatus status);

struct FactorHit {
  u64 modulus;
  u64 cofactor;
  bool operator==(const FactorHit&) const = default;
};

struct FactorProbeResult {
  u64 target = 0;
  std::vector<FactorHit> hits;  // ascending by modulus
  FactorStatus status = FactorStatus::NoHit;
  /// Prime factors with multiplicity, ascending. Filled by factor_complete.
  std::vector<u64> factors;
  /// Stages that produced a split, in the order they fired.
  std::vector<std::string> method_trace;
};

/// Every modulus dividing target, with its exact cofactor. Requires target >= 2.
FactorProbeResult gm_factor_probe(u64 target, std::span<const u64> moduli);

struct FactorConfig {
  std::vector<u64> moduli = first_primes(25);
  u64 cap = ~u64{0};
  PipelineConfig pipeline{};
};

/// Splits on GM hits first, then falls back to trial division, recursing
/// until every part is confirmed prime by the hybrid pipeline.
FactorProbeResult factor_complete(u64 target, const FactorConfig& config = {});

struct EccPrimeResult {
  unsigned k;
  u64 c;
  BigInt p;  // 2^k - c
  PrimalityVerdict verdict;
  /// False when k > 64: the verdict can only be ProbablyPrime.
  bool deterministic;
};

/// Smallest odd c <= c_max with 2^k - c prime. Requires k >= 2.
EccPrimeResult ecc_prime_search(unsigned k, u64 c_max, const PipelineConfig& pipeline = {});

struct RsaChallenge {
  unsigned bits;
  u64 seed;
  u64 p;
  u64 q;
  u64 modulus;  // p * q
};

/// Two distinct `bits`-bit primes (top bit set), deterministic in seed.
/// Requires 8 <= bits <= 32.
RsaChallenge rsa_toy_challenge(unsigned bits, u64 seed);

/// Recovers (p, q), p <= q, from a product of exactly two primes.
std::pair<u64, u64> solve_challenge(u64 modulus, const FactorConfig& config = {});

}  // namespace gmprime
