#include "gmprime/primality.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <set>
#include <string>

#include "gmprime/errors.hpp"

namespace gmprime {

const char* to_string(Classification c) {
  switch (c) {
    case Classification::Prime: return "prime";
    case Classification::Composite: return "composite";
    case Classification::ProbablyPrime: return "probably_prime";
  }
  return "?";
}

const char* to_string(Method m) {
  switch (m) {
    case Method::TrialDivision: return "trial_division";
    case Method::MillerRabin: return "miller_rabin";
    case Method::AKS: return "aks";
    case Method::Pipeline: return "pipeline";
  }
  return "?";
}

const char* to_string(Stage s) {
  switch (s) {
    case Stage::None: return "none";
    case Stage::DivisibilityScreen: return "gm_screen";
    case Stage::TrialDivision: return "trial_division";
    case Stage::MillerRabin: return "miller_rabin";
    case Stage::AKS: return "aks";
  }
  return "?";
}

PrimalityVerdict is_prime_trial(std::int64_t num) {
  PrimalityVerdict v;
  v.method = Method::TrialDivision;
  if (num <= 1) {
    v.evidence = evidence::ByConvention{};
    return v;
  }
  const auto n = static_cast<u64>(num);
  for (u64 i = 2; i <= n / i; ++i) {
    if (n % i == 0) {
      v.evidence = evidence::Divisor{i};
      return v;
    }
  }
  v.classification = Classification::Prime;
  return v;
}

PowDecomposition decompose(u64 n) {
  if (n < 3 || n % 2 == 0) {
    throw DomainError("decompose requires an odd n >= 3, got " + std::to_string(n));
  }
  u64 d = n - 1;
  auto s = static_cast<unsigned>(std::countr_zero(d));
  return {s, d >> s};
}

MrOutcome miller_rabin_single(u64 n, u64 base) {
  if (n < 3 || n % 2 == 0) throw DomainError("Miller-Rabin requires an odd n >= 3");
  if (base < 2 || base > n - 2) {
    throw DomainError("base " + std::to_string(base) + " outside [2, n-2] for n=" +
                      std::to_string(n));
  }
  const auto [s, d] = decompose(n);
  u64 x = pow_mod(base, d, n);
  if (x == 1 || x == n - 1) return MrOutcome::ConsistentWithPrime;
  for (unsigned i = 1; i < s; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return MrOutcome::ConsistentWithPrime;
  }
  return MrOutcome::WitnessOfCompositeness;
}

MrOutcome miller_rabin_single(const BigInt& n, u64 base) {
  if (auto small = to_u64(n)) return miller_rabin_single(*small, base);
  if ((n & 1) == 0) throw DomainError("Miller-Rabin requires an odd n >= 3");
  if (base < 2) throw DomainError("base must be >= 2");
  const BigInt n_minus_1 = n - 1;
  const auto s = static_cast<unsigned>(boost::multiprecision::lsb(n_minus_1));
  const BigInt d = n_minus_1 >> s;
  BigInt x = boost::multiprecision::powm(BigInt(base), d, n);
  if (x == 1 || x == n_minus_1) return MrOutcome::ConsistentWithPrime;
  for (unsigned i = 1; i < s; ++i) {
    x = (x * x) % n;
    if (x == n_minus_1) return MrOutcome::ConsistentWithPrime;
  }
  return MrOutcome::WitnessOfCompositeness;
}

// ---------------------------------------------------------------------------

namespace {

constexpr u64 kDeterministic64[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

u64 splitmix64(u64 x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Up to `count` distinct values in [lo, hi], drawn from a generator seeded
// by (seed, n) so the sequence is reproducible for a given candidate.
std::vector<u64> sample_range(u64 lo, u64 hi, unsigned count, u64 seed, u64 n) {
  std::vector<u64> out;
  if (hi < lo) return out;
  const u64 span = hi - lo + 1;
  const u64 want = std::min<u64>(count, span);
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(n)));
  std::set<u64> seen;
  while (out.size() < want) {
    u64 v = lo + rng() % span;
    if (seen.insert(v).second) out.push_back(v);
  }
  return out;
}

}  // namespace

FixedBases FixedBases::deterministic64() {
  return {std::vector<u64>(std::begin(kDeterministic64), std::end(kDeterministic64))};
}

bool FixedBases::is_deterministic64() const {
  return std::all_of(std::begin(kDeterministic64), std::end(kDeterministic64), [&](u64 b) {
    return std::find(bases.begin(), bases.end(), b) != bases.end();
  });
}

WeightedBases WeightedBases::uniform(std::span<const u64> bases, unsigned rounds, u64 seed) {
  WeightedBases w;
  for (u64 b : bases) w.weights[b] = 1;
  w.rounds = rounds;
  w.seed = seed;
  return w;
}

std::vector<u64> WeightedBases::order() const {
  std::vector<std::pair<u64, u64>> ranked(weights.begin(), weights.end());
  std::sort(ranked.begin(), ranked.end(), [this](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    const u64 ka = splitmix64(seed ^ a.first);
    const u64 kb = splitmix64(seed ^ b.first);
    return ka != kb ? ka < kb : a.first < b.first;
  });
  std::vector<u64> out;
  for (std::size_t i = 0; i < ranked.size() && i < rounds; ++i) out.push_back(ranked[i].first);
  return out;
}

WeightedBases update_weights(WeightedBases strategy, WitnessEvent outcome) {
  auto it = strategy.weights.find(outcome.base);
  if (it == strategy.weights.end()) {
    throw DomainError("base " + std::to_string(outcome.base) + " has no weight entry");
  }
  if (outcome.witnessed) it->second += strategy.reward;
  it->second = std::max(it->second, strategy.floor);
  return strategy;
}

WeightedBases merge_outcomes(WeightedBases strategy, std::span<const WitnessEvent> events) {
  for (const auto& e : events) strategy = update_weights(std::move(strategy), e);
  return strategy;
}

std::vector<WitnessEvent> outcome_events(const PrimalityVerdict& verdict) {
  std::vector<WitnessEvent> events;
  const auto* witness = std::get_if<evidence::Witness>(&verdict.evidence);
  for (u64 b : verdict.bases_tested) {
    events.push_back({b, witness != nullptr && witness->base == b});
  }
  return events;
}

std::vector<u64> adaptive_bases(u64 n, const AdaptiveBases& policy) {
  if (n < 5 || n % 2 == 0) throw DomainError("adaptive base selection requires odd n >= 5");
  const auto [s, d] = decompose(n);
  if (is_smooth(d, policy.smoothness_bound)) return policy.small_bases;
  return sample_range(2, n - 2, policy.rounds, policy.seed, n);
}

std::vector<u64> select_bases(u64 n, const BaseStrategy& strategy) {
  std::vector<u64> raw;
  if (const auto* fixed = std::get_if<FixedBases>(&strategy)) {
    raw = fixed->bases;
  } else if (const auto* weighted = std::get_if<WeightedBases>(&strategy)) {
    raw = weighted->order();
  } else if (n >= 5 && n % 2 == 1) {
    raw = adaptive_bases(n, std::get<AdaptiveBases>(strategy));
  }
  std::vector<u64> out;
  if (n < 5) return out;
  for (u64 a : raw) {
    const u64 r = a % n;
    if (r < 2 || r > n - 2) continue;
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  }
  return out;
}

PrimalityVerdict miller_rabin(u64 n, const BaseStrategy& strategy) {
  PrimalityVerdict v;
  v.method = Method::MillerRabin;
  if (n < 2) {
    v.evidence = evidence::ByConvention{};
    return v;
  }
  if (n == 2 || n == 3) {
    v.classification = Classification::Prime;
    return v;
  }
  if (n % 2 == 0) {
    v.evidence = evidence::Divisor{2};
    return v;
  }
  for (u64 a : select_bases(n, strategy)) {
    v.bases_tested.push_back(a);
    if (miller_rabin_single(n, a) == MrOutcome::WitnessOfCompositeness) {
      v.evidence = evidence::Witness{a};
      return v;
    }
  }
  const auto* fixed = std::get_if<FixedBases>(&strategy);
  v.classification = (fixed != nullptr && fixed->is_deterministic64())
                         ? Classification::Prime
                         : Classification::ProbablyPrime;
  v.evidence = evidence::Rounds{static_cast<unsigned>(v.bases_tested.size())};
  return v;
}

namespace {

std::vector<u64> select_bases_big(const BigInt& n, const BaseStrategy& strategy) {
  if (const auto* fixed = std::get_if<FixedBases>(&strategy)) return fixed->bases;
  if (const auto* weighted = std::get_if<WeightedBases>(&strategy)) return weighted->order();
  const auto& policy = std::get<AdaptiveBases>(strategy);
  const BigInt n_minus_1 = n - 1;
  BigInt d = n_minus_1 >> static_cast<unsigned>(boost::multiprecision::lsb(n_minus_1));
  for (u64 p = 2; p <= policy.smoothness_bound && d > 1; ++p) {
    while (d % p == 0) d /= p;
  }
  if (d == 1) return policy.small_bases;
  const u64 fold = static_cast<u64>(n & BigInt(~u64{0}));
  return sample_range(2, ~u64{0}, policy.rounds, policy.seed, fold);
}

}  // namespace

PrimalityVerdict miller_rabin(const BigInt& n, const BaseStrategy& strategy) {
  if (auto small = to_u64(n)) return miller_rabin(*small, strategy);
  PrimalityVerdict v;
  v.method = Method::MillerRabin;
  if ((n & 1) == 0) {
    v.evidence = evidence::Divisor{2};
    return v;
  }
  for (u64 a : select_bases_big(n, strategy)) {
    if (a < 2) continue;
    v.bases_tested.push_back(a);
    if (miller_rabin_single(n, a) == MrOutcome::WitnessOfCompositeness) {
      v.evidence = evidence::Witness{a};
      return v;
    }
  }
  v.classification = Classification::ProbablyPrime;
  v.evidence = evidence::Rounds{static_cast<unsigned>(v.bases_tested.size())};
  return v;
}

}  // namespace gmprime
