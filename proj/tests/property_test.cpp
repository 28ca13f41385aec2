// Randomized invariant checks. Each property runs over at least 1000
// generated instances from a fixed seed, so failures are reproducible.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "gmprime/gmprime.hpp"
#include "oracles.hpp"

namespace gmprime {
namespace {

using V = std::vector<u64>;
constexpr int kInstances = 1000;

V random_moduli(std::mt19937_64& rng, u64 bound) {
  const std::size_t k = 1 + rng() % 6;
  V out;
  while (out.size() < k) {
    const u64 d = 2 + rng() % std::min<u64>(bound - 1, 60);
    if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
  }
  return out;
}

V random_ascending(std::mt19937_64& rng) {
  V out{rng() % 1000};
  const std::size_t len = 2 + rng() % 60;
  while (out.size() < len) out.push_back(out.back() + 1 + rng() % 50);
  return out;
}

TEST(FilterProperties, MembershipLawAndCountConsistency) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < kInstances; ++i) {
    const u64 n = 61 + rng() % 3000;
    const V moduli = random_moduli(rng, n);
    const bool drop = rng() % 4 == 0;
    FilterOptions opt;
    opt.drop_first_terms = drop;
    opt.segment_size = 64 * (1 + rng() % 8);
    opt.threads = 1 + static_cast<unsigned>(rng() % 3);
    const auto f = build_filter(moduli, n, opt);
    for (u64 m = 0; m <= n; ++m) {
      ASSERT_EQ(f.contains(m), oracle::survives(m, moduli, drop)) << "m=" << m << " case " << i;
    }
    const V listed(f.begin(), f.end());
    ASSERT_EQ(listed.size(), f.survivor_count());
    ASSERT_TRUE(std::is_sorted(listed.begin(), listed.end()));
    ASSERT_EQ(f.survivor_count(), oracle::inclusion_exclusion_count(moduli, n, drop));
  }
}

TEST(FilterProperties, PrimePreservation) {
  std::mt19937_64 rng(2);
  const auto flags = oracle::sieve(100'000);
  for (int i = 0; i < kInstances; ++i) {
    const u64 n = 61 + rng() % (i < 20 ? 99'940 : 5000);
    const auto f = build_filter(random_moduli(rng, n), n);
    for (u64 p = 2; p <= n; ++p) {
      if (flags[p]) ASSERT_TRUE(f.contains(p)) << p;
    }
  }
}

TEST(FilterProperties, CompositeModulusIsRedundant) {
  std::mt19937_64 rng(3);
  const V primes{2, 3, 5, 7, 11, 13};
  for (int i = 0; i < kInstances; ++i) {
    const u64 a = primes[rng() % primes.size()];
    u64 b = primes[rng() % primes.size()];
    const u64 composite = a * b;
    V base{a};
    if (b != a) base.push_back(b);
    const u64 n = std::max<u64>(composite, 200 + rng() % 2000);
    V extended = base;
    extended.push_back(composite);
    const auto f1 = build_filter(base, n);
    const auto f2 = build_filter(extended, n);
    for (u64 m = 2; m <= n; ++m) {
      if (m != composite) ASSERT_EQ(f1.contains(m), f2.contains(m)) << m;
    }
  }
}

TEST(PrimalityProperties, DecomposeRoundTrip) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 10'000; ++i) {
    const u64 n = (rng() | 1U) | 2U;  // odd, >= 3
    const auto [s, d] = decompose(n);
    ASSERT_EQ(d % 2, 1U);
    ASSERT_EQ((static_cast<u128>(d) << s) + 1, static_cast<u128>(n));
  }
}

TEST(PrimalityProperties, WitnessesAreVerifiable) {
  std::mt19937_64 rng(5);
  int composites = 0;
  for (int i = 0; i < 20'000 && composites < kInstances; ++i) {
    const u64 n = 5 + rng() % 1'000'000'000ULL;
    auto v = miller_rabin(n, FixedBases{{2, 3, 5}});
    if (const auto* w = std::get_if<evidence::Witness>(&v.evidence)) {
      ++composites;
      ASSERT_EQ(miller_rabin_single(n, w->base), MrOutcome::WitnessOfCompositeness);
      ASSERT_FALSE(oracle::trial_is_prime(n));
    }
    if (const auto* d = std::get_if<evidence::Divisor>(&v.evidence)) {
      ASSERT_TRUE(d->value > 1 && d->value < n && n % d->value == 0);
    }
  }
  EXPECT_GE(composites, kInstances);
}

TEST(PrimalityProperties, StrategyDeterminism) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < kInstances; ++i) {
    const u64 n = 5 + rng() % (u64{1} << 40);
    const u64 seed = rng();
    AdaptiveBases adaptive;
    adaptive.seed = seed;
    adaptive.smoothness_bound = 3 + rng() % 50;
    auto weighted = WeightedBases::uniform(FixedBases::deterministic64().bases, 5, seed);
    weighted.weights[3] += rng() % 3;
    for (const BaseStrategy& s : {BaseStrategy{adaptive}, BaseStrategy{weighted}}) {
      const auto a = miller_rabin(n, s);
      const auto b = miller_rabin(n, s);
      ASSERT_EQ(a.bases_tested, b.bases_tested);
      ASSERT_EQ(a.classification, b.classification);
      ASSERT_EQ(a.evidence, b.evidence);
    }
  }
}

TEST(PrimalityProperties, PipelineMonotonicity) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < kInstances; ++i) {
    const u64 n = rng() % 50'000;
    PipelineConfig minimal;
    minimal.moduli.clear();
    minimal.trial_bound = 0;
    minimal.strategy = FixedBases{{2}};

    PipelineConfig with_screen = minimal;
    with_screen.moduli = default_moduli(5);
    PipelineConfig with_trial = with_screen;
    with_trial.trial_bound = 50;
    PipelineConfig with_aks = with_trial;
    with_aks.aks_confirm = true;
    PipelineConfig full = with_aks;
    full.strategy = FixedBases::deterministic64();

    Classification prev = hybrid_is_prime(n, minimal).classification;
    for (const auto* cfg : {&with_screen, &with_trial, &with_aks, &full}) {
      const Classification next = hybrid_is_prime(n, *cfg).classification;
      if (prev != Classification::ProbablyPrime) ASSERT_EQ(next, prev) << n;
      prev = next;
    }
    ASSERT_EQ(prev == Classification::Prime, oracle::trial_is_prime(n)) << n;
  }
}

TEST(GapProperties, TelescopingAndHistogramConservation) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < kInstances; ++i) {
    const V values = random_ascending(rng);
    const auto seq = extract_gaps(values);
    ASSERT_EQ(seq.gaps.size(), values.size() - 1);
    ASSERT_EQ(std::accumulate(seq.gaps.begin(), seq.gaps.end(), u64{0}),
              values.back() - values.front());
    const u64 width = 1 + rng() % 10;
    u64 total = 0;
    for (const auto& [bin, count] : histogram(seq, width)) total += count;
    ASSERT_EQ(total, seq.gaps.size());
  }
}

TEST(GapProperties, VarianceTwoWays) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < kInstances; ++i) {
    const auto seq = extract_gaps(random_ascending(rng));
    const auto r = moments(seq);
    long double sum_sq = 0;
    for (u64 g : seq.gaps) sum_sq += static_cast<long double>(g) * g;
    const double raw = static_cast<double>(sum_sq / seq.gaps.size()) - r.mean * r.mean;
    ASSERT_NEAR(raw, r.variance, 1e-9 * std::max(1.0, r.variance));
    ASSERT_GE(r.variance, 0.0);
  }
}

TEST(GapProperties, ScaleCovariance) {
  std::mt19937_64 rng(10);
  for (int i = 0; i < kInstances; ++i) {
    const V values = random_ascending(rng);
    const u64 c = 2 + rng() % 9;
    V scaled;
    for (u64 v : values) scaled.push_back(v * c);
    const auto a = moments(extract_gaps(values));
    const auto b = moments(extract_gaps(scaled));
    const double cd = static_cast<double>(c);
    ASSERT_NEAR(b.mean, a.mean * cd, 1e-9 * b.mean);
    ASSERT_EQ(b.max_gap, a.max_gap * c);
    ASSERT_NEAR(b.variance, a.variance * cd * cd, 1e-9 * std::max(1.0, b.variance));
  }
}

TEST(FactorProperties, ProbeSoundness) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < kInstances; ++i) {
    const u64 target = 2 + rng() % 10'000'000;
    const auto r = gm_factor_probe(target, random_moduli(rng, 100));
    for (const auto& h : r.hits) ASSERT_EQ(h.modulus * h.cofactor, target);
    ASSERT_EQ(r.status == FactorStatus::NoHit, r.hits.empty());
  }
}

TEST(FactorProperties, CompleteFactorizationOfRandomTargets) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < kInstances; ++i) {
    const u64 target = 2 + rng() % 1'000'000'000'000ULL;
    const auto r = factor_complete(target);
    u64 product = 1;
    for (u64 f : r.factors) {
      ASSERT_TRUE(hybrid_is_prime(f).is_prime());
      product *= f;
    }
    ASSERT_EQ(product, target);
  }
}

TEST(FactorProperties, EccMinimality) {
  for (unsigned k = 2; k <= 24; ++k) {
    const auto r = ecc_prime_search(k, 1u << 12);
    const u64 power = u64{1} << k;
    ASSERT_TRUE(oracle::trial_is_prime(power - r.c)) << k;
    for (u64 c = 1; c < r.c; c += 2) ASSERT_FALSE(oracle::trial_is_prime(power - c)) << k;
  }
}

TEST(FactorProperties, ChallengeRoundTripHundredPerSize) {
  for (unsigned bits : {8U, 12U, 16U, 20U, 24U, 28U, 32U}) {
    for (u64 seed = 0; seed < 100; ++seed) {
      const auto c = rsa_toy_challenge(bits, seed * 7919 + bits);
      ASSERT_TRUE(oracle::trial_is_prime(c.p) && oracle::trial_is_prime(c.q));
      ASSERT_EQ(solve_challenge(c.modulus), std::make_pair(c.p, c.q)) << bits << "/" << seed;
    }
  }
}

}  // namespace
}  // namespace gmprime
