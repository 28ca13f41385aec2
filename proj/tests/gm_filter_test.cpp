#include "gmprime/gm_filter.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "gmprime/errors.hpp"
#include "oracles.hpp"

namespace gmprime {
namespace {

using V = std::vector<std::uint64_t>;

TEST(GmSetTest, EnumeratesMultiples) {
  EXPECT_EQ(gm_set(2, 15).elements(), (V{3, 6, 9, 12, 15}));
  EXPECT_EQ(gm_set(4, 30).elements(), (V{5, 10, 15, 20, 25, 30}));
  EXPECT_EQ(gm_set(6, 35).elements(), (V{7, 14, 21, 28, 35}));
}

TEST(GmSetTest, CardinalityAndFirstTerm) {
  for (std::uint64_t d = 2; d < 40; ++d) {
    for (std::uint64_t n = d; n < 200; n += 7) {
      GmSet s(d, n);
      auto e = s.elements();
      ASSERT_EQ(e.size(), n / d);
      EXPECT_EQ(e.front(), d);
      for (std::size_t i = 1; i < e.size(); ++i) {
        EXPECT_LT(oracle::smallest_divisor(e[i]), e[i]) << "non-first term must be composite";
      }
    }
  }
}

TEST(GmSetTest, RejectsBadArguments) {
  EXPECT_THROW(gm_set(0, 10), DomainError);
  EXPECT_THROW(gm_set(4, 4), DomainError);
  EXPECT_THROW(GmSet(1, 10), DomainError);
  EXPECT_NO_THROW(gm_set(4, 5));
}

TEST(GmSetTest, Contains) {
  GmSet s(5, 100);
  EXPECT_TRUE(s.contains(15));
  EXPECT_FALSE(s.contains(7));
  EXPECT_FALSE(s.contains(105));
  EXPECT_FALSE(s.contains(0));
  EXPECT_TRUE(s.contains(100));
}

TEST(CandidateFilterTest, SmallPrimesModuli) {
  const V moduli{2, 3, 5};
  auto f = build_filter(moduli, 30);
  EXPECT_EQ(f.survivors(), (V{2, 3, 5, 7, 11, 13, 17, 19, 23, 29}));
  EXPECT_EQ(survivor_count(f), 10U);
}

TEST(CandidateFilterTest, SingleModulus) {
  const V five{5};
  auto f = build_filter(five, 30);
  V expected;
  for (std::uint64_t m = 2; m <= 30; ++m) {
    if (m == 5 || m % 5 != 0) expected.push_back(m);
  }
  EXPECT_EQ(f.survivors(), expected);

  auto g = build_filter(five, 12);
  EXPECT_EQ(g.survivors(), (V{2, 3, 4, 5, 6, 7, 8, 9, 11, 12}));

  const V two{2};
  EXPECT_EQ(survivor_count(build_filter(two, 10)), 5U);
}

TEST(CandidateFilterTest, CompositeSurvivorsExist) {
  const V moduli{2, 3, 5};
  EXPECT_TRUE(build_filter(moduli, 60).contains(49));
  const V two_three{2, 3};
  auto f = build_filter(two_three, 25);
  EXPECT_TRUE(f.contains(25));
  auto it = f.begin();
  EXPECT_EQ(*it++, 2U);
  EXPECT_EQ(*it++, 3U);
  EXPECT_EQ(*it, 5U);
}

TEST(CandidateFilterTest, IterationIsRestartable) {
  const V moduli{2, 3, 5};
  auto f = build_filter(moduli, 30);
  V first(f.begin(), f.end());
  V second(f.begin(), f.end());
  EXPECT_EQ(first, second);
  EXPECT_EQ(first.size(), f.survivor_count());
}

TEST(CandidateFilterTest, DropFirstTermsRemovesModuli) {
  const V five{5};
  FilterOptions opt;
  opt.drop_first_terms = true;
  auto f = build_filter(five, 30, opt);
  EXPECT_FALSE(f.contains(5));
  EXPECT_TRUE(f.contains(7));
  EXPECT_EQ(f.survivors(), oracle::brute_survivors(five, 30, true));
}

TEST(CandidateFilterTest, RejectsBadModuli) {
  EXPECT_THROW(build_filter(V{}, 30), DomainError);
  EXPECT_THROW(build_filter(V{2, 31}, 30), DomainError);
  EXPECT_THROW(build_filter(V{3, 2, 3}, 30), DomainError);
  EXPECT_THROW(build_filter(V{1, 2}, 30), DomainError);
  EXPECT_THROW(build_filter(V{2}, 1), DomainError);
}

TEST(CandidateFilterTest, UnsortedModuliAreNormalized) {
  auto f = build_filter(V{5, 2, 3}, 30);
  EXPECT_EQ(f.moduli(), (V{2, 3, 5}));
}

TEST(CandidateFilterTest, SurvivorsInWindow) {
  auto f = build_filter(V{2, 3, 5}, 100);
  EXPECT_EQ(f.survivors_in(40, 60), (V{41, 43, 47, 49, 53, 59}));
  EXPECT_TRUE(f.survivors_in(200, 300).empty());
}

TEST(CandidateFilterTest, SegmentationAndThreadsDoNotChangeSurvivors) {
  const V moduli{2, 3, 5, 7, 11, 13};
  const auto reference = build_filter(moduli, 100'000).survivors();
  for (std::uint64_t seg : {64ULL, 100ULL, 4096ULL, 1ULL << 20}) {
    for (unsigned threads : {1U, 4U}) {
      FilterOptions opt;
      opt.segment_size = seg;
      opt.threads = threads;
      EXPECT_EQ(build_filter(moduli, 100'000, opt).survivors(), reference)
          << "segment=" << seg << " threads=" << threads;
    }
  }
}

TEST(CandidateFilterTest, ScanMatchesFilter) {
  const V moduli{2, 3, 5, 7};
  const auto f = build_filter(moduli, 50'000);
  for (unsigned threads : {1U, 3U}) {
    FilterOptions opt;
    opt.segment_size = 1000;
    opt.threads = threads;
    V streamed;
    scan_survivors(moduli, 1234, 50'000, opt, [&](std::uint64_t m) { streamed.push_back(m); });
    EXPECT_EQ(streamed, f.survivors_in(1234, 50'000));
  }
}

TEST(CandidateFilterTest, MillionWithSmallPrimeModuli) {
  const V moduli{2, 3, 5};
  auto f = build_filter(moduli, 1'000'000);
  const auto exact = oracle::inclusion_exclusion_count(moduli, 1'000'000);
  EXPECT_EQ(exact, 266'668U);
  EXPECT_EQ(f.survivor_count(), exact);
  EXPECT_LT(std::abs(static_cast<double>(f.survivor_count()) - 266'666.7) / 266'666.7, 0.005);
}

TEST(CandidateFilterTest, DensityForFirstPrimes) {
  for (std::size_t k : {1U, 3U, 5U, 8U}) {
    const V moduli = default_moduli(k);
    auto f = build_filter(moduli, 1'000'000);
    double density = 1.0;
    for (auto p : moduli) density *= 1.0 - 1.0 / static_cast<double>(p);
    const double frac = static_cast<double>(f.survivor_count()) / 1e6;
    EXPECT_NEAR(frac / density, 1.0, 0.005) << "k=" << k;
    EXPECT_EQ(f.survivor_count(), oracle::inclusion_exclusion_count(moduli, 1'000'000));
  }
}

TEST(DefaultModuliTest, FirstTwentyFivePrimes) {
  auto m = default_moduli();
  ASSERT_EQ(m.size(), 25U);
  EXPECT_EQ(m.front(), 2U);
  EXPECT_EQ(m.back(), 97U);
  EXPECT_THROW(default_moduli(0), DomainError);
}

TEST(EratosthenesTest, MatchesOracle) {
  EXPECT_EQ(eratosthenes_primes(100'000), oracle::primes_upto(100'000));
  EXPECT_EQ(eratosthenes_primes(1'000'000).size(), 78'498U);
  EXPECT_TRUE(eratosthenes_primes(1).empty());
}

}  // namespace
}  // namespace gmprime
