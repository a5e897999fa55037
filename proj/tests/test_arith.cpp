#include <gtest/gtest.h>

#include <limits>
#include <random>
#include <stdexcept>

#include "axby/arith.hpp"
#include "oracles.hpp"

using namespace axby;

TEST(Arith, GcdAndSquareRoots) {
  EXPECT_EQ(gcd(12, 18), 6u);
  EXPECT_EQ(gcd(0, 7), 7u);
  EXPECT_EQ(gcd(7, 0), 7u);
  EXPECT_EQ(isqrt(0), 0u);
  EXPECT_EQ(isqrt(3), 1u);
  EXPECT_EQ(isqrt(4), 2u);
  EXPECT_EQ(isqrt(11620999), 3408u);
  EXPECT_EQ(isqrt(std::numeric_limits<u64>::max()), 4294967295u);
  EXPECT_TRUE(is_square(1587600));
  EXPECT_FALSE(is_square(1587601));
  for (u64 n = 0; n <= 20000; ++n) {
    ASSERT_EQ(isqrt(n), oracle::isqrt(n)) << n;
  }
  for (u64 r : {999'999ULL, 1'000'000ULL, 4'294'967'295ULL}) {
    EXPECT_EQ(isqrt(r * r), r);
    EXPECT_EQ(isqrt(r * r - 1), r - 1);
    EXPECT_TRUE(is_square(r * r));
  }
}

TEST(Arith, PrimalityMatchesTrialDivision) {
  for (u64 n = 0; n <= 100'000; ++n) ASSERT_EQ(is_prime(n), oracle::is_prime(n)) << n;
  EXPECT_TRUE(is_prime(999'999'999'989ULL));
  EXPECT_FALSE(is_prime(999'999'999'987ULL));
  EXPECT_TRUE(is_prime(18'446'744'073'709'551'557ULL));
  EXPECT_FALSE(is_prime(3'215'031'751ULL));  // strong pseudoprime to 2, 3, 5, 7
}

TEST(Arith, CheckedArithmeticThrows) {
  const u64 big = std::numeric_limits<u64>::max();
  EXPECT_THROW(checked_mul(big, u64{2}), std::overflow_error);
  EXPECT_THROW(checked_add(big, u64{1}), std::overflow_error);
  EXPECT_EQ(checked_mul(u64{1} << 32, (u64{1} << 32) - 1), (u64{1} << 32) * ((u64{1} << 32) - 1));
  const u128 huge = ~u128{0};
  EXPECT_THROW(checked_mul(huge, u128{2}), std::overflow_error);
  EXPECT_THROW(checked_add(huge, u128{1}), std::overflow_error);
}

TEST(Arith, PrimesUpTo) {
  const auto primes = primes_up_to(1000);
  std::vector<u32> want;
  for (u32 p = 0; p <= 1000; ++p) {
    if (oracle::is_prime(p)) want.push_back(p);
  }
  EXPECT_EQ(primes, want);
  EXPECT_TRUE(primes_up_to(1).empty());
}

TEST(Arith, FactorizationExamples) {
  EXPECT_TRUE(factorize(1).factors.empty());
  const Factorization f12 = factorize(12);
  EXPECT_EQ(f12.factors, (std::vector<PrimePower>{{2, 2}, {3, 1}}));
  const Factorization champ = factorize(21'621'600);
  EXPECT_EQ(champ.factors,
            (std::vector<PrimePower>{{2, 5}, {3, 3}, {5, 2}, {7, 1}, {11, 1}, {13, 1}}));
  EXPECT_THROW(factorize(0), std::domain_error);
  const u64 semiprime = 999'983ULL * 1'000'003ULL;
  EXPECT_EQ(factorize(semiprime).factors,
            (std::vector<PrimePower>{{999'983, 1}, {1'000'003, 1}}));
  EXPECT_EQ(factorize(999'999'999'989ULL).factors.size(), 1u);
}

TEST(Arith, FactorizationReconstructsAndCountsDivisors) {
  for (u64 n = 1; n <= 1'000'000; ++n) {
    const Factorization f = factorize(n);
    ASSERT_EQ(f.value(), n);
    for (std::size_t i = 1; i < f.factors.size(); ++i) {
      ASSERT_LT(f.factors[i - 1].prime, f.factors[i].prime);
    }
    if (n <= 5000) {
      ASSERT_EQ(divisors(n), oracle::divisors(n)) << n;
    }
    if (n % 97 == 0) {
      ASSERT_EQ(divisors(f).size(), theta(n)) << n;
    }
  }
}

TEST(Arith, DivisorExamples) {
  EXPECT_EQ(divisors(1), (std::vector<u64>{1}));
  EXPECT_EQ(divisors(6), (std::vector<u64>{1, 2, 3, 6}));
  EXPECT_EQ(divisors(110), (std::vector<u64>{1, 2, 5, 10, 11, 22, 55, 110}));
  EXPECT_EQ(theta(9), 3u);
  EXPECT_EQ(theta_odd(10), 2u);
  EXPECT_EQ(theta_odd(16), 1u);
  EXPECT_EQ(theta(21'621'600), 576u);
}

TEST(Arith, ThetaMatchesOracle) {
  for (u64 n = 1; n <= 20'000; ++n) {
    ASSERT_EQ(theta(n), oracle::theta(n)) << n;
    ASSERT_EQ(theta_odd(n), oracle::theta_odd(n)) << n;
  }
}

TEST(Arith, ThetaRangeExamples) {
  EXPECT_EQ(theta_range(1, 6), (std::vector<u32>{1, 2, 2, 3, 2, 4}));
  EXPECT_EQ(theta_range(21'621'600, 21'621'600), (std::vector<u32>{576}));
  const auto counts = theta_range(2, 100'000);
  for (u64 n = 2; n <= 100'000; ++n) {
    if (oracle::is_prime(n)) ASSERT_EQ(counts[n - 2], 2u) << n;
  }
}

TEST(Arith, ThetaRangeAgreesAcrossSegmentSizes) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const u64 lo = 1 + rng() % 2'000'000;
    const u64 hi = lo + rng() % 3000;
    const std::size_t segment = 1 + rng() % 500;
    const auto counts = theta_range(lo, hi, segment);
    ASSERT_EQ(counts.size(), hi - lo + 1);
    for (u64 n = lo; n <= hi; ++n) ASSERT_EQ(counts[n - lo], oracle::theta(n)) << n;
  }
  const u64 lo = 999'999'990'000ULL;
  const auto far = theta_range(lo, lo + 200, 64);
  for (u64 i = 0; i <= 200; ++i) ASSERT_EQ(far[i], theta(lo + i));
}

TEST(Arith, SegmentsAreContiguous) {
  u64 expected = 17;
  for_each_theta_segment(17, 1000, 100, [&](u64 first, std::span<const u32> counts) {
    EXPECT_EQ(first, expected);
    EXPECT_LE(counts.size(), 100u);
    expected += counts.size();
  });
  EXPECT_EQ(expected, 1001u);
}

TEST(Arith, ModularInverse) {
  EXPECT_EQ(mod_inverse(3, 7), 5u);
  EXPECT_EQ(mod_inverse(1, 9), 1u);
  EXPECT_THROW(mod_inverse(2, 4), std::domain_error);
  EXPECT_THROW(mod_inverse(1, 1), std::domain_error);
  for (u64 m = 2; m <= 300; ++m) {
    for (u64 a = 1; a <= 2 * m; ++a) {
      if (std::gcd(a, m) != 1) continue;
      const u64 inv = mod_inverse(a, m);
      ASSERT_GE(inv, 1u);
      ASSERT_LT(inv, m);
      ASSERT_EQ(a * inv % m, 1 % m) << a << " " << m;
    }
  }
  const u64 m = 999'999'999'989ULL;
  const u64 inv = mod_inverse(123'456'789, m);
  EXPECT_EQ(static_cast<u64>(u128{123'456'789} * inv % m), 1u);
}
