#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "axby/bounds.hpp"
#include "axby/solver.hpp"
#include "oracles.hpp"

using namespace axby;

TEST(Bounds, DivisorSumExamples) {
  const Lemma1Result a = lemma1_sum(22, 1.0);
  EXPECT_EQ(a.sum, 18u);
  EXPECT_EQ(a.terms, 4u);
  EXPECT_NEAR(a.bound, 29.51, 0.01);
  const Lemma1Result b = lemma1_sum(22, std::sqrt(22.0));
  EXPECT_EQ(b.sum, 4u);
  EXPECT_EQ(b.terms, 1u);
  const Lemma1Result c = lemma1_sum(1'000'000, 2.95);
  EXPECT_LT(static_cast<double>(c.sum), c.bound);
  EXPECT_THROW(lemma1_sum(21, 1.0), std::domain_error);
  EXPECT_THROW(lemma1_sum(100, 10.5), std::domain_error);
  EXPECT_THROW(lemma1_sum(100, 0.5), std::domain_error);
}

TEST(Bounds, DivisorSumStrictOnSweep) {
  for (u64 n = 22; n <= 10'000; ++n) {
    const double root = std::floor(std::sqrt(static_cast<double>(n)));
    for (double alpha : {1.0, 2.0, 2.95, root}) {
      if (alpha * alpha > static_cast<double>(n)) continue;
      const Lemma1Result r = lemma1_sum(n, alpha);
      u64 want = 0;
      const u64 terms = static_cast<u64>(std::floor(std::sqrt(static_cast<double>(n)) / alpha));
      for (u64 k = 1; k <= terms; ++k) want += oracle::theta(n - k);
      ASSERT_EQ(r.sum, want) << n << " " << alpha;
      ASSERT_LT(static_cast<double>(r.sum), r.bound) << n << " " << alpha;
    }
  }
}

TEST(Bounds, PairCountBounds) {
  EXPECT_NEAR(theorem1_bound(4, 1.0), 2 * std::log(4.0) + 6.4 + 7.0 / 3.0, 1e-12);
  EXPECT_NEAR(theorem1_prime_bound(4, 1.0), 2 * std::log(4.0) + 6.4 + 14.0 / 3.0, 1e-12);
  EXPECT_LT(static_cast<double>(rho_counts(2, 1).rho), theorem1_bound(2, 1.0));
  for (const RhoEntry& e : rho_table(360)) {
    EXPECT_LT(static_cast<double>(e.counts.rho), theorem1_bound(360, 2.95));
  }
  EXPECT_THROW(theorem1_bound(4, 2.5), std::domain_error);
}

TEST(Bounds, PairCountBoundsOnSweep) {
  for (u64 n = 2; n <= 3000; ++n) {
    const auto table = rho_table(n);
    for (double alpha : {1.0, 1.5, 2.95}) {
      if (alpha * alpha > static_cast<double>(n)) continue;
      for (const RhoEntry& e : table) {
        ASSERT_LT(static_cast<double>(e.counts.rho), theorem1_bound(n, alpha)) << n;
        ASSERT_LT(static_cast<double>(e.counts.rho_prime), theorem1_prime_bound(n, alpha)) << n;
      }
    }
  }
}

TEST(Bounds, GFormsMatchDirectFormulas) {
  EXPECT_NEAR(g(4, 1.0), 2 * std::log(4.0) + 6.4 + 14.0 / 3.0, 1e-12);
  for (double n : {10.0, 1e3, 5045040.0, 11621000.0, 1e12}) {
    const u64 m = static_cast<u64>(n);
    EXPECT_NEAR(g(m, 2.95, GForm::kReconciled), oracle::g_reconciled(n, 2.95),
                1e-12 * oracle::g_reconciled(n, 2.95));
    EXPECT_NEAR(g(m, 2.95, GForm::kPrinted), oracle::g_printed(n, 2.95),
                1e-12 * oracle::g_printed(n, 2.95));
    EXPECT_NEAR(g(m, 2.95, GForm::kReconciled) - g(m, 2.95, GForm::kNoSlack),
                2 * 0.6 / 2.95 * std::sqrt(n), 1e-6 * std::sqrt(n));
    EXPECT_NEAR(h(m, 2.95, 8.44697), oracle::h(n, 2.95, 8.44697), 1e-9);
  }
  EXPECT_THROW(g(4, 4.0), std::domain_error);
  EXPECT_THROW(g(4, 0.5), std::domain_error);
  EXPECT_EQ(parse_gform("noslack"), GForm::kNoSlack);
  EXPECT_EQ(to_string(GForm::kPrinted), "printed");
  EXPECT_THROW(parse_gform("other"), std::invalid_argument);
}

TEST(Bounds, HAndGIdentity) {
  for (int i = 0; i <= 500; ++i) {
    const u64 n = static_cast<u64>(std::llround(std::pow(10.0, 2.0 + 10.0 * i / 500.0)));
    const double nn = static_cast<double>(n);
    const double via_g = std::pow(nn, 0.25) - 8.44697 * g(n, 2.95) / (2 * std::sqrt(nn));
    ASSERT_LE(std::fabs(h(n, 2.95, 8.44697) - via_g), 1e-9 * std::pow(nn, 0.25)) << n;
  }
}

TEST(Bounds, Threshold) {
  const double at = h(11'621'000, 2.95, 8.44697);
  EXPECT_GT(at, 0.0);
  EXPECT_LT(at, 0.05);
  EXPECT_LT(h(11'000'000, 2.95, 8.44697), 0.0);
  for (int i = 0; i < 100; ++i) {
    const double n = 11621000.0 * std::pow(1e12 / 11621000.0, i / 99.0);
    EXPECT_GT(h(static_cast<u64>(std::ceil(n)), 2.95, 8.44697), 0.0);
  }
}

TEST(Bounds, Champion) {
  EXPECT_DOUBLE_EQ(c_ratio(1), 1.0);
  EXPECT_NEAR(c_ratio(21'621'600), 576 / std::pow(21621600.0, 0.25), 1e-12);
  const Champion c = find_champion(10'000'000'000ULL);
  EXPECT_EQ(c.n, 21'621'600u);
  EXPECT_EQ(c.theta, 576u);
  EXPECT_LT(c.c, 8.44697);
  EXPECT_NEAR(c.c, 8.44697, 1e-4);
  const Champion small = find_champion(1000);
  double best = 0;
  for (u64 n = 1; n <= 1000; ++n) best = std::max(best, oracle::theta(n) / std::pow(n, 0.25));
  EXPECT_NEAR(small.c, best, 1e-12);
}

TEST(Bounds, ExceedanceExamples) {
  EXPECT_TRUE(exceedance(5'045'040, 2.95).nonsquare);
  EXPECT_FALSE(exceedance(99'991, 2.95).nonsquare);
  EXPECT_TRUE(exceedance(1'587'600, 2.95).square);
  EXPECT_FALSE(exceedance(1'587'601, 2.95).square);
  for (u64 n = 9; n <= 3000; ++n) {
    const double G = oracle::g_reconciled(static_cast<double>(n), 2.95);
    const u64 th = oracle::theta(n);
    const Exceedance e = exceedance(n, th, 2.95);
    ASSERT_EQ(e.nonsquare, 0.5 * th * G >= n) << n;
    const bool sq = oracle::isqrt(n) * oracle::isqrt(n) == n;
    ASSERT_EQ(e.square, sq && 0.5 * (th + 1) * G >= n) << n;
  }
}

TEST(Bounds, SolutionCountWithinBound) {
  for (u64 n = 9; n <= 5000; ++n) {
    const double G = g(n, 2.95);
    const u64 th = oracle::theta(n);
    const u64 sq = oracle::isqrt(n) * oracle::isqrt(n) == n ? 1 : 0;
    ASSERT_LE(static_cast<double>(count_f(n)), 0.5 * static_cast<double>(th + sq) * G) << n;
  }
}

TEST(Bounds, HarmonicExcess) {
  double prev = harmonic_excess(21);
  for (u64 n : {22ULL, 23ULL, 100ULL, 1000ULL, 100'000ULL, 1'000'000ULL}) {
    const double e = harmonic_excess(n);
    EXPECT_LT(e, 0.6);
    EXPECT_LT(e, prev);
    prev = e;
  }
  EXPECT_NEAR(harmonic_excess(1'000'000), 0.5772161649, 1e-9);
}

TEST(Bounds, Report) {
  const BoundReport r = bound_report(11'621'000, 2.95, 8.44697);
  EXPECT_EQ(r.theta, 32u);
  EXPECT_GT(r.h, 0.0);
  EXPECT_DOUBLE_EQ(r.rho_prime_bound, r.g);
  EXPECT_FALSE(r.exceed_nonsquare);
}
