#include <gtest/gtest.h>

#include <stdexcept>

#include "axby/families.hpp"
#include "oracles.hpp"

using namespace axby;

TEST(Families, ReducedCount) {
  EXPECT_EQ(reduced_count(2), 1u);
  EXPECT_EQ(reduced_count(9), 6u);
  EXPECT_EQ(reduced_count(10), 6u);
  for (u64 n = 2; n <= 5000; ++n) {
    ASSERT_EQ(reduced_count(n), oracle::theta(n) * oracle::theta(n - 1) / 2);
    ASSERT_EQ(reduced_count(n), k_profile(n).count(1)) << n;
  }
}

TEST(Families, SecondLayerClosedForm) {
  EXPECT_EQ(m2_closed_form(9), 2u);
  EXPECT_EQ(m2_closed_form(16), 1u);
  EXPECT_EQ(m2_closed_form(3), 0u);
  EXPECT_TRUE(enumerate_solutions(16).contains(2, 4, 7, 9));
  for (u64 n = 3; n <= 5000; ++n) ASSERT_EQ(m2_closed_form(n), k_profile(n).count(2)) << n;
  for (u64 n = 3; n <= 60; ++n) {
    const auto brute = oracle::brute_profile(n);
    const u64 want = brute.count(2) ? brute.at(2) : 0;
    ASSERT_EQ(m2_closed_form(n), want) << n;
  }
}

TEST(Families, LowerBoundsOnLayers) {
  EXPECT_EQ(count_f(9), 8u);
  for (u64 n = 9; n <= 10'000; ++n) {
    const KProfile p = k_profile(n);
    ASSERT_GE(p.total(), 8u) << n;
    if (n >= 20) ASSERT_GE(p.total(), 12u) << n;
    if (n > 11) ASSERT_GE(p.count(1) + p.count(2), 7u) << n;
    if (n > 12) ASSERT_GE(p.count(3), 1u) << n;
  }
}

TEST(Families, ThreeT) {
  EXPECT_EQ(family_3t(1), make_solution(2, 1, 2, 1, 3));
  EXPECT_EQ(family_3t(2), make_solution(5, 1, 2, 3, 3));
  const Solution four = family_3t(4);
  EXPECT_EQ(four.n, 11u);
  EXPECT_EQ(four.k, 4u);
  for (u64 t = 1; t <= 10'000; ++t) {
    const Solution s = family_3t(t);
    ASSERT_EQ(check_solution(s), "");
    ASSERT_EQ(3 * s.k, s.n + 1);
  }
  EXPECT_THROW(family_3t(0), std::domain_error);
}

TEST(Families, UnitAndFullWitnessConstructions) {
  const auto eleven = remark1_construct(11, 3);
  bool found = false;
  for (const FamilySolution& f : eleven) {
    if (f.family == Remark1Family::kUnitA && f.divisor_X == 8) {
      EXPECT_EQ(f.solution, make_solution(11, 1, 3, 8, 4));
      found = true;
    }
  }
  EXPECT_TRUE(found);

  std::vector<u64> unit_X;
  for (const FamilySolution& f : remark1_construct(113, 3)) {
    if (f.family == Remark1Family::kUnitA) unit_X.push_back(f.divisor_X);
  }
  EXPECT_EQ(unit_X, (std::vector<u64>{5, 11, 110}));

  for (const FamilySolution& f : remark1_construct(10, 3)) {
    EXPECT_NE(f.family, Remark1Family::kUnitA);
  }
  EXPECT_THROW(remark1_construct(12, 3), std::domain_error);

  for (u64 n = 5; n <= 400; ++n) {
    const SolutionSet all = enumerate_solutions(n);
    for (u64 k = 1; 3 * k <= n + 1; ++k) {
      if (std::gcd(n, k) != 1) continue;
      for (const FamilySolution& f : remark1_construct(n, k)) {
        const Solution& s = f.solution;
        ASSERT_EQ(check_solution(s), "");
        ASSERT_EQ(s.k, k);
        ASSERT_TRUE(all.contains(s.X, s.x, s.Y, s.y)) << n << " " << k;
        ASSERT_EQ(f.construction_a(), f.family == Remark1Family::kUnitA ? 1u : n);
      }
    }
  }
}

TEST(Families, GranvilleCertificates) {
  const GranvilleCertificate c = granville(3, 11);
  EXPECT_EQ(c.primes, (std::vector<u64>{2, 5, 11}));
  EXPECT_EQ(c.n, 113u);
  EXPECT_EQ(c.pi_count, 3u);
  EXPECT_EQ(c.claimed_bound, 4u);
  EXPECT_EQ(c.certified_solutions.size(), 3u);
  EXPECT_TRUE(c.f_checked);
  EXPECT_GE(c.f, reduced_count(113));

  const GranvilleCertificate small = granville(3, 5);
  EXPECT_EQ(small.primes, (std::vector<u64>{2, 5}));
  EXPECT_EQ(small.n, 13u);
  EXPECT_EQ(small.claimed_bound, 2u);

  const GranvilleCertificate four = granville(4, 19);
  EXPECT_EQ(four.primes, (std::vector<u64>{3, 7, 11, 19}));
  EXPECT_EQ(four.n, 4u + 3 * 7 * 11 * 19);

  for (const auto& [k, M] : {std::pair<u64, u64>{3, 17}, {5, 19}}) {
    const GranvilleCertificate g = granville(k, M);
    EXPECT_GE(g.certified_solutions.size() + 1, g.claimed_bound);
    ASSERT_TRUE(g.f_checked);
    EXPECT_GE(g.f, g.claimed_bound);
    for (const Solution& s : g.certified_solutions) {
      EXPECT_EQ(check_solution(s), "");
      EXPECT_EQ(s.k, k);
    }
  }
  EXPECT_THROW(granville(3, 200), std::overflow_error);
}

TEST(Families, SkalbaFamily) {
  const SkalbaCheck two = skalba(2);
  EXPECT_EQ(two.n, 17u);
  EXPECT_TRUE(two.ok());
  const SkalbaCheck three = skalba(3);
  EXPECT_EQ(three.n, 29u);
  EXPECT_TRUE(three.ok());
  EXPECT_THROW(skalba(4), std::domain_error);
  EXPECT_THROW(skalba(0), std::domain_error);
  for (u64 m = 2; m <= 300; ++m) {
    if (m % 3 == 1) continue;
    const SkalbaCheck c = skalba(m);
    ASSERT_TRUE(c.ok()) << m;
    ASSERT_EQ(c.m4, k_profile(c.n).count(4));
  }
}
