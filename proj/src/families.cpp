#include "axby/families.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace axby {

u64 reduced_count(u64 n) {
  if (n < 2) throw std::domain_error("reduced_count: need n >= 2");
  const u64 product = theta(n) * theta(n - 1);
  // Odd only if both n and n-1 were squares.
  if (product % 2 != 0) {
    throw std::logic_error("reduced_count: theta(n)theta(n-1) is odd for n=" +
                           std::to_string(n));
  }
  return product / 2;
}

u64 m2_closed_form(u64 n) {
  if (n < 3) throw std::domain_error("m2_closed_form: need n >= 3");
  if (n % 2 == 1) return theta(n) * theta(n - 2) / 2 - 1;
  return theta_odd(n) * theta_odd(n - 2) - 1;
}

Solution family_3t(u64 t) {
  if (t < 1) throw std::domain_error("family_3t: need t >= 1");
  const u64 n = checked_mul(u64{3}, t) - 1;
  Solution s = make_solution(n, 1, 2, 2 * t - 1, 3);
  if (s.k != t || 3 * s.k != n + 1) {
    throw std::logic_error("family_3t: k != (n+1)/3 for t=" + std::to_string(t));
  }
  return s;
}

std::vector<FamilySolution> remark1_construct(u64 n, u64 k) {
  if (n < 2 || k < 1) throw std::domain_error("remark1_construct: need n >= 2, k >= 1");
  if (gcd(n, k) != 1) {
    throw std::domain_error("remark1_construct: gcd(n, k) must be 1");
  }
  std::vector<FamilySolution> out;
  if (k >= n) return out;
  const u64 rest = n - k;
  auto emit = [&](Remark1Family fam, u64 a, u64 X) {
    const u64 b = n / a;
    const u64 Y = rest / X;
    const u64 x = (b + Y) / k;
    const u64 y = (a + X) / k;
    Solution raw{n, X, x, Y, y, a, b, k};
    verify_solution(raw);
    FamilySolution fs{fam, canonical(raw), !is_canonical(raw), X};
    out.push_back(fs);
  };
  for (const u64 X : divisors(rest)) {
    // a = 1: k | X+1 and X+1 > k; k | n + Y then follows from gcd(n, k) = 1.
    if ((X + 1) % k == 0 && X + 1 > k) emit(Remark1Family::kUnitA, 1, X);
  }
  for (const u64 X : divisors(rest)) {
    if ((n + X) % k == 0 && 1 + rest / X > k) emit(Remark1Family::kFullA, n, X);
  }
  return out;
}

GranvilleCertificate granville(u64 k, u64 max_prime) {
  if (k < 2 || max_prime < k) {
    throw std::domain_error("granville: need k >= 2 and M >= k");
  }
  if (max_prime > 0xffffffffULL) {
    throw std::domain_error("granville: prime cap too large");
  }
  GranvilleCertificate cert;
  cert.k = k;
  cert.max_prime = max_prime;
  u128 product = 1;
  for (const u32 p : primes_up_to(static_cast<u32>(max_prime))) {
    if ((p + 1) % k != 0) continue;
    cert.primes.push_back(p);
    product = checked_mul(product, u128{p});
    if (product > kMaxSolverN) {
      int bits = 0;
      for (u128 v = product; v != 0; v >>= 1) ++bits;
      throw std::overflow_error("granville: product of primes needs " +
                                std::to_string(bits) +
                                " bits, beyond the exact solver range");
    }
  }
  cert.pi_count = cert.primes.size();
  const u128 n = product + k;
  if (n > kMaxSolverN) throw std::overflow_error("granville: n beyond the exact solver range");
  cert.n = static_cast<u64>(n);
  cert.claimed_bound = cert.pi_count == 0 ? 0 : (u64{1} << (cert.pi_count - 1));
  if (gcd(cert.n, k) != 1) throw std::logic_error("granville: gcd(n, k) != 1");
  if (cert.n < 2) throw std::logic_error("granville: n too small");

  for (const auto& fs : remark1_construct(cert.n, k)) {
    if (fs.family != Remark1Family::kUnitA) continue;
    if (fs.solution.k != k || fs.construction_a() != 1) {
      throw std::logic_error("granville: family solution has the wrong witness");
    }
    cert.certified_solutions.push_back(fs.solution);
  }
  std::sort(cert.certified_solutions.begin(), cert.certified_solutions.end());
  if (cert.claimed_bound > 0 &&
      cert.certified_solutions.size() + 1 < cert.claimed_bound) {
    throw std::logic_error("granville: only " +
                           std::to_string(cert.certified_solutions.size()) +
                           " certified solutions, expected >= 2^(pi-1) - 1");
  }
  if (cert.n <= kGranvilleDirectLimit) {
    cert.f = count_f(cert.n);
    cert.f_checked = true;
    if (cert.f < cert.certified_solutions.size() || cert.f < cert.claimed_bound) {
      throw std::logic_error("granville: f(n) below the certified count");
    }
  }
  return cert;
}

SkalbaCheck skalba(u64 m) {
  if (m < 1 || m % 3 == 1) {
    throw std::domain_error("skalba: need m >= 1 and m != 1 (mod 3)");
  }
  SkalbaCheck c;
  c.m = m;
  c.n = checked_add(checked_mul(u64{2}, checked_mul(m, m)), checked_add(checked_mul(u64{2}, m), u64{5}));
  const u64 lo = m - 1, hi = m + 2;
  c.identities = (c.n == lo * lo + hi * hi) && (c.n - 4 == m * m + (m + 1) * (m + 1));
  auto all_1_mod_4 = [](u64 v) {
    for (const auto& pe : factorize(v).factors) {
      if (pe.prime % 4 != 1) return false;
    }
    return true;
  };
  c.primes_1_mod_4 = all_1_mod_4(c.n) && all_1_mod_4(c.n - 4);
  c.m4 = k_profile(c.n).count(4);
  return c;
}

}  // namespace axby
