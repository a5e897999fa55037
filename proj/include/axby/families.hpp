#pragma once

#include <vector>

#include "axby/solver.hpp"

namespace axby {

/// theta(n) * theta(n - 1) / 2, the number of solutions with k = 1.
u64 reduced_count(u64 n);

/// Closed form for M(n, 2), n >= 3:
///   n odd:  theta(n) theta(n-2) / 2 - 1
///   n even: theta_odd(n) theta_odd(n-2) - 1
u64 m2_closed_form(u64 n);

/// [1, 2, 2t-1, 3] for n = 3t - 1; its k is t = (n + 1)/3.
Solution family_3t(u64 t);

enum class Remark1Family { kUnitA, kFullA };  // a = 1, a = n

struct FamilySolution {
  Remark1Family family;
  Solution solution;        // canonical orientation
  bool transposed = false;  // true when canonicalization swapped the sides
  u64 divisor_X = 0;        // X as chosen from the divisors of n - k

  // a in the orientation the construction used.
  u64 construction_a() const { return transposed ? solution.b : solution.a; }
};

/// Solutions with witness a = 1 (X | n-k, k | X+1, X+1 > k) and a = n
/// (X | n-k, k | n+X, 1 + (n-k)/X > k). Requires gcd(n, k) = 1.
std::vector<FamilySolution> remark1_construct(u64 n, u64 k);

struct GranvilleCertificate {
  u64 k = 0;
  u64 max_prime = 0;
  std::vector<u64> primes;  // p = -1 (mod k), p <= max_prime
  u64 n = 0;                // k + product of primes
  u64 pi_count = 0;
  u64 claimed_bound = 0;    // 2^(pi_count - 1)
  std::vector<Solution> certified_solutions;
  // Set when f(n) was computed directly (n <= kGranvilleDirectLimit).
  bool f_checked = false;
  u64 f = 0;
};

inline constexpr u64 kGranvilleDirectLimit = 10'000'000;

/// Builds and self-verifies the certificate; throws std::overflow_error when
/// the product leaves the solver's exact range, std::logic_error when a
/// certification step fails.
GranvilleCertificate granville(u64 k, u64 max_prime);

struct SkalbaCheck {
  u64 m = 0;
  u64 n = 0;              // 2m^2 + 2m + 5
  bool identities = false;  // n = (m-1)^2 + (m+2)^2, n-4 = m^2 + (m+1)^2
  bool primes_1_mod_4 = false;  // every odd prime of n and n-4
  u64 m4 = 0;             // M(n, 4) from the solver
  bool ok() const { return identities && primes_1_mod_4 && m4 == 0; }
};

/// Requires m >= 1 and m != 1 (mod 3).
SkalbaCheck skalba(u64 m);

}  // namespace axby
