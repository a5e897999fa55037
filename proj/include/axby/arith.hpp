#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace axby {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Largest n the solver accepts; keeps every intermediate of the
// solution identities (n*x*y with x, y <= 2n) inside 128 bits.
inline constexpr u64 kMaxSolverN = 1'000'000'000'000ULL;

struct PrimePower {
  u64 prime;
  unsigned exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
  u64 n = 1;
  std::vector<PrimePower> factors;  // primes strictly increasing

  // Product of prime^exponent, computed with overflow checks.
  u64 value() const;
};

u64 gcd(u64 a, u64 b);
u64 isqrt(u64 n);
bool is_square(u64 n);
bool is_prime(u64 n);

// Multiplication/addition that throw std::overflow_error instead of wrapping.
u64 checked_mul(u64 a, u64 b);
u64 checked_add(u64 a, u64 b);
u128 checked_mul(u128 a, u128 b);
u128 checked_add(u128 a, u128 b);

// Primes p <= limit, by a plain Eratosthenes sieve.
std::vector<u32> primes_up_to(u32 limit);

/// Prime factorization by trial division with sieved primes up to sqrt(n).
/// Throws std::domain_error for n == 0.
Factorization factorize(u64 n);

/// All divisors of n in increasing order.
std::vector<u64> divisors(u64 n);
std::vector<u64> divisors(const Factorization& f);

u64 theta(u64 n);
u64 theta(const Factorization& f);
/// Number of odd divisors; equals theta(m) for n = 2^r * m, m odd.
u64 theta_odd(u64 n);

inline constexpr std::size_t kDefaultSegment = std::size_t{1} << 20;

/// Streams theta(n) for every n in [lo, hi], one segment at a time.
/// The callback receives the first n of the segment and the counts.
void for_each_theta_segment(
    u64 lo, u64 hi, std::size_t segment,
    const std::function<void(u64 first, std::span<const u32> counts)>& sink);

/// theta(n) for n in [lo, hi]; entry i belongs to lo + i.
std::vector<u32> theta_range(u64 lo, u64 hi,
                             std::size_t segment = kDefaultSegment);

/// x in [1, m-1] with a*x = 1 (mod m). Throws std::domain_error when
/// gcd(a, m) > 1 or m < 2.
u64 mod_inverse(u64 a, u64 m);

}  // namespace axby
