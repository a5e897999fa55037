#include "axby/arith.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace axby {
namespace {

constexpr u32 kSmallPrimeLimit = 1'000'000;

const std::vector<u32>& small_primes() {
  static const std::vector<u32> primes = primes_up_to(kSmallPrimeLimit);
  return primes;
}

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

}  // namespace

u64 Factorization::value() const {
  u64 v = 1;
  for (const auto& [p, e] : factors) {
    for (unsigned i = 0; i < e; ++i) v = checked_mul(v, p);
  }
  return v;
}

u64 gcd(u64 a, u64 b) {
  while (b != 0) {
    const u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u64 isqrt(u64 n) {
  if (n < 2) return n;
  // Newton from above; the float seed is only a starting point.
  u64 r = static_cast<u64>(__builtin_sqrtl(static_cast<long double>(n)));
  while (static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square(u64 n) {
  const u64 r = isqrt(n);
  return r * r == n;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for all 64-bit n.
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 checked_mul(u64 a, u64 b) {
  u64 r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw std::overflow_error("64-bit multiplication overflow");
  }
  return r;
}

u64 checked_add(u64 a, u64 b) {
  u64 r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw std::overflow_error("64-bit addition overflow");
  }
  return r;
}

u128 checked_mul(u128 a, u128 b) {
  u128 r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw std::overflow_error("128-bit multiplication overflow");
  }
  return r;
}

u128 checked_add(u128 a, u128 b) {
  u128 r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw std::overflow_error("128-bit addition overflow");
  }
  return r;
}

std::vector<u32> primes_up_to(u32 limit) {
  std::vector<u32> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<u32>(i));
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

Factorization factorize(u64 n) {
  if (n == 0) throw std::domain_error("factorize: n must be positive");
  Factorization f;
  f.n = n;
  u64 rest = n;
  auto take = [&](u64 p) {
    unsigned e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (e > 0) f.factors.push_back({p, e});
  };
  for (u32 p : small_primes()) {
    if (static_cast<u64>(p) * p > rest) break;
    take(p);
  }
  // Beyond the sieved range fall back to odd trial divisors.
  for (u64 d = kSmallPrimeLimit + 1; d <= rest / d; d += 2) take(d);
  if (rest > 1) f.factors.push_back({rest, 1});
  return f;
}

std::vector<u64> divisors(const Factorization& f) {
  std::vector<u64> out{1};
  for (const auto& [p, e] : f.factors) {
    const std::size_t base = out.size();
    u64 pk = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<u64> divisors(u64 n) { return divisors(factorize(n)); }

u64 theta(const Factorization& f) {
  u64 t = 1;
  for (const auto& pe : f.factors) t *= pe.exponent + 1;
  return t;
}

u64 theta(u64 n) { return theta(factorize(n)); }

u64 theta_odd(u64 n) {
  if (n == 0) throw std::domain_error("theta_odd: n must be positive");
  return theta(n >> std::countr_zero(n));
}

void for_each_theta_segment(
    u64 lo, u64 hi, std::size_t segment,
    const std::function<void(u64, std::span<const u32>)>& sink) {
  if (lo == 0 || lo > hi) {
    throw std::domain_error("theta_range: need 1 <= lo <= hi");
  }
  if (segment == 0) segment = kDefaultSegment;
  std::vector<u32> counts;
  for (u64 start = lo;; start += segment) {
    const u64 end = std::min<u64>(hi, start + (segment - 1));
    counts.assign(end - start + 1, 0);
    // Divisors pair up as (d, m/d) with d < sqrt(m); a square root
    // counts once.
    const u64 dmax = isqrt(end);
    for (u64 d = 1; d <= dmax; ++d) {
      const u64 sq = d * d;
      u64 m = std::max(start, sq);
      m = (m + d - 1) / d * d;
      if (m == sq) {
        counts[m - start] += 1;
        m += d;
      }
      for (; m <= end; m += d) counts[m - start] += 2;
    }
    sink(start, counts);
    if (end == hi) break;
  }
}

std::vector<u32> theta_range(u64 lo, u64 hi, std::size_t segment) {
  std::vector<u32> out;
  out.reserve(hi - lo + 1);
  for_each_theta_segment(lo, hi, segment,
                         [&](u64, std::span<const u32> counts) {
                           out.insert(out.end(), counts.begin(), counts.end());
                         });
  return out;
}

u64 mod_inverse(u64 a, u64 m) {
  if (m < 2) throw std::domain_error("mod_inverse: modulus must be >= 2");
  // Extended Euclid on signed 128-bit to keep the Bezout coefficients exact.
  __int128 old_r = a % m, r = m;
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    const __int128 q = old_r / r;
    __int128 t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) {
    throw std::domain_error("mod_inverse: " + std::to_string(a) +
                            " is not invertible modulo " + std::to_string(m));
  }
  __int128 x = old_s % static_cast<__int128>(m);
  if (x < 0) x += m;
  return static_cast<u64>(x);
}

}  // namespace axby
