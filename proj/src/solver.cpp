#include "axby/solver.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace axby {
namespace {

void require_n(u64 n, const char* op) {
  if (n < 2) {
    throw std::domain_error(std::string(op) + ": n must be > 1");
  }
  if (n > kMaxSolverN) {
    throw std::domain_error(std::string(op) + ": n exceeds " +
                            std::to_string(kMaxSolverN));
  }
}

// Walks every desymmetrized solution of n. For each divisor a of n the
// values a + X, 1 <= X <= isqrt(n - 1), form a window; every divisor k of
// a window value is produced from its cofactor pair (d, m/d), d <= sqrt(m),
// by stepping d through the window.
template <class Visit>
void walk_solutions(u64 n, Visit&& visit) {
  require_n(n, "enumerate_solutions");
  const u64 xmax = isqrt(n - 1);
  for (const u64 a : divisors(n)) {
    const u64 b = n / a;
    const u64 lo = a + 1;
    const u64 hi = a + xmax;
    auto try_k = [&](u64 X, u64 sum, u64 k) {
      if (k >= n) return;
      const u64 rest = n - k;  // X * Y
      if (rest % X != 0) return;
      const u64 Y = rest / X;
      if (Y < X) return;
      if ((b + Y) % k != 0) return;
      const u64 x = (b + Y) / k;
      const u64 y = sum / k;
      if (x < 2 || y < 2) return;
      if (X == Y) {
        // Each X == Y solution shows up once per ordering of (a, b);
        // a < b picks one, and then x > y, so emit the transpose.
        if (a >= b) return;
        visit(Solution{n, X, y, Y, x, b, a, k});
        return;
      }
      visit(Solution{n, X, x, Y, y, a, b, k});
    };
    const u64 dmax = isqrt(hi);
    for (u64 d = 1; d <= dmax; ++d) {
      const u64 sq = d * d;
      u64 m = std::max(lo, sq);
      m = (m + d - 1) / d * d;
      for (; m <= hi; m += d) {
        const u64 X = m - a;
        const u64 co = m / d;
        try_k(X, m, d);
        if (co != d) try_k(X, m, co);
      }
    }
  }
}

}  // namespace

Solution make_solution(u64 n, u64 X, u64 x, u64 Y, u64 y) {
  if (X < 1 || Y < 1 || x < 2 || y < 2) {
    throw std::domain_error("make_solution: need X, Y >= 1 and x, y >= 2");
  }
  const u128 yY1 = checked_add(checked_mul(u128{y}, u128{Y}), u128{1});
  const u128 xX1 = checked_add(checked_mul(u128{x}, u128{X}), u128{1});
  if (yY1 % x != 0 || xX1 % y != 0) {
    throw std::domain_error("make_solution: x must divide yY+1, y must divide xX+1");
  }
  const u128 a = yY1 / x;
  const u128 b = xX1 / y;
  const u128 XY = checked_mul(u128{X}, u128{Y});
  if (checked_mul(a, b) != n || XY >= n) {
    throw std::domain_error("make_solution: quadruple does not solve the equation for this n");
  }
  Solution s{n, X, x, Y, y, static_cast<u64>(a), static_cast<u64>(b),
             static_cast<u64>(n - XY)};
  verify_solution(s);
  return s;
}

Solution transpose(const Solution& s) {
  return Solution{s.n, s.Y, s.y, s.X, s.x, s.b, s.a, s.k};
}

bool is_canonical(const Solution& s) {
  return s.X < s.Y || (s.X == s.Y && s.x < s.y);
}

Solution canonical(const Solution& s) {
  return is_canonical(s) ? s : transpose(s);
}

std::string check_solution(const Solution& s) {
  if (s.n < 2) return "n must be > 1";
  if (s.X < 1 || s.Y < 1) return "X, Y must be positive";
  if (s.x < 2 || s.y < 2) return "x, y must be >= 2";
  if (s.a < 1 || s.b < 1 || s.k < 1) return "a, b, k must be positive";
  try {
    const u128 n = s.n, X = s.X, x = s.x, Y = s.Y, y = s.y, a = s.a, b = s.b,
               k = s.k;
    const u128 xy = checked_mul(x, y);
    const u128 lhs = checked_mul(checked_add(checked_mul(X, x), u128{1}),
                                 checked_add(checked_mul(Y, y), u128{1}));
    if (lhs != checked_mul(n, xy)) return "(Xx+1)(Yy+1) != nxy";
    if (checked_mul(a, x) != checked_add(checked_mul(y, Y), u128{1})) {
      return "ax != yY+1";
    }
    if (checked_mul(b, y) != checked_add(checked_mul(x, X), u128{1})) {
      return "by != xX+1";
    }
    if (checked_mul(a, b) != n) return "ab != n";
    const u128 XY = checked_mul(X, Y);
    if (XY >= n || k != n - XY) return "k != n - XY";
    if (checked_add(checked_mul(a, x), checked_mul(b, y)) !=
        checked_add(checked_mul(k, xy), u128{1})) {
      return "ax + by - 1 != kxy";
    }
    if (checked_mul(k, x) != b + Y) return "kx != b + Y";
    if (checked_mul(k, y) != a + X) return "ky != a + X";
    if (s.x == s.y) return "x == y";
    if (gcd(s.x, s.y) != 1) return "gcd(x, y) != 1";
    const u128 top = 2 * n - 1;
    if (checked_mul(u128{std::max(s.x, s.y)}, 2 * k - 1) > top) {
      return "max(x, y) > (2n-1)/(2k-1)";
    }
    if (3 * k > n + 1) return "k > (n+1)/3";
  } catch (const std::overflow_error&) {
    return "overflow while checking identities";
  }
  return {};
}

void verify_solution(const Solution& s) {
  if (auto why = check_solution(s); !why.empty()) {
    throw std::logic_error("invalid solution [" + std::to_string(s.X) + "," +
                           std::to_string(s.x) + "," + std::to_string(s.Y) +
                           "," + std::to_string(s.y) + "] of n=" +
                           std::to_string(s.n) + ": " + why);
  }
}

bool SolutionSet::contains(u64 X, u64 x, u64 Y, u64 y) const {
  return std::any_of(solutions.begin(), solutions.end(), [&](const Solution& s) {
    return s.X == X && s.x == x && s.Y == Y && s.y == y;
  });
}

u64 KProfile::count(u64 k) const {
  auto it = entries.find(k);
  return it == entries.end() ? 0 : it->second;
}

u64 KProfile::total() const {
  u64 t = 0;
  for (const auto& [k, m] : entries) t += m;
  return t;
}

u64 KProfile::k_max() const {
  return entries.empty() ? 0 : entries.rbegin()->first;
}

SolutionSet enumerate_solutions(u64 n) {
  SolutionSet set{n, {}};
  walk_solutions(n, [&](const Solution& s) {
    verify_solution(s);
    if (!is_canonical(s)) throw std::logic_error("enumeration emitted a non-canonical solution");
    set.solutions.push_back(s);
  });
  std::sort(set.solutions.begin(), set.solutions.end());
  if (std::adjacent_find(set.solutions.begin(), set.solutions.end()) !=
      set.solutions.end()) {
    throw std::logic_error("enumeration emitted a duplicate solution");
  }
  return set;
}

u64 count_f(u64 n) {
  u64 f = 0;
  walk_solutions(n, [&](const Solution& s) {
    verify_solution(s);
    ++f;
  });
  return f;
}

KProfile k_profile(u64 n) {
  KProfile profile{n, {}};
  walk_solutions(n, [&](const Solution& s) {
    verify_solution(s);
    ++profile.entries[s.k];
  });
  return profile;
}

SolutionSet oracle_quadruple(u64 n, u64 cap) {
  require_n(n, "oracle_quadruple");
  if (n > cap) {
    throw std::domain_error("oracle_quadruple: n=" + std::to_string(n) +
                            " above cap " + std::to_string(cap));
  }
  const u64 bound = 2 * n - 1;
  std::set<Solution> found;
  for (u64 X = 1; X <= n - 1; ++X) {
    for (u64 Y = 1; X * Y <= n - 1; ++Y) {
      for (u64 x = 2; x <= bound; ++x) {
        // (Xx+1)(Yy+1) = nxy is linear in y: y * (nx - Y(Xx+1)) = Xx+1.
        const u64 xX1 = X * x + 1;
        const u64 nx = n * x;
        const u64 drop = Y * xX1;
        if (nx <= drop) continue;
        const u64 denom = nx - drop;
        if (xX1 % denom != 0) continue;
        const u64 y = xX1 / denom;
        if (y < 2 || y > bound) continue;
        if (xX1 * (Y * y + 1) != n * x * y) continue;
        found.insert(canonical(make_solution(n, X, x, Y, y)));
      }
    }
  }
  return SolutionSet{n, {found.begin(), found.end()}};
}

SolutionSet oracle_congruence(u64 n, u64 cap) {
  require_n(n, "oracle_congruence");
  if (n > cap) {
    throw std::domain_error("oracle_congruence: n=" + std::to_string(n) +
                            " above cap " + std::to_string(cap));
  }
  const u64 bound = 2 * n - 1;
  std::set<Solution> found;
  for (const u64 a : divisors(n)) {
    const u64 b = n / a;
    for (u64 y = 2; y <= bound; ++y) {
      if (gcd(a, y) != 1) continue;
      const u64 x = mod_inverse(a, y);
      if (x == 1) continue;
      if ((a * x + b * y - 1) % (x * y) != 0) continue;
      const u64 X = (b * y - 1) / x;
      const u64 Y = (a * x - 1) / y;
      found.insert(canonical(make_solution(n, X, x, Y, y)));
    }
  }
  return SolutionSet{n, {found.begin(), found.end()}};
}

RhoCounts rho_counts(u64 a, u64 b) {
  if (a < 1 || b < 1) throw std::domain_error("rho_counts: a, b must be positive");
  const u64 n = checked_mul(a, b);
  if (n < 2) throw std::domain_error("rho_counts: need a*b >= 2");
  require_n(n, "rho_counts");
  // Any solution with x, y > 1 has max(x, y) <= 2n - 1.
  const u64 bound = 2 * n - 1;
  RhoCounts out;
  for (u64 y = 2; y <= bound; ++y) {
    if (gcd(a, y) != 1) continue;
    const u64 x0 = mod_inverse(a, y);
    for (u64 x = x0; x <= bound; x += y) {
      if (x < 2) continue;
      const u128 lhs = u128{a} * x + u128{b} * y - 1;
      if (lhs % (u128{x} * y) != 0) continue;
      ++out.rho_prime;
      if (x < y) ++out.rho;
    }
  }
  return out;
}

std::vector<RhoEntry> rho_table(u64 n) {
  const SolutionSet set = enumerate_solutions(n);
  std::map<u64, u64> rho;
  for (const u64 a : divisors(n)) rho[a] = 0;
  for (const Solution& s : set.solutions) {
    const Solution& o = s.x < s.y ? s : transpose(s);
    ++rho[o.a];
  }
  std::vector<RhoEntry> out;
  for (const auto& [a, count] : rho) {
    out.push_back(RhoEntry{a, n / a, RhoCounts{count, count + rho[n / a]}});
  }
  return out;
}

CongruenceSolutions congruence_solutions(u64 a, u64 b) {
  if (a < 1 || b < 1) {
    throw std::domain_error("congruence_solutions: a, b must be positive");
  }
  CongruenceSolutions out;
  out.a = a;
  out.b = b;
  out.infinite_family = (a == 1 || b == 1);
  // x = 1: a + by = 1 (mod y), i.e. y | a - 1.
  if (a == 1) {
    out.x_is_one.unbounded = true;
  } else {
    out.x_is_one.values = divisors(a - 1);
  }
  if (b == 1) {
    out.y_is_one.unbounded = true;
  } else {
    out.y_is_one.values = divisors(b - 1);
  }
  const u64 n = checked_mul(a, b);
  if (n >= 2) {
    require_n(n, "congruence_solutions");
    const u64 bound = 2 * n - 1;
    for (u64 y = 2; y <= bound; ++y) {
      if (gcd(a, y) != 1) continue;
      for (u64 x = mod_inverse(a, y); x <= bound; x += y) {
        if (x < 2) continue;
        const u128 lhs = u128{a} * x + u128{b} * y - 1;
        if (lhs % (u128{x} * y) == 0) out.interior.emplace_back(x, y);
      }
    }
    std::sort(out.interior.begin(), out.interior.end());
  }
  return out;
}

Solution apply_elementary(const Solution& s, u64 r, u64 t) {
  verify_solution(s);
  if (r + t < 1) throw std::domain_error("apply_elementary: need r + t >= 1");
  const u64 X = checked_add(s.X, checked_mul(r, s.y));
  const u64 Y = checked_add(s.Y, checked_mul(t, s.x));
  const u64 b = checked_add(checked_mul(r, s.x), s.b);
  const u64 a = checked_add(checked_mul(t, s.y), s.a);
  const u64 N = checked_mul(a, b);
  if (N > kMaxSolverN) {
    throw std::overflow_error("apply_elementary: N=" + std::to_string(N) +
                              " exceeds the exact range");
  }
  Solution out{N, X, s.x, Y, s.y, a, b, checked_add(s.k, r + t)};
  verify_solution(out);
  return out;
}

std::vector<Solution> reduce_chain(const Solution& s) {
  verify_solution(s);
  std::vector<Solution> chain;
  Solution cur = s;
  while (cur.k > 1) {
    Solution next = cur;
    if (cur.X > cur.y) {
      next.n = cur.n - (cur.y * cur.Y + 1);
      next.X = cur.X - cur.y;
      next.b = cur.b - cur.x;
    } else if (cur.Y > cur.x) {
      next.n = cur.n - (cur.x * cur.X + 1);
      next.Y = cur.Y - cur.x;
      next.a = cur.a - cur.y;
    } else {
      throw std::logic_error("reduce_chain: k > 1 but solution is reduced");
    }
    next.k = cur.k - 1;
    verify_solution(next);
    if (next.k != next.n - next.X * next.Y) {
      throw std::logic_error("reduce_chain: k did not drop by one");
    }
    chain.push_back(next);
    cur = next;
  }
  return chain;
}

}  // namespace axby
