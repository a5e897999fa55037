#pragma once

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "axby/arith.hpp"

namespace axby {

/// One solution n = (X + 1/x)(Y + 1/y) together with its witnesses:
/// a*x = y*Y + 1, b*y = x*X + 1, a*b = n and k = n - X*Y.
///
/// Field order makes the defaulted ordering lexicographic in (X, x, Y, y)
/// for a fixed n.
struct Solution {
  u64 n = 0;
  u64 X = 0;
  u64 x = 0;
  u64 Y = 0;
  u64 y = 0;
  u64 a = 0;
  u64 b = 0;
  u64 k = 0;

  friend auto operator<=>(const Solution&, const Solution&) = default;
};

/// Builds the solution for (X, x, Y, y) of the value n, deriving a, b, k.
/// Throws std::domain_error when the quadruple is not a solution for n.
Solution make_solution(u64 n, u64 X, u64 x, u64 Y, u64 y);

/// Swaps the roles of (X, x, a) and (Y, y, b).
Solution transpose(const Solution& s);

/// X < Y, or X == Y and x < y.
bool is_canonical(const Solution& s);
Solution canonical(const Solution& s);

/// Checks every exact identity attached to a solution (not canonicity).
/// Returns an empty string when valid, otherwise the first broken identity.
std::string check_solution(const Solution& s);

/// Throws std::logic_error with check_solution's message when invalid.
void verify_solution(const Solution& s);

struct SolutionSet {
  u64 n = 0;
  std::vector<Solution> solutions;  // canonical, sorted, unique

  u64 f() const { return solutions.size(); }
  bool contains(u64 X, u64 x, u64 Y, u64 y) const;
};

struct KProfile {
  u64 n = 0;
  std::map<u64, u64> entries;  // k -> M(n, k); only non-zero counts

  u64 count(u64 k) const;
  u64 total() const;
  u64 k_max() const;
};

/// All desymmetrized solutions for n >= 2 via divisors k of a + X.
SolutionSet enumerate_solutions(u64 n);
/// f(n); same walk as enumerate_solutions without storing solutions.
u64 count_f(u64 n);
KProfile k_profile(u64 n);

inline constexpr u64 kQuadrupleOracleCap = 500;
inline constexpr u64 kCongruenceOracleCap = 10'000;

/// Direct search over X*Y <= n-1 and 2 <= x, y <= 2n-1. Slow by design.
SolutionSet oracle_quadruple(u64 n, u64 cap = kQuadrupleOracleCap);
/// Per ordered factorization n = a*b and modulus y, the unique x < y with
/// a*x = 1 (mod y), then the test xy | ax + by - 1.
SolutionSet oracle_congruence(u64 n, u64 cap = kCongruenceOracleCap);

struct RhoCounts {
  u64 rho = 0;        // pairs with 1 < x < y
  u64 rho_prime = 0;  // pairs with x, y > 1, either order
};

/// Counts of (x, y) with xy | ax + by - 1. Requires a*b >= 2.
RhoCounts rho_counts(u64 a, u64 b);

struct RhoEntry {
  u64 a = 0;
  u64 b = 0;
  RhoCounts counts;
};

/// rho and rho' for every ordered factorization of n, read off the
/// enumerated solutions oriented to x < y. Ascending in a.
std::vector<RhoEntry> rho_table(u64 n);

/// Solutions of one boundary branch (x = 1 or y = 1) of the congruence.
struct BoundaryBranch {
  bool unbounded = false;     // every value >= 1 works
  std::vector<u64> values;    // otherwise the finite list of free values
};

struct CongruenceSolutions {
  u64 a = 0;
  u64 b = 0;
  bool infinite_family = false;
  std::vector<std::pair<u64, u64>> interior;  // x, y > 1, sorted
  BoundaryBranch x_is_one;                    // values of y
  BoundaryBranch y_is_one;                    // values of x
};

CongruenceSolutions congruence_solutions(u64 a, u64 b);

/// [X + r*y, x, Y + t*x, y] for N = (r*x + b)(t*y + a); k grows by r + t.
Solution apply_elementary(const Solution& s, u64 r, u64 t);

/// Inverse elementary steps down to the reduced solution with the same
/// (x, y). Has exactly k - 1 entries; the last one has k = 1.
std::vector<Solution> reduce_chain(const Solution& s);

}  // namespace axby
