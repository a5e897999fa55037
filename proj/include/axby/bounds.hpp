#pragma once

#include <string_view>

#include "axby/arith.hpp"

namespace axby {

// All logarithms in this module are natural.

/// Which closed form of g(n, alpha) to evaluate.
///
/// kReconciled: (1/a)sqrt(n)ln(n) + 2(1 + 0.6/a)sqrt(n) + 2(2n-1)a/(2sqrt(n) - a)
/// kPrinted:    same first two terms, third term 2(2n-1)a/(2n - a*sqrt(n))
/// kNoSlack:    kReconciled with the second term reduced to 2sqrt(n); this is
///              the form that reproduces the published exceedance counts.
enum class GForm { kReconciled, kPrinted, kNoSlack };

std::string_view to_string(GForm form);
/// Accepts "reconciled", "printed", "noslack". Throws std::invalid_argument.
GForm parse_gform(std::string_view name);

struct Lemma1Result {
  u64 sum = 0;       // sum_{k=1}^{floor(sqrt(n)/alpha)} theta(n - k)
  double bound = 0;  // (1/a)sqrt(n)ln(n) + 2(1 + 0.6/a)sqrt(n)
  u64 terms = 0;
};

/// Requires n >= 22 and 1 <= alpha <= sqrt(n).
Lemma1Result lemma1_sum(u64 n, double alpha);

/// Upper bound on rho(a, b) for ab = n; requires 1 <= alpha <= sqrt(n).
double theorem1_bound(u64 n, double alpha);
/// Upper bound on rho'(a, b): the third term doubled.
double theorem1_prime_bound(u64 n, double alpha);

/// Requires alpha >= 1 and alpha < 2 sqrt(n).
double g(u64 n, double alpha, GForm form = GForm::kReconciled);

/// n^{1/4} - C ln(n)/(2a) - (1 + 0.6/a)C - ((2n-1)a/(2n - a sqrt(n)))C.
double h(u64 n, double alpha, double C);

/// theta(n) / n^{1/4}.
double c_ratio(u64 n);

struct Champion {
  u64 n = 1;
  u64 theta = 1;
  double c = 1.0;
  u64 candidates = 0;  // shapes examined
};

/// Maximizer of c_ratio over n <= limit whose factorization uses the first
/// primes with non-increasing exponents.
Champion find_champion(u64 limit);

struct Exceedance {
  bool nonsquare = false;  // theta(n) g / 2 >= n
  bool square = false;     // (theta(n) + 1) g / 2 >= n, only for squares
  bool refined = false;    // decided in extended precision
};

/// Tests theta(n) g / 2 >= n (and the square variant). theta must equal theta(n).
Exceedance exceedance(u64 n, u64 theta, double alpha,
                      GForm form = GForm::kReconciled);
Exceedance exceedance(u64 n, double alpha, GForm form = GForm::kReconciled);

struct BoundReport {
  u64 n = 0;
  double alpha = 0;
  double C = 0;
  u64 theta = 0;
  double rho_bound = 0;
  double rho_prime_bound = 0;
  double g = 0;
  double h = 0;
  double c_ratio = 0;
  bool exceed_nonsquare = false;
  bool exceed_square = false;
};

BoundReport bound_report(u64 n, double alpha, double C,
                         GForm form = GForm::kReconciled);

/// H_n - ln(n).
double harmonic_excess(u64 n);

}  // namespace axby
