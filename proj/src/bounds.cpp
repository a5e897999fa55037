#include "axby/bounds.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <stdexcept>
#include <string>

namespace axby {
namespace {

using Wide = boost::multiprecision::cpp_bin_float_50;

void require_alpha(u64 n, double alpha, const char* op) {
  if (!(alpha >= 1.0) || alpha * alpha > static_cast<double>(n)) {
    throw std::domain_error(std::string(op) + ": need 1 <= alpha <= sqrt(n)");
  }
}

template <class F>
F g_impl(u64 n_int, F alpha, GForm form) {
  using std::log;
  using std::sqrt;
  const F n = static_cast<F>(n_int);
  const F root = sqrt(n);
  const F first = root * log(n) / alpha;
  const F second = form == GForm::kNoSlack ? F(2) * root
                                           : F(2) * (F(1) + F(6) / F(10) / alpha) * root;
  const F third = form == GForm::kPrinted
                      ? F(2) * (F(2) * n - F(1)) * alpha / (F(2) * n - alpha * root)
                      : F(2) * (F(2) * n - F(1)) * alpha / (F(2) * root - alpha);
  return first + second + third;
}

void champion_dfs(const std::vector<u32>& primes, std::size_t idx, u64 n,
                  u64 th, unsigned max_exp, u64 limit, Champion& best) {
  ++best.candidates;
  const double c = static_cast<double>(th) / std::pow(static_cast<double>(n), 0.25);
  if (c > best.c) {
    best = Champion{n, th, c, best.candidates};
  }
  if (idx >= primes.size()) return;
  const u64 p = primes[idx];
  u64 m = n;
  for (unsigned e = 1; e <= max_exp; ++e) {
    if (m > limit / p) break;
    m *= p;
    champion_dfs(primes, idx + 1, m, th * (e + 1), e, limit, best);
  }
}

}  // namespace

std::string_view to_string(GForm form) {
  switch (form) {
    case GForm::kReconciled: return "reconciled";
    case GForm::kPrinted: return "printed";
    case GForm::kNoSlack: return "noslack";
  }
  return "unknown";
}

GForm parse_gform(std::string_view name) {
  if (name == "reconciled") return GForm::kReconciled;
  if (name == "printed") return GForm::kPrinted;
  if (name == "noslack") return GForm::kNoSlack;
  throw std::invalid_argument("unknown g form: " + std::string(name));
}

Lemma1Result lemma1_sum(u64 n, double alpha) {
  if (n < 22) throw std::domain_error("lemma1_sum: need n >= 22");
  require_alpha(n, alpha, "lemma1_sum");
  Lemma1Result r;
  const double root = std::sqrt(static_cast<double>(n));
  r.terms = static_cast<u64>(std::floor(root / alpha));
  // floor(sqrt(n)/alpha) in exact arithmetic when alpha is an integer.
  while (r.terms > 0 && static_cast<double>(r.terms) * alpha > root) --r.terms;
  for (u64 k = 1; k <= r.terms; ++k) r.sum += theta(n - k);
  r.bound = root * std::log(static_cast<double>(n)) / alpha +
            2.0 * (1.0 + 0.6 / alpha) * root;
  return r;
}

double theorem1_bound(u64 n, double alpha) {
  require_alpha(n, alpha, "theorem1_bound");
  const double nn = static_cast<double>(n);
  const double root = std::sqrt(nn);
  return root * std::log(nn) / alpha + 2.0 * (1.0 + 0.6 / alpha) * root +
         (2.0 * nn - 1.0) * alpha / (2.0 * root - alpha);
}

double theorem1_prime_bound(u64 n, double alpha) {
  require_alpha(n, alpha, "theorem1_prime_bound");
  const double nn = static_cast<double>(n);
  const double root = std::sqrt(nn);
  return root * std::log(nn) / alpha + 2.0 * (1.0 + 0.6 / alpha) * root +
         2.0 * (2.0 * nn - 1.0) * alpha / (2.0 * root - alpha);
}

double g(u64 n, double alpha, GForm form) {
  if (n < 1 || !(alpha >= 1.0) ||
      !(alpha < 2.0 * std::sqrt(static_cast<double>(n)))) {
    throw std::domain_error("g: need alpha >= 1 and alpha < 2 sqrt(n)");
  }
  return g_impl<double>(n, alpha, form);
}

double h(u64 n, double alpha, double C) {
  if (n < 1 || !(alpha >= 1.0) ||
      !(alpha < 2.0 * std::sqrt(static_cast<double>(n)))) {
    throw std::domain_error("h: need alpha >= 1 and alpha < 2 sqrt(n)");
  }
  const double nn = static_cast<double>(n);
  const double root = std::sqrt(nn);
  return std::pow(nn, 0.25) - C * std::log(nn) / (2.0 * alpha) -
         (1.0 + 0.6 / alpha) * C -
         ((2.0 * nn - 1.0) * alpha / (2.0 * nn - alpha * root)) * C;
}

double c_ratio(u64 n) {
  return static_cast<double>(theta(n)) / std::pow(static_cast<double>(n), 0.25);
}

Champion find_champion(u64 limit) {
  if (limit < 2) throw std::domain_error("find_champion: need limit >= 2");
  // The primorial of the first 16 primes already exceeds 2^64.
  const std::vector<u32> primes = primes_up_to(53);
  Champion best;
  best.candidates = 0;
  champion_dfs(primes, 0, 1, 1, 64, limit, best);
  return best;
}

Exceedance exceedance(u64 n, u64 th, double alpha, GForm form) {
  if (n < 2) throw std::domain_error("exceedance: need n >= 2");
  const double G = g(n, alpha, form);
  const double nn = static_cast<double>(n);
  const bool square = is_square(n);
  Exceedance e;
  auto decide = [&](u64 count) {
    const double lhs = 0.5 * static_cast<double>(count) * G;
    if (std::fabs(lhs - nn) > 1e-6 * nn) return lhs >= nn;
    e.refined = true;
    return Wide(count) * g_impl<Wide>(n, Wide(alpha), form) / 2 >= Wide(n);
  };
  e.nonsquare = decide(th);
  e.square = square && decide(th + 1);
  return e;
}

Exceedance exceedance(u64 n, double alpha, GForm form) {
  return exceedance(n, theta(n), alpha, form);
}

BoundReport bound_report(u64 n, double alpha, double C, GForm form) {
  require_alpha(n, alpha, "bounds");
  if (!(C > 0)) throw std::domain_error("bounds: need C > 0");
  BoundReport r;
  r.n = n;
  r.alpha = alpha;
  r.C = C;
  r.theta = theta(n);
  r.rho_bound = theorem1_bound(n, alpha);
  r.rho_prime_bound = theorem1_prime_bound(n, alpha);
  r.g = g(n, alpha, form);
  r.h = h(n, alpha, C);
  r.c_ratio = c_ratio(n);
  if (n >= 2) {
    const Exceedance e = exceedance(n, r.theta, alpha, form);
    r.exceed_nonsquare = e.nonsquare;
    r.exceed_square = e.square;
  }
  return r;
}

double harmonic_excess(u64 n) {
  if (n < 1) throw std::domain_error("harmonic_excess: need n >= 1");
  // Sum smallest terms first.
  long double s = 0;
  for (u64 k = n; k >= 1; --k) s += 1.0L / static_cast<long double>(k);
  return static_cast<double>(s - std::log(static_cast<long double>(n)));
}

}  // namespace axby
