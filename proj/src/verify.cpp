#include "axby/verify.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "axby/families.hpp"
#include "axby/scan.hpp"

namespace axby {
namespace {

constexpr std::size_t kMaxFailures = 25;

std::string str(u64 v) { return std::to_string(v); }

std::string fmt(double v, int precision = 10) {
  std::ostringstream out;
  out.precision(precision);
  out << v;
  return out.str();
}

class Env {
 public:
  explicit Env(const SuiteHooks& hooks) : hooks_(hooks) {}

  KProfile profile(u64 n) const {
    return hooks_.k_profile ? hooks_.k_profile(n) : axby::k_profile(n);
  }
  u64 f(u64 n) const {
    if (hooks_.count_f) return hooks_.count_f(n);
    if (hooks_.k_profile) return hooks_.k_profile(n).total();
    return axby::count_f(n);
  }
  const SuiteHooks& hooks() const { return hooks_; }

 private:
  const SuiteHooks& hooks_;
};

void suite_oracle(const Env&, SuiteReport& r) {
  for (u64 n = 2; n <= 500; ++n) {
    if (enumerate_solutions(n).solutions != oracle_quadruple(n).solutions) {
      r.fail("n=" + str(n) + ": enumeration differs from the quadruple search");
    }
  }
  r.note("quadruple search agrees on 2..500");
  for (u64 n = 2; n <= 5000; ++n) {
    if (enumerate_solutions(n).solutions != oracle_congruence(n).solutions) {
      r.fail("n=" + str(n) + ": enumeration differs from the congruence search");
    }
  }
  r.note("congruence search agrees on 2..5000");
}

void suite_bounds(const Env& env, SuiteReport& r) {
  for (u64 n = 22; n <= 10'000; ++n) {
    const double root_floor = static_cast<double>(isqrt(n));
    for (double alpha : {1.0, 2.0, kAlpha, root_floor}) {
      if (alpha * alpha > static_cast<double>(n)) continue;
      const Lemma1Result l = lemma1_sum(n, alpha);
      if (!(static_cast<double>(l.sum) < l.bound)) {
        r.fail("lemma 1: n=" + str(n) + " alpha=" + fmt(alpha) + " sum=" +
               str(l.sum) + " bound=" + fmt(l.bound));
      }
    }
  }
  r.note("divisor-sum inequality holds on [22, 10^4]");

  for (u64 n = 2; n <= 3000; ++n) {
    const auto table = rho_table(n);
    for (double alpha : {1.0, 1.5, kAlpha}) {
      if (alpha * alpha > static_cast<double>(n)) continue;
      const double b1 = theorem1_bound(n, alpha);
      const double b1p = theorem1_prime_bound(n, alpha);
      for (const auto& e : table) {
        if (!(static_cast<double>(e.counts.rho) < b1) ||
            !(static_cast<double>(e.counts.rho_prime) < b1p)) {
          r.fail("rho bound: n=" + str(n) + " a=" + str(e.a) + " alpha=" + fmt(alpha));
        }
      }
    }
  }
  r.note("rho and rho' bounds hold for every ab <= 3000");

  for (u64 n = 9; n <= 5000; ++n) {
    const u64 f = env.f(n);
    const u64 th = theta(n);
    const double G = g(n, kAlpha, GForm::kReconciled);
    const double bound = 0.5 * static_cast<double>(is_square(n) ? th + 1 : th) * G;
    if (!(static_cast<double>(f) <= bound)) {
      r.fail("f(n) <= theta g/2 fails at n=" + str(n));
    }
  }
  r.note("f(n) <= theta(n) g(n, 2.95)/2 (+ square term) on [9, 5000]");

  double worst = 0;
  for (int i = 0; i <= 200; ++i) {
    const u64 n = static_cast<u64>(std::llround(std::pow(10.0, 2.0 + 10.0 * i / 200.0)));
    const double nn = static_cast<double>(n);
    const double via_g =
        std::pow(nn, 0.25) - kC0 * g(n, kAlpha, GForm::kReconciled) / (2.0 * std::sqrt(nn));
    const double diff = std::fabs(h(n, kAlpha, kC0) - via_g) / std::pow(nn, 0.25);
    worst = std::max(worst, diff);
    if (diff > 1e-9) r.fail("h/g identity off by " + fmt(diff) + " at n=" + str(n));
  }
  r.note("h/g identity worst relative gap " + fmt(worst, 3));

  long double harmonic = 0;
  double previous = 1.0;
  for (u64 n = 1; n <= 1'000'000; ++n) {
    harmonic += 1.0L / static_cast<long double>(n);
    const double excess =
        static_cast<double>(harmonic - std::log(static_cast<long double>(n)));
    if (n >= 22) {
      if (!(excess < 0.6)) r.fail("H_n - ln n >= 0.6 at n=" + str(n));
      if (!(excess < previous)) r.fail("H_n - ln n not decreasing at n=" + str(n));
    }
    previous = excess;
  }
  r.note("H_n - ln n < 0.6 and decreasing on [22, 10^6]");
}

void suite_reduced(const Env& env, SuiteReport& r) {
  for (u64 n = 2; n <= 5000; ++n) {
    const u64 got = env.profile(n).count(1);
    const u64 want = reduced_count(n);
    if (got != want) {
      r.fail("n=" + str(n) + ": M(n,1)=" + str(got) + " expected " + str(want));
    }
  }
}

void suite_m2(const Env& env, SuiteReport& r) {
  for (u64 n = 3; n <= 5000; ++n) {
    const u64 got = env.profile(n).count(2);
    const u64 want = m2_closed_form(n);
    if (got != want) {
      r.fail("n=" + str(n) + ": M(n,2)=" + str(got) + " expected " + str(want));
    }
  }
}

void suite_prop7(const Env& env, SuiteReport& r) {
  if (const u64 f9 = env.f(9); f9 != 8) r.fail("f(9)=" + str(f9) + " expected 8");
  for (u64 n = 9; n <= 10'000; ++n) {
    const u64 f = env.f(n);
    if (f < 8) r.fail("n=" + str(n) + ": f(n)=" + str(f) + " < 8");
    if (n >= 20 && f < 12) r.fail("n=" + str(n) + ": f(n)=" + str(f) + " < 12");
  }
}

void suite_ineq910(const Env& env, SuiteReport& r) {
  for (u64 n = 12; n <= 10'000; ++n) {
    const KProfile p = env.profile(n);
    if (p.count(1) + p.count(2) < 7) {
      r.fail("n=" + str(n) + ": M(n,1)+M(n,2)=" + str(p.count(1) + p.count(2)) + " < 7");
    }
    if (n > 12 && p.count(3) < 1) r.fail("n=" + str(n) + ": M(n,3)=0");
  }
}

void suite_skalba(const Env&, SuiteReport& r) {
  u64 checked = 0;
  for (u64 m = 1; m <= 300; ++m) {
    if (m % 3 == 1) continue;
    const SkalbaCheck c = skalba(m);
    ++checked;
    if (!c.ok()) {
      r.fail("m=" + str(m) + " n=" + str(c.n) + ": identities=" + str(c.identities) +
             " primes=" + str(c.primes_1_mod_4) + " M(n,4)=" + str(c.m4));
    }
  }
  r.note(str(checked) + " members checked");
}

void suite_threet(const Env&, SuiteReport& r) {
  for (u64 t = 1; t <= 10'000; ++t) {
    const Solution s = family_3t(t);
    if (s.k != t || 3 * s.k != s.n + 1) r.fail("t=" + str(t) + ": k != (n+1)/3");
    if (check_solution(s) != "") r.fail("t=" + str(t) + ": " + check_solution(s));
    if (t <= 2000 && !enumerate_solutions(s.n).contains(1, 2, 2 * t - 1, 3)) {
      r.fail("t=" + str(t) + ": solver misses [1,2,2t-1,3]");
    }
  }
}

void suite_granville(const Env&, SuiteReport& r) {
  for (const auto& [k, M] : {std::pair<u64, u64>{3, 11}, {3, 17}, {5, 19}, {4, 19}}) {
    try {
      const GranvilleCertificate c = granville(k, M);
      for (const auto& s : c.certified_solutions) {
        if (!check_solution(s).empty()) r.fail("k=" + str(k) + ": bad certified solution");
      }
      if (c.f_checked && c.f < c.claimed_bound) {
        r.fail("k=" + str(k) + " M=" + str(M) + ": f(n)=" + str(c.f) + " < 2^(pi-1)=" +
               str(c.claimed_bound));
      }
      r.note("k=" + str(k) + " M=" + str(M) + ": n=" + str(c.n) + " pi=" +
             str(c.pi_count) + " certified=" + str(c.certified_solutions.size()) +
             " f=" + str(c.f));
    } catch (const std::exception& e) {
      r.fail("k=" + str(k) + " M=" + str(M) + ": " + e.what());
    }
  }
}

void suite_threshold(const Env&, SuiteReport& r) {
  const double at = h(kThresholdN, kAlpha, kC0);
  r.note("h(11621000, 2.95, 8.44697) = " + fmt(at, 12));
  if (!(at > 0)) r.fail("h at the threshold is not positive: " + fmt(at, 12));
  if (!(at < 0.05)) r.fail("h at the threshold unexpectedly large: " + fmt(at, 12));
  const double lo = std::log(static_cast<double>(kThresholdN));
  const double hi = std::log(1e12);
  for (int i = 0; i < 100; ++i) {
    const u64 n = static_cast<u64>(std::llround(std::exp(lo + (hi - lo) * i / 99.0)));
    const double v = h(std::max(n, kThresholdN), kAlpha, kC0);
    if (!(v > 0)) r.fail("h <= 0 at n=" + str(n));
  }
}

void suite_champion(const Env&, SuiteReport& r) {
  const Champion c = find_champion(10'000'000'000ULL);
  r.note("champion n=" + str(c.n) + " theta=" + str(c.theta) + " C=" + fmt(c.c, 12) +
         " over " + str(c.candidates) + " shapes");
  if (c.n != 21'621'600) r.fail("champion is " + str(c.n) + ", expected 21621600");
  if (!(std::fabs(c.c - kC0) <= 1e-4) || !(c.c < kC0)) {
    r.fail("C(n*)=" + fmt(c.c, 12) + " not within 1e-4 below 8.44697");
  }
}

struct ExceedTally {
  u64 low = 0, mid = 0, high = 0;
  std::vector<u64> high_members;
  std::vector<u64> candidates;  // every flagged n, either predicate
};

ExceedTally tally_exceedances(const Env& env) {
  ExceedTally t;
  ScanOptions opt;
  opt.mode = ScanMode::kExceed;
  opt.chunk_size = u64{1} << 16;
  opt.jobs = env.hooks().jobs;
  opt.g_form = env.hooks().g_form;
  opt.on_record = [&](const ScanRecord& rec) {
    t.candidates.push_back(rec.n);
    if (!rec.exceed) return;
    if (rec.n >= 20'000 && rec.n <= 100'000) ++t.low;
    if (rec.n >= 100'000 && rec.n <= 5'000'000) ++t.mid;
    if (rec.n >= 5'000'000 && rec.n <= kThresholdN) {
      ++t.high;
      t.high_members.push_back(rec.n);
    }
  };
  scan_range(20'000, kThresholdN, opt);
  return t;
}

void suite_exceedance(const Env& env, SuiteReport& r) {
  const ExceedTally t = tally_exceedances(env);
  r.note("g form " + std::string(to_string(env.hooks().g_form)) + ": " + str(t.low) +
         " in [2e4,1e5], " + str(t.mid) + " in [1e5,5e6], " + str(t.high) +
         " in [5e6,11621000], total " + str(t.low + t.mid + t.high));
  if (t.low != 3030) r.fail("[2e4,1e5]: " + str(t.low) + " exceedances, expected 3030");
  if (t.mid != 3482) r.fail("[1e5,5e6]: " + str(t.mid) + " exceedances, expected 3482");
  if (t.high != 11) r.fail("[5e6,11621000]: " + str(t.high) + " exceedances, expected 11");
  if (t.low + t.mid + t.high != 6523) {
    r.fail("total " + str(t.low + t.mid + t.high) + ", expected 6523");
  }
  std::vector<u64> published;
  for (const auto& p : published_big_values()) published.push_back(p.n);
  if (t.high_members != published) {
    std::string got;
    for (u64 n : t.high_members) got += str(n) + " ";
    r.fail("exceeding n in [5e6,11621000] differ from the published eleven: " + got);
  }
}

void suite_candidates(const Env& env, SuiteReport& r) {
  const ExceedTally t = tally_exceedances(env);
  for (u64 n : t.candidates) {
    const u64 f = env.f(n);
    if (f >= n) r.fail("n=" + str(n) + ": f(n)=" + str(f) + " >= n");
  }
  r.note(str(t.candidates.size()) + " exceedance candidates in [2e4, 11621000] have f(n) < n");
}

void suite_squares(const Env& env, SuiteReport& r) {
  const u64 roots = isqrt(kThresholdN - 1);
  r.note(str(roots) + " squares below 11621000");
  if (roots != 3408) r.fail(str(roots) + " squares below the threshold, expected 3408");
  u64 exceeding = 0, biggest = 0;
  for (u64 m = 2; m <= roots; ++m) {
    const u64 n = m * m;
    if (!exceedance(n, theta(n), kAlpha, env.hooks().g_form).square) continue;
    ++exceeding;
    biggest = n;
    if (const u64 f = env.f(n); f >= n) {
      r.fail("square n=" + str(n) + ": f(n)=" + str(f) + " >= n");
    }
  }
  r.note("g form " + std::string(to_string(env.hooks().g_form)) + ": " + str(exceeding) +
         " exceeding squares, largest " + str(biggest));
  if (exceeding != 118) r.fail(str(exceeding) + " exceeding squares, expected 118");
  if (biggest != 1'587'600) r.fail("largest exceeding square " + str(biggest) + ", expected 1587600");
}

void suite_figure1(const Env& env, SuiteReport& r) {
  std::vector<ScanRecord> rows;
  ScanOptions opt;
  opt.mode = ScanMode::kFigure;
  opt.jobs = env.hooks().jobs;
  opt.on_record = [&](const ScanRecord& rec) { rows.push_back(rec); };
  scan_range(10'000, 10'500, opt);
  if (rows.size() != 501) r.fail(str(rows.size()) + " rows, expected 501");
  std::mt19937_64 rng(10'000);
  std::vector<std::size_t> idx(rows.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), rng);
  for (std::size_t i = 0; i < std::min<std::size_t>(5, idx.size()); ++i) {
    const ScanRecord& row = rows[idx[i]];
    const u64 want = oracle_congruence(row.n, 10'500).f();
    r.note("n=" + str(row.n) + " f=" + str(row.f) + " oracle=" + str(want));
    if (row.f != want) r.fail("n=" + str(row.n) + ": figure row " + str(row.f) + " vs oracle " + str(want));
  }
}

void suite_bigeleven(const Env& env, SuiteReport& r) {
  for (const auto& p : published_big_values()) {
    const u64 f = env.f(p.n);
    if (f != p.f) r.fail("f(" + str(p.n) + ")=" + str(f) + ", published " + str(p.f));
  }
}

void suite_headline(const Env& env, SuiteReport& r) {
  u64 primes = 0;
  for (u64 n = 2; n <= 20'000; ++n) {
    const u64 f = env.f(n);
    if (f >= n) r.fail("n=" + str(n) + ": f(n)=" + str(f) + " >= n");
    if (is_prime(n)) ++primes;
  }
  r.note("f(n) < n on [2, 20000], " + str(primes) + " primes included");
}

void suite_theorem4(const Env& env, SuiteReport& r) {
  std::vector<double> ratios;
  u64 previous = 0;
  for (u64 T : {1'000ULL, 10'000ULL, 100'000ULL}) {
    const SumFRatio s = sum_f_ratio(T, env.hooks().jobs);
    r.note("T=" + str(T) + " S(T)=" + str(s.sum_f) + " ratio=" + fmt(s.ratio, 15));
    if (!(s.ratio > 0)) r.fail("T=" + str(T) + ": ratio not positive");
    if (s.sum_f <= previous) r.fail("T=" + str(T) + ": S(T) not increasing");
    previous = s.sum_f;
    ratios.push_back(s.ratio);
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  if (!(*hi <= 3.0 * *lo)) r.fail("ratios spread by more than a factor 3");
}

void suite_determinism(const Env& env, SuiteReport& r) {
  auto run = [](unsigned jobs, std::optional<std::filesystem::path> checkpoint, bool resume,
                std::optional<u64> stop, std::vector<ScanRecord>& sink) {
    ScanOptions opt;
    opt.mode = ScanMode::kFull;
    opt.jobs = jobs;
    opt.chunk_size = 97;
    opt.checkpoint = std::move(checkpoint);
    opt.resume = resume;
    opt.stop_after_chunks = stop;
    opt.on_record = [&](const ScanRecord& rec) { sink.push_back(rec); };
    return scan_range(2, 3000, opt);
  };
  std::vector<ScanRecord> base_records;
  const ScanAggregate base = run(1, std::nullopt, false, std::nullopt, base_records);
  for (unsigned jobs : {4u, 16u}) {
    std::vector<ScanRecord> records;
    const ScanAggregate agg = run(jobs, std::nullopt, false, std::nullopt, records);
    if (!(agg == base)) r.fail("aggregate differs with jobs=" + str(jobs));
    if (records != base_records) r.fail("records differ with jobs=" + str(jobs));
  }
  const auto path = std::filesystem::temp_directory_path() /
                    ("axby-determinism-" + std::to_string(::getpid()) + ".jsonl");
  std::vector<ScanRecord> resumed;
  const ScanAggregate partial = run(env.hooks().jobs + 3, path, false, 7, resumed);
  if (partial.complete() || partial.chunks_done != 7) r.fail("interruption did not stop after 7 chunks");
  const ScanAggregate finished = run(4, path, true, std::nullopt, resumed);
  std::filesystem::remove(path);
  if (!(finished == base)) r.fail("resumed aggregate differs from the uninterrupted scan");
  if (resumed != base_records) r.fail("resumed records differ from the uninterrupted scan");
  r.note("jobs 1/4/16 and interrupt+resume agree over " + str(base.chunk_count) + " chunks");
}

using SuiteFn = void (*)(const Env&, SuiteReport&);

const std::map<std::string, SuiteFn, std::less<>>& registry() {
  static const std::map<std::string, SuiteFn, std::less<>> suites{
      {"oracle", suite_oracle},         {"bounds", suite_bounds},
      {"reduced", suite_reduced},       {"m2", suite_m2},
      {"prop7", suite_prop7},           {"ineq910", suite_ineq910},
      {"skalba", suite_skalba},         {"granville", suite_granville},
      {"threshold", suite_threshold},   {"exceedance", suite_exceedance},
      {"squares", suite_squares},       {"figure1", suite_figure1},
      {"bigeleven", suite_bigeleven},   {"champion", suite_champion},
      {"headline", suite_headline},     {"threet", suite_threet},
      {"theorem4", suite_theorem4},     {"determinism", suite_determinism},
      {"candidates", suite_candidates},
  };
  return suites;
}

}  // namespace

void SuiteReport::fail(std::string what) {
  passed = false;
  if (failures.size() < kMaxFailures) failures.push_back(std::move(what));
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

SuiteReport verify_suite(std::string_view name, const SuiteHooks& hooks) {
  const auto it = registry().find(name);
  if (it == registry().end()) {
    throw std::invalid_argument("unknown suite: " + std::string(name));
  }
  SuiteReport report;
  report.suite = std::string(name);
  const auto start = std::chrono::steady_clock::now();
  try {
    it->second(Env(hooks), report);
  } catch (const std::exception& e) {
    report.fail(std::string("exception: ") + e.what());
  }
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string suite_json(const SuiteReport& report) {
  const nlohmann::json j{{"suite", report.suite},
                         {"passed", report.passed},
                         {"failures", report.failures},
                         {"notes", report.notes}};
  return j.dump();
}

const std::vector<PublishedF>& published_big_values() {
  static const std::vector<PublishedF> values{
      {5'045'040, 4559}, {5'266'800, 4051}, {5'405'400, 5069}, {5'569'200, 4494},
      {5'654'880, 4534}, {5'765'760, 5286}, {6'126'120, 5211}, {6'320'160, 5407},
      {6'486'480, 4333}, {7'207'200, 6309}, {8'648'640, 5330},
  };
  return values;
}

}  // namespace axby
