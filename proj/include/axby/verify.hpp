#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "axby/bounds.hpp"
#include "axby/solver.hpp"

namespace axby {

struct SuiteReport {
  std::string suite;
  bool passed = true;
  std::vector<std::string> failures;  // counterexamples, first failure first
  std::vector<std::string> notes;     // measured values worth printing
  double seconds = 0;

  void fail(std::string what);
  void note(std::string what) { notes.push_back(std::move(what)); }
};

/// Substitutes for library calls inside the suites; empty members use the
/// real implementation.
struct SuiteHooks {
  std::function<KProfile(u64)> k_profile;
  std::function<u64(u64)> count_f;
  GForm g_form = GForm::kReconciled;
  unsigned jobs = 1;
};

/// oracle, bounds, reduced, m2, prop7, ineq910, skalba, granville,
/// threshold, exceedance, squares, figure1, bigeleven, plus champion,
/// headline, threet, theorem4, determinism, candidates.
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown name.
SuiteReport verify_suite(std::string_view name, const SuiteHooks& hooks = {});

/// {"suite": ..., "passed": ..., "failures": [...], "notes": [...]}
std::string suite_json(const SuiteReport& report);

// Published values the suites check against.
struct PublishedF {
  u64 n;
  u64 f;
};
const std::vector<PublishedF>& published_big_values();

inline constexpr double kAlpha = 2.95;
inline constexpr double kC0 = 8.44697;
inline constexpr u64 kThresholdN = 11'621'000;

}  // namespace axby
