#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "axby/arith.hpp"
#include "axby/bounds.hpp"

namespace axby {

/// kFull enumerates every n (k-profile, exceedance flags);
/// kExceed only sieves theta and evaluates g, emitting flagged n;
/// kFigure counts f(n) for every n.
enum class ScanMode { kFull, kExceed, kFigure };

std::string_view to_string(ScanMode mode);
/// "full", "exceed" (or "exceed_only"), "figure".
ScanMode parse_scan_mode(std::string_view name);

struct ScanRecord {
  u64 n = 0;
  u64 theta = 0;
  bool exceed = false;         // theta(n) g / 2 >= n
  bool exceed_square = false;  // (theta(n) + 1) g / 2 >= n, squares only
  bool has_f = false;          // f and f_lt_n are meaningful
  bool has_profile = false;    // reduced, m2, m3, k_max are meaningful
  u64 f = 0;
  u64 reduced = 0;  // M(n, 1)
  u64 m2 = 0;
  u64 m3 = 0;
  u64 k_max = 0;
  bool f_lt_n = false;

  friend bool operator==(const ScanRecord&, const ScanRecord&) = default;
};

/// Per-chunk totals; also the unit persisted in the checkpoint.
struct ChunkSummary {
  u64 chunk_index = 0;
  u64 lo = 0;
  u64 hi = 0;
  u64 numbers = 0;
  u64 sum_f = 0;
  u64 exceed_count = 0;
  u64 exceed_square_count = 0;
  u64 square_count = 0;
  std::vector<u64> violations;  // n with f(n) >= n

  friend bool operator==(const ChunkSummary&, const ChunkSummary&) = default;
};

struct ScanAggregate {
  u64 lo = 0;
  u64 hi = 0;
  ScanMode mode = ScanMode::kFull;
  u64 chunk_count = 0;
  u64 chunks_done = 0;
  u64 numbers = 0;
  u64 sum_f = 0;
  u64 exceed_count = 0;
  u64 exceed_square_count = 0;
  u64 square_count = 0;
  std::vector<u64> violations;
  // S(T) / (T ln^3 T) with T = hi; set for completed enumerating scans
  // starting at lo <= 2.
  std::optional<double> theorem4_ratio;

  bool complete() const { return chunks_done == chunk_count; }
  /// Chunks must be merged in chunk-index order.
  void merge(const ChunkSummary& chunk);

  friend bool operator==(const ScanAggregate&, const ScanAggregate&) = default;
};

class CheckpointError : public std::runtime_error {
 public:
  CheckpointError(std::size_t line, const std::string& what)
      : std::runtime_error("checkpoint line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

inline constexpr u64 kDefaultChunkSize = 1024;
// Roughly one minute of single-core enumeration.
inline constexpr double kDefaultCostBudget = 2e10;

struct ScanOptions {
  ScanMode mode = ScanMode::kFull;
  unsigned jobs = 1;
  u64 chunk_size = kDefaultChunkSize;
  double alpha = 2.95;
  GForm g_form = GForm::kReconciled;
  std::optional<std::filesystem::path> checkpoint;
  bool resume = false;
  // Stop after this many chunks are committed in this run (interruption).
  std::optional<u64> stop_after_chunks;
  double cost_budget = kDefaultCostBudget;
  // Called in ascending n order from a single thread at a time.
  std::function<void(const ScanRecord&)> on_record;
  std::function<void(const ChunkSummary&, const ScanAggregate&)> on_chunk;
};

/// Estimated inner-loop operations for enumerating every n in [lo, hi].
double estimate_enumeration_cost(u64 lo, u64 hi);

/// Requires 2 <= lo <= hi. Throws std::domain_error when an enumerating
/// scan exceeds the cost budget, CheckpointError on a bad checkpoint.
ScanAggregate scan_range(u64 lo, u64 hi, const ScanOptions& options);

struct SumFRatio {
  u64 T = 0;
  u64 sum_f = 0;  // sum_{n=2}^{T} f(n)
  double ratio = 0;
};

SumFRatio sum_f_ratio(u64 T, unsigned jobs = 1,
                      double cost_budget = kDefaultCostBudget);

// CSV record output: header n,f,reduced,m2,m3,kmax,exceed,f_lt_n.
void write_record_csv_header(std::ostream& out);
void write_record_csv(std::ostream& out, const ScanRecord& r);

}  // namespace axby
