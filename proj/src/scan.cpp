#include "axby/scan.hpp"

#include <unistd.h>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "axby/solver.hpp"

namespace axby {
namespace {

using nlohmann::json;

struct ChunkResult {
  ChunkSummary summary;
  std::vector<ScanRecord> records;
};

struct ScanPlan {
  u64 lo;
  u64 hi;
  u64 chunk_size;
  u64 chunk_count;

  u64 chunk_lo(u64 i) const { return lo + i * chunk_size; }
  u64 chunk_hi(u64 i) const { return std::min(hi, chunk_lo(i) + chunk_size - 1); }
};

ChunkResult compute_chunk(const ScanPlan& plan, u64 index, const ScanOptions& opt) {
  ChunkResult out;
  ChunkSummary& s = out.summary;
  s.chunk_index = index;
  s.lo = plan.chunk_lo(index);
  s.hi = plan.chunk_hi(index);
  const std::vector<u32> thetas = theta_range(s.lo, s.hi, s.hi - s.lo + 1);
  for (u64 n = s.lo; n <= s.hi; ++n) {
    ScanRecord r;
    r.n = n;
    r.theta = thetas[n - s.lo];
    // g(n, alpha) needs alpha < 2 sqrt(n); below that the flags stay false.
    if (opt.alpha * opt.alpha < 4.0 * static_cast<double>(n)) {
      const Exceedance e = exceedance(n, r.theta, opt.alpha, opt.g_form);
      r.exceed = e.nonsquare;
      r.exceed_square = e.square;
    }
    ++s.numbers;
    if (is_square(n)) ++s.square_count;
    if (r.exceed) ++s.exceed_count;
    if (r.exceed_square) ++s.exceed_square_count;
    switch (opt.mode) {
      case ScanMode::kExceed:
        if (r.exceed || r.exceed_square) out.records.push_back(r);
        continue;
      case ScanMode::kFigure:
        r.f = count_f(n);
        break;
      case ScanMode::kFull: {
        const KProfile profile = k_profile(n);
        r.f = profile.total();
        r.reduced = profile.count(1);
        r.m2 = profile.count(2);
        r.m3 = profile.count(3);
        r.k_max = profile.k_max();
        r.has_profile = true;
        break;
      }
    }
    r.has_f = true;
    r.f_lt_n = r.f < n;
    s.sum_f += r.f;
    if (!r.f_lt_n) s.violations.push_back(n);
    out.records.push_back(r);
  }
  return out;
}

json header_json(const ScanPlan& plan, const ScanOptions& opt) {
  return json{{"kind", "header"},
              {"version", 1},
              {"lo", plan.lo},
              {"hi", plan.hi},
              {"mode", std::string(to_string(opt.mode))},
              {"chunk_size", plan.chunk_size},
              {"alpha", opt.alpha},
              {"g_form", std::string(to_string(opt.g_form))}};
}

json chunk_json(const ChunkSummary& c) {
  return json{{"kind", "chunk"},
              {"chunk_index", c.chunk_index},
              {"lo", c.lo},
              {"hi", c.hi},
              {"numbers", c.numbers},
              {"sum_f", c.sum_f},
              {"exceed_count", c.exceed_count},
              {"exceed_square_count", c.exceed_square_count},
              {"square_count", c.square_count},
              {"violations", c.violations}};
}

json aggregate_json(const ScanAggregate& a) {
  json j{{"kind", "aggregate"},
         {"lo", a.lo},
         {"hi", a.hi},
         {"mode", std::string(to_string(a.mode))},
         {"chunk_count", a.chunk_count},
         {"numbers", a.numbers},
         {"sum_f", a.sum_f},
         {"exceed_count", a.exceed_count},
         {"exceed_square_count", a.exceed_square_count},
         {"square_count", a.square_count},
         {"violations", a.violations}};
  if (a.theorem4_ratio) j["theorem4_ratio"] = *a.theorem4_ratio;
  return j;
}

class CheckpointWriter {
 public:
  CheckpointWriter(const std::filesystem::path& path, bool append) {
    file_ = std::fopen(path.c_str(), append ? "ab" : "wb");
    if (!file_) {
      throw std::runtime_error("cannot open checkpoint " + path.string());
    }
  }
  ~CheckpointWriter() {
    if (file_) std::fclose(file_);
  }
  CheckpointWriter(const CheckpointWriter&) = delete;
  CheckpointWriter& operator=(const CheckpointWriter&) = delete;

  void write_line(const json& j) {
    const std::string line = j.dump() + "\n";
    if (std::fwrite(line.data(), 1, line.size(), file_) != line.size() ||
        std::fflush(file_) != 0 || ::fsync(::fileno(file_)) != 0) {
      throw std::runtime_error("checkpoint write failed");
    }
  }

 private:
  std::FILE* file_ = nullptr;
};

struct ResumeState {
  std::vector<ChunkSummary> chunks;
  bool finished = false;
  bool had_header = false;
};

template <class T>
T field(const json& j, const char* key, std::size_t line) {
  if (!j.contains(key)) {
    throw CheckpointError(line, std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw CheckpointError(line, std::string("bad field '") + key + "'");
  }
}

ResumeState read_checkpoint(const std::filesystem::path& path, const ScanPlan& plan,
                            const ScanOptions& opt) {
  ResumeState state;
  std::ifstream in(path, std::ios::binary);
  if (!in) return state;
  const json expected_header = header_json(plan, opt);
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (in.eof()) {
      // The last line lacks its terminating newline: an interrupted write.
      throw CheckpointError(line_no, "truncated line");
    }
    if (state.finished) throw CheckpointError(line_no, "data after the aggregate line");
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error&) {
      throw CheckpointError(line_no, "not valid JSON");
    }
    if (!j.is_object()) throw CheckpointError(line_no, "not a JSON object");
    const auto kind = field<std::string>(j, "kind", line_no);
    if (line_no == 1) {
      if (kind != "header") throw CheckpointError(line_no, "first line must be the header");
      if (j != expected_header) {
        throw CheckpointError(line_no, "scan parameters differ from this run");
      }
      state.had_header = true;
      continue;
    }
    if (kind == "chunk") {
      ChunkSummary c;
      c.chunk_index = field<u64>(j, "chunk_index", line_no);
      c.lo = field<u64>(j, "lo", line_no);
      c.hi = field<u64>(j, "hi", line_no);
      c.numbers = field<u64>(j, "numbers", line_no);
      c.sum_f = field<u64>(j, "sum_f", line_no);
      c.exceed_count = field<u64>(j, "exceed_count", line_no);
      c.exceed_square_count = field<u64>(j, "exceed_square_count", line_no);
      c.square_count = field<u64>(j, "square_count", line_no);
      c.violations = field<std::vector<u64>>(j, "violations", line_no);
      const u64 want = state.chunks.size();
      if (c.chunk_index != want || want >= plan.chunk_count ||
          c.lo != plan.chunk_lo(want) || c.hi != plan.chunk_hi(want) ||
          c.numbers != c.hi - c.lo + 1) {
        throw CheckpointError(line_no, "chunk out of sequence or with wrong bounds");
      }
      state.chunks.push_back(std::move(c));
    } else if (kind == "aggregate") {
      if (state.chunks.size() != plan.chunk_count) {
        throw CheckpointError(line_no, "aggregate before all chunks");
      }
      state.finished = true;
    } else {
      throw CheckpointError(line_no, "unknown kind '" + kind + "'");
    }
  }
  if (line_no > 0 && !state.had_header) throw CheckpointError(1, "missing header");
  return state;
}

void finish(ScanAggregate& agg) {
  if (agg.complete() && agg.mode != ScanMode::kExceed && agg.lo <= 2 && agg.hi >= 3) {
    const double T = static_cast<double>(agg.hi);
    const double l = std::log(T);
    agg.theorem4_ratio = static_cast<double>(agg.sum_f) / (T * l * l * l);
  }
}

}  // namespace

std::string_view to_string(ScanMode mode) {
  switch (mode) {
    case ScanMode::kFull: return "full";
    case ScanMode::kExceed: return "exceed";
    case ScanMode::kFigure: return "figure";
  }
  return "unknown";
}

ScanMode parse_scan_mode(std::string_view name) {
  if (name == "full") return ScanMode::kFull;
  if (name == "exceed" || name == "exceed_only") return ScanMode::kExceed;
  if (name == "figure") return ScanMode::kFigure;
  throw std::invalid_argument("unknown scan mode: " + std::string(name));
}

void ScanAggregate::merge(const ChunkSummary& c) {
  ++chunks_done;
  numbers += c.numbers;
  sum_f += c.sum_f;
  exceed_count += c.exceed_count;
  exceed_square_count += c.exceed_square_count;
  square_count += c.square_count;
  violations.insert(violations.end(), c.violations.begin(), c.violations.end());
}

double estimate_enumeration_cost(u64 lo, u64 hi) {
  const double top = static_cast<double>(hi);
  const double l = std::log(top);
  // count * average theta * window width * harmonic factor
  return static_cast<double>(hi - lo + 1) * l * std::sqrt(top) * (0.5 * l + 1.0);
}

ScanAggregate scan_range(u64 lo, u64 hi, const ScanOptions& opt) {
  if (lo < 2 || lo > hi) throw std::domain_error("scan: need 2 <= lo <= hi");
  if (hi > kMaxSolverN) throw std::domain_error("scan: hi beyond the exact range");
  if (opt.chunk_size == 0) throw std::domain_error("scan: chunk size must be positive");
  if (opt.jobs == 0) throw std::domain_error("scan: jobs must be positive");
  if (opt.mode != ScanMode::kExceed) {
    const double cost = estimate_enumeration_cost(lo, hi);
    if (cost > opt.cost_budget) {
      std::ostringstream msg;
      msg << "scan: enumerating [" << lo << ", " << hi << "] needs about " << cost
          << " operations, budget is " << opt.cost_budget;
      throw std::domain_error(msg.str());
    }
  }
  if (opt.mode == ScanMode::kExceed) {
    // Exceedance needs alpha < 2 sqrt(lo); fail before any work.
    (void)g(lo, opt.alpha, opt.g_form);
  } else if (!(opt.alpha >= 1.0)) {
    throw std::domain_error("scan: need alpha >= 1");
  }

  const ScanPlan plan{lo, hi, opt.chunk_size, (hi - lo) / opt.chunk_size + 1};
  ScanAggregate agg;
  agg.lo = lo;
  agg.hi = hi;
  agg.mode = opt.mode;
  agg.chunk_count = plan.chunk_count;

  std::unique_ptr<CheckpointWriter> writer;
  if (opt.checkpoint) {
    ResumeState state;
    if (opt.resume) state = read_checkpoint(*opt.checkpoint, plan, opt);
    for (const auto& c : state.chunks) agg.merge(c);
    if (state.finished) {
      finish(agg);
      return agg;
    }
    writer = std::make_unique<CheckpointWriter>(*opt.checkpoint, state.had_header);
    if (!state.had_header) writer->write_line(header_json(plan, opt));
  }

  const u64 first = agg.chunks_done;
  std::atomic<u64> next{first};
  std::atomic<bool> stop{false};
  std::mutex mu;
  std::map<u64, ChunkResult> pending;
  u64 next_commit = first;
  u64 committed = 0;
  std::exception_ptr error;

  auto commit_ready = [&] {
    // Caller holds mu.
    for (auto it = pending.find(next_commit); it != pending.end();
         it = pending.find(next_commit)) {
      if (stop.load()) return;
      ChunkResult result = std::move(it->second);
      pending.erase(it);
      if (writer) writer->write_line(chunk_json(result.summary));
      if (opt.on_record) {
        for (const auto& r : result.records) opt.on_record(r);
      }
      agg.merge(result.summary);
      if (opt.on_chunk) opt.on_chunk(result.summary, agg);
      ++next_commit;
      ++committed;
      if (opt.stop_after_chunks && committed >= *opt.stop_after_chunks) {
        stop = true;
        return;
      }
    }
  };

  auto work = [&] {
    while (!stop.load()) {
      const u64 idx = next.fetch_add(1);
      if (idx >= plan.chunk_count) return;
      try {
        ChunkResult result = compute_chunk(plan, idx, opt);
        std::lock_guard lock(mu);
        pending.emplace(idx, std::move(result));
        commit_ready();
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
        stop = true;
        return;
      }
    }
  };

  const unsigned jobs = std::min<u64>(opt.jobs, plan.chunk_count - first + 1);
  if (jobs <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);

  finish(agg);
  if (writer && agg.complete()) writer->write_line(aggregate_json(agg));
  return agg;
}

SumFRatio sum_f_ratio(u64 T, unsigned jobs, double cost_budget) {
  if (T < 10) throw std::domain_error("sum_f_ratio: need T >= 10");
  ScanOptions opt;
  opt.mode = ScanMode::kFigure;
  opt.jobs = jobs;
  opt.cost_budget = cost_budget;
  const ScanAggregate agg = scan_range(2, T, opt);
  return SumFRatio{T, agg.sum_f, *agg.theorem4_ratio};
}

void write_record_csv_header(std::ostream& out) {
  out << "n,f,reduced,m2,m3,kmax,exceed,f_lt_n\n";
}

void write_record_csv(std::ostream& out, const ScanRecord& r) {
  out << r.n << ',';
  if (r.has_f) out << r.f;
  out << ',';
  if (r.has_profile) out << r.reduced << ',' << r.m2 << ',' << r.m3 << ',' << r.k_max;
  else out << ",,,";
  out << ',' << ((r.exceed || r.exceed_square) ? 1 : 0) << ',';
  if (r.has_f) out << (r.f_lt_n ? 1 : 0);
  out << '\n';
}

}  // namespace axby
