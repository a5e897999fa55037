#include "axby/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "axby/bounds.hpp"
#include "axby/families.hpp"
#include "axby/scan.hpp"
#include "axby/solver.hpp"

namespace axby::cli {
namespace {

using nlohmann::json;

enum class Format { kTable, kCsv, kJson };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string cell_text(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;

  void add(std::vector<json> row) { rows.push_back(std::move(row)); }
};

void write_tables(std::ostream& out, Format format, const std::vector<Table>& tables) {
  if (format == Format::kJson) {
    json doc = json::object();
    for (const Table& t : tables) {
      json rows = json::array();
      for (const auto& row : t.rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = row[i];
        rows.push_back(std::move(obj));
      }
      doc[t.name] = std::move(rows);
    }
    out << doc.dump() << '\n';
    return;
  }
  bool first = true;
  for (const Table& t : tables) {
    if (!first) out << '\n';
    first = false;
    if (format == Format::kCsv) {
      for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
      out << '\n';
      for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
        out << '\n';
      }
      continue;
    }
    std::vector<std::size_t> width(t.columns.size());
    for (std::size_t i = 0; i < t.columns.size(); ++i) width[i] = t.columns[i].size();
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        width[i] = std::max(width[i], cell_text(row[i]).size());
      }
    }
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out << "  ";
        out << std::string(width[i] - cells[i].size(), ' ') << cells[i];
      }
      out << '\n';
    };
    out << "# " << t.name << '\n';
    line(t.columns);
    for (const auto& row : t.rows) {
      std::vector<std::string> cells;
      for (const auto& v : row) cells.push_back(cell_text(v));
      line(cells);
    }
  }
}

json opt(bool present, u64 value) { return present ? json(value) : json(nullptr); }

json solution_row_header() { return json::array({"X", "x", "Y", "y", "a", "b", "k"}); }

std::vector<json> solution_cells(const Solution& s) {
  return {s.X, s.x, s.Y, s.y, s.a, s.b, s.k};
}

Table solutions_table(std::string name, const std::vector<Solution>& solutions) {
  Table t{std::move(name), solution_row_header().get<std::vector<std::string>>(), {}};
  for (const Solution& s : solutions) t.add(solution_cells(s));
  return t;
}

void require_n(u64 n, const char* what) {
  if (n < 2 || n > kMaxSolverN) {
    throw UsageError(std::string(what) + " must lie in [2, " + std::to_string(kMaxSolverN) + "]");
  }
}

json record_json(const ScanRecord& r) {
  json j{{"n", r.n}, {"theta", r.theta}, {"exceed", r.exceed}};
  if (r.exceed_square) j["exceed_square"] = true;
  if (r.has_f) {
    j["f"] = r.f;
    j["f_lt_n"] = r.f_lt_n;
  }
  if (r.has_profile) {
    j["reduced"] = r.reduced;
    j["m2"] = r.m2;
    j["m3"] = r.m3;
    j["kmax"] = r.k_max;
  }
  return j;
}

json aggregate_json(const ScanAggregate& a) {
  json j{{"lo", a.lo},
         {"hi", a.hi},
         {"mode", std::string(to_string(a.mode))},
         {"chunks", a.chunk_count},
         {"chunks_done", a.chunks_done},
         {"complete", a.complete()},
         {"numbers", a.numbers},
         {"sum_f", a.sum_f},
         {"exceed", a.exceed_count},
         {"exceed_square", a.exceed_square_count},
         {"squares", a.square_count},
         {"violations", a.violations}};
  if (a.theorem4_ratio) j["ratio"] = *a.theorem4_ratio;
  return j;
}

struct Parsed {
  Format format = Format::kTable;
  unsigned jobs = 1;
  std::string g_form = "reconciled";

  u64 n = 0;
  bool count = false;
  bool list = false;
  bool profile = false;

  u64 lo = 0;
  u64 hi = 0;
  std::string mode = "full";
  std::string checkpoint;
  bool resume = false;
  u64 chunk = kDefaultChunkSize;
  double alpha = 2.95;
  double budget = kDefaultCostBudget;

  double c = kC0;
  std::string out_path;

  u64 k = 0;
  u64 max_prime = 0;
  u64 m = 0;
  u64 t = 0;

  std::string suite;
};

int cmd_solve(const Parsed& p, std::ostream& out) {
  require_n(p.n, "n");
  std::vector<Table> tables;
  if (p.list) {
    tables.push_back(solutions_table("solutions", enumerate_solutions(p.n).solutions));
  }
  if (p.profile) {
    const KProfile prof = k_profile(p.n);
    Table t{"profile", {"k", "count"}, {}};
    for (const auto& [k, c] : prof.entries) t.add({k, c});
    tables.push_back(std::move(t));
    if (!p.list) {
      Table f{"f", {"n", "f"}, {}};
      f.add({p.n, prof.total()});
      tables.insert(tables.begin(), std::move(f));
    }
  } else if (!p.list) {
    if (p.format == Format::kTable) {
      out << count_f(p.n) << '\n';
      return kExitOk;
    }
    Table f{"f", {"n", "f"}, {}};
    f.add({p.n, count_f(p.n)});
    tables.push_back(std::move(f));
  }
  write_tables(out, p.format, tables);
  return kExitOk;
}

int cmd_scan(const Parsed& p, std::ostream& out, std::ostream& err) {
  if (p.lo < 2 || p.lo > p.hi || p.hi > kMaxSolverN) {
    throw UsageError("scan needs 2 <= lo <= hi <= " + std::to_string(kMaxSolverN));
  }
  if (p.resume && p.checkpoint.empty()) throw UsageError("--resume needs --checkpoint");
  if (p.chunk == 0) throw UsageError("--chunk must be positive");
  ScanOptions opt;
  opt.mode = parse_scan_mode(p.mode);
  opt.jobs = p.jobs;
  opt.chunk_size = p.chunk;
  opt.alpha = p.alpha;
  opt.g_form = parse_gform(p.g_form);
  if (!p.checkpoint.empty()) opt.checkpoint = p.checkpoint;
  opt.resume = p.resume;
  opt.cost_budget = p.budget;
  if (p.format == Format::kCsv) write_record_csv_header(out);
  opt.on_record = [&](const ScanRecord& r) {
    switch (p.format) {
      case Format::kCsv: write_record_csv(out, r); break;
      case Format::kJson: out << record_json(r).dump() << '\n'; break;
      case Format::kTable: {
        out << r.n;
        if (r.has_f) out << " f=" << r.f;
        if (r.has_profile) {
          out << " M1=" << r.reduced << " M2=" << r.m2 << " M3=" << r.m3 << " kmax=" << r.k_max;
        }
        if (r.exceed) out << " exceed";
        if (r.exceed_square) out << " exceed_square";
        out << '\n';
        break;
      }
    }
  };
  opt.on_chunk = [&](const ChunkSummary& c, const ScanAggregate& a) {
    err << "chunk " << c.chunk_index + 1 << "/" << a.chunk_count << " [" << c.lo << ", " << c.hi
        << "]\n";
  };
  const ScanAggregate agg = scan_range(p.lo, p.hi, opt);
  const json summary = aggregate_json(agg);
  if (p.format == Format::kCsv) {
    err << summary.dump() << '\n';
  } else if (p.format == Format::kJson) {
    out << json{{"aggregate", summary}}.dump() << '\n';
  } else {
    for (const auto& [key, value] : summary.items()) out << "# " << key << ": " << value.dump() << '\n';
  }
  if (!agg.violations.empty()) {
    err << "f(n) >= n at n=" << agg.violations.front() << '\n';
    return kExitFailed;
  }
  return kExitOk;
}

int cmd_bounds(const Parsed& p, std::ostream& out) {
  require_n(p.n, "n");
  const BoundReport r = bound_report(p.n, p.alpha, p.c, parse_gform(p.g_form));
  Table t{"bounds",
          {"n", "alpha", "C", "theta", "rho_bound", "rho_prime_bound", "g", "h", "c_ratio",
           "exceed", "exceed_square"},
          {}};
  t.add({r.n, r.alpha, r.C, r.theta, r.rho_bound, r.rho_prime_bound, r.g, r.h, r.c_ratio,
         r.exceed_nonsquare, r.exceed_square});
  write_tables(out, p.format, {t});
  return kExitOk;
}

int cmd_figure1(const Parsed& p, std::ostream& out) {
  std::ofstream file;
  if (!p.out_path.empty()) {
    file.open(p.out_path, std::ios::binary | std::ios::trunc);
    if (!file) throw UsageError("cannot open " + p.out_path);
  }
  std::ostream& sink = p.out_path.empty() ? out : file;
  ScanOptions opt;
  opt.mode = ScanMode::kFigure;
  opt.jobs = p.jobs;
  sink << "n,f\n";
  opt.on_record = [&](const ScanRecord& r) { sink << r.n << ',' << r.f << '\n'; };
  scan_range(10'000, 10'500, opt);
  return kExitOk;
}

int cmd_granville(const Parsed& p, std::ostream& out) {
  const GranvilleCertificate c = granville(p.k, p.max_prime);
  Table head{"certificate",
             {"k", "max_prime", "primes", "n", "pi", "lower_bound", "certified", "f"},
             {}};
  std::string primes;
  for (u64 q : c.primes) primes += (primes.empty() ? "" : " ") + std::to_string(q);
  head.add({c.k, c.max_prime, primes, c.n, c.pi_count, c.claimed_bound,
            c.certified_solutions.size(), opt(c.f_checked, c.f)});
  write_tables(out, p.format, {head, solutions_table("solutions", c.certified_solutions)});
  return kExitOk;
}

int cmd_skalba(const Parsed& p, std::ostream& out) {
  const SkalbaCheck c = skalba(p.m);
  Table t{"skalba", {"m", "n", "identities", "primes_1_mod_4", "m4", "ok"}, {}};
  t.add({c.m, c.n, c.identities, c.primes_1_mod_4, c.m4, c.ok()});
  write_tables(out, p.format, {t});
  return c.ok() ? kExitOk : kExitFailed;
}

int cmd_three_t(const Parsed& p, std::ostream& out) {
  const Solution s = family_3t(p.t);
  Table t{"three_t", {"t", "n", "X", "x", "Y", "y", "a", "b", "k"}, {}};
  t.add({p.t, s.n, s.X, s.x, s.Y, s.y, s.a, s.b, s.k});
  write_tables(out, p.format, {t});
  return kExitOk;
}

int cmd_remark1(const Parsed& p, std::ostream& out) {
  require_n(p.n, "n");
  Table t{"remark1", {"family", "X", "x", "Y", "y", "a", "b", "k", "transposed"}, {}};
  for (const FamilySolution& f : remark1_construct(p.n, p.k)) {
    const Solution& s = f.solution;
    t.add({f.family == Remark1Family::kUnitA ? "a=1" : "a=n", s.X, s.x, s.Y, s.y, s.a, s.b,
           s.k, f.transposed});
  }
  write_tables(out, p.format, {t});
  return kExitOk;
}

int cmd_sumf(const Parsed& p, std::ostream& out) {
  if (p.t < 10 || p.t > kMaxSolverN) throw UsageError("--t must lie in [10, 10^12]");
  const SumFRatio s = sum_f_ratio(p.t, p.jobs, p.budget);
  Table t{"sumf", {"T", "sum_f", "ratio"}, {}};
  t.add({s.T, s.sum_f, s.ratio});
  write_tables(out, p.format, {t});
  return kExitOk;
}

int cmd_verify(const Parsed& p, SuiteHooks hooks, std::ostream& out, std::ostream& err) {
  std::vector<std::string> names;
  if (p.suite == "all") {
    names = suite_names();
  } else if (std::find(suite_names().begin(), suite_names().end(), p.suite) ==
             suite_names().end()) {
    throw UsageError("unknown suite '" + p.suite + "'");
  } else {
    names.push_back(p.suite);
  }
  hooks.g_form = parse_gform(p.g_form);
  hooks.jobs = p.jobs;
  bool passed = true;
  for (const std::string& name : names) {
    const SuiteReport r = verify_suite(name, hooks);
    passed = passed && r.passed;
    out << suite_json(r) << '\n';
    err << name << ": " << (r.passed ? "PASS" : "FAIL") << " (" << r.seconds << " s)\n";
    for (const auto& f : r.failures) err << "  counterexample: " << f << '\n';
  }
  return passed ? kExitOk : kExitFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const SuiteHooks& hooks) {
  Parsed p;
  CLI::App app{"Exact solution counts for (X+1/x)(Y+1/y) = n", "axby"};
  app.require_subcommand(1);
  app.fallthrough();
  const std::map<std::string, Format> formats{
      {"table", Format::kTable}, {"csv", Format::kCsv}, {"json", Format::kJson}};
  app.add_option("--format", p.format, "table, csv or json")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app.add_option("--jobs", p.jobs, "worker threads")->check(CLI::Range(1u, 1024u));
  const auto add_gform = [&](CLI::App* sub) {
    sub->add_option("--g-form", p.g_form, "reconciled, printed or noslack")
        ->check(CLI::IsMember({"reconciled", "printed", "noslack"}));
  };
  const auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--budget", p.budget, "enumeration cost budget")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* solve = app.add_subcommand("solve", "solutions for one n");
  solve->add_option("n", p.n)->required();
  auto* count = solve->add_flag("--count", p.count, "print f(n)");
  auto* list = solve->add_flag("--list", p.list, "list canonical solutions");
  count->excludes(list);
  solve->add_flag("--profile", p.profile, "M(n, k) for each k");

  CLI::App* scan = app.add_subcommand("scan", "scan a range of n");
  scan->add_option("lo", p.lo)->required();
  scan->add_option("hi", p.hi)->required();
  scan->add_option("--mode", p.mode)->check(CLI::IsMember({"full", "exceed", "exceed_only", "figure"}));
  scan->add_option("--checkpoint", p.checkpoint);
  scan->add_flag("--resume", p.resume);
  scan->add_option("--chunk", p.chunk);
  scan->add_option("--alpha", p.alpha)->check(CLI::Range(1.0, 1e6));
  add_gform(scan);
  add_budget(scan);

  CLI::App* bounds = app.add_subcommand("bounds", "bound values at n");
  bounds->add_option("n", p.n)->required();
  bounds->add_option("--alpha", p.alpha)->required()->check(CLI::Range(1.0, 1e6));
  bounds->add_option("--c", p.c)->check(CLI::PositiveNumber);
  add_gform(bounds);

  CLI::App* figure1 = app.add_subcommand("figure1", "f(n) for 10000 <= n <= 10500 as CSV");
  figure1->add_option("--out", p.out_path);

  CLI::App* families = app.add_subcommand("families", "explicit solution families");
  families->require_subcommand(1);
  CLI::App* granville_cmd = families->add_subcommand("granville");
  granville_cmd->add_option("--k", p.k)->required()->check(CLI::Range(u64{2}, u64{1} << 32));
  granville_cmd->add_option("--max-prime", p.max_prime)->required()->check(CLI::Range(u64{2}, u64{1} << 32));
  CLI::App* skalba_cmd = families->add_subcommand("skalba");
  skalba_cmd->add_option("--m", p.m)->required()->check(CLI::Range(u64{1}, u64{100'000}));
  CLI::App* three_t = families->add_subcommand("three-t");
  three_t->add_option("--t", p.t)->required()->check(CLI::Range(u64{1}, u64{333'333'333'333}));
  CLI::App* remark1 = families->add_subcommand("remark1");
  remark1->add_option("--n", p.n)->required();
  remark1->add_option("--k", p.k)->required()->check(CLI::PositiveNumber);

  CLI::App* stats = app.add_subcommand("stats", "summatory statistics");
  stats->require_subcommand(1);
  CLI::App* sumf = stats->add_subcommand("sumf");
  sumf->add_option("--t", p.t)->required();
  add_budget(sumf);

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", p.suite)->required();
  add_gform(verify);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*solve) return cmd_solve(p, out);
    if (*scan) return cmd_scan(p, out, err);
    if (*bounds) return cmd_bounds(p, out);
    if (*figure1) return cmd_figure1(p, out);
    if (*granville_cmd) return cmd_granville(p, out);
    if (*skalba_cmd) return cmd_skalba(p, out);
    if (*three_t) return cmd_three_t(p, out);
    if (*remark1) return cmd_remark1(p, out);
    if (*sumf) return cmd_sumf(p, out);
    if (*verify) return cmd_verify(p, hooks, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CheckpointError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailed;
  }
  err << "usage error: no subcommand\n";
  return kExitUsage;
}

}  // namespace axby::cli
