// Acceptance gate: one PASS/FAIL line per criterion. Exits 0 unless
// --strict is given and a criterion failed.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "chrono_oracle.hpp"
#include "datesat/bench.hpp"
#include "datesat/differential.hpp"
#include "datesat/mirror.hpp"
#include "datesat/sampler.hpp"
#include "datesat/solve.hpp"
#include "datesat/validator.hpp"
#include "synthetic_matrix.hpp"

using namespace datesat;
namespace fs = std::filesystem;

namespace {

const std::string kData = DATESAT_TEST_DATA;
const std::string kCli = DATESAT_CLI;
const std::vector<Strategy> kStrategies(kAllStrategies.begin(), kAllStrategies.end());

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v, int prec = 2) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(prec);
  os << v;
  return os.str();
}

struct Verdict {
  bool pass = true;
  std::string detail;
};

Problem regression(const std::string& name) { return load_problem_file(kData + "/regression/" + name + ".json"); }

Problem problem(std::vector<std::string> decls, std::vector<std::string> constraints) {
  nlohmann::json doc;
  doc["declarations"] = decls;
  doc["constraints"] = constraints;
  return load_problem(doc);
}

// 1. Exhaustive oracle suite over the regular range.
Verdict oracle_exhaustive() {
  const auto t0 = Clock::now();
  const std::int64_t lo = to_epoch_days(kRegularLowerBound), hi = to_epoch_days(kRegularUpperBound);
  std::int64_t bad = 0;
  for (std::int64_t n = lo; n <= hi; ++n) {
    const Date d = from_epoch_days(n);
    const AlphaBeta ab = to_alpha_beta(d);
    bool ok = valid(d) && to_epoch_days(d) == n && d == chrono_oracle::from_epoch_days(n) &&
              from_alpha_beta(ab.alpha, ab.beta) == d && to_epoch_days(add_days(d, 1)) == n + 1 &&
              to_epoch_days(add_days(d, -1)) == n - 1 && add_days(d, 1) == chrono_oracle::from_epoch_days(n + 1);
    if (!ok) ++bad;
  }
  const double secs = seconds_since(t0);
  const MonthTables& t = build_month_tables();
  const bool anchors = to_epoch_days({2004, 3, 1}) == 1461 && t.dim48[2] == 31 && t.dbm48[2] == 61;
  return {bad == 0 && anchors && secs < 10 && hi - lo + 1 == 73049,
          std::to_string(hi - lo + 1) + " dates, " + std::to_string(bad) + " failures, " + fmt(secs) +
              " s (limit 10 s), anchors " + (anchors ? "ok" : "wrong")};
}

// 2. The five arithmetic examples, in the oracle and in every strategy.
struct Example {
  const char* name;
  std::vector<std::string> constraints;  // over dates a, b; b is the result
  Date want;
  std::function<Date()> oracle;
};

Verdict semantics_examples() {
  const std::vector<Example> examples{
      {"worked example", {"a == Date(2017, 12, 30)", "b == a + Period(2, 2, 1)"}, {2020, 3, 1},
       [] { return add_period({2017, 12, 30}, {2, 2, 1}); }},
      {"non-strict monotonicity",
       {"a == Date(2020, 1, 30)", "b == Date(2020, 1, 31) + Period(0, 1, 0)", "a + Period(0, 1, 0) == b", "a < Date(2020, 1, 31)"},
       {2020, 2, 29},
       [] {
         const Date x = add_period({2020, 1, 30}, {0, 1, 0});
         return x == add_period({2020, 1, 31}, {0, 1, 0}) ? x : Date{0, 1, 1};
       }},
      {"non-commutativity",
       {"a == Date(2020, 1, 30)", "b == a + Period(0, 1, 0) + Period(0, 0, 1)",
        "a + Period(0, 0, 1) + Period(0, 1, 0) == Date(2020, 2, 29)"},
       {2020, 3, 1},
       [] {
         const Date x = add_period(add_period({2020, 1, 30}, {0, 1, 0}), {0, 0, 1});
         return add_period(add_period({2020, 1, 30}, {0, 0, 1}), {0, 1, 0}) == Date{2020, 2, 29} ? x : Date{0, 1, 1};
       }},
      {"non-associativity",
       {"a == Date(2020, 2, 29)", "b == a + Period(1, 0, 0) + Period(0, 1, 0)",
        "a + Period(1, 1, 0) == Date(2021, 3, 29)"},
       {2021, 3, 28},
       [] {
         const Date x = add_period(add_period({2020, 2, 29}, {1, 0, 0}), {0, 1, 0});
         return add_period({2020, 2, 29}, Period{1, 0, 0} + Period{0, 1, 0}) == Date{2021, 3, 29} ? x : Date{0, 1, 1};
       }},
      {"leap year", {"a == Date(2000, 2, 29)", "b == a + Period(1, 0, 0)", "b.year == 2001", "b.day == 28"},
       {2001, 2, 28}, [] { return add_period({2000, 2, 29}, {1, 0, 0}); }},
  };
  int failures = 0;
  std::string first;
  for (const auto& ex : examples) {
    if (ex.oracle() != ex.want) {
      ++failures;
      if (first.empty()) first = std::string(ex.name) + " in calendar-core";
    }
    const std::string lit = "Date(" + std::to_string(ex.want.year) + ", " + std::to_string(ex.want.month) + ", " +
                            std::to_string(ex.want.day) + ")";
    const Problem pos = problem({"a, b: date"}, ex.constraints);
    std::vector<std::string> neg_cs = ex.constraints;
    neg_cs.push_back("b != " + lit);
    const Problem neg = problem({"a, b: date"}, neg_cs);
    for (Strategy s : kStrategies) {
      SolveOptions o;
      o.strategy = s;
      o.timeout_ms = 30000;
      const SolveResult r = solve(pos, o);
      const SolveResult n = solve(neg, o);
      const bool ok = r.status == smt::Status::Sat && std::get<Date>(r.model->at("b")) == ex.want &&
                      n.status == smt::Status::Unsat;
      if (!ok) {
        ++failures;
        if (first.empty()) first = std::string(ex.name) + " under " + std::string(to_string(s));
      }
    }
  }
  return {failures == 0, std::to_string(examples.size()) + " examples x (oracle + 5 strategies), " +
                             std::to_string(failures) + " failures" + (first.empty() ? "" : ", first: " + first)};
}

// 3. Paper instances: SAT within 5 s with validated models; refactoring
// under 1 s for some strategy.
Verdict paper_instances() {
  bool pass = true;
  std::string detail;
  double best_refactoring = 1e9;
  for (const char* name : {"birthday", "refactoring", "stock_election"}) {
    const Problem p = regression(name);
    detail += std::string(detail.empty() ? "" : "; ") + name + ":";
    for (Strategy s : kStrategies) {
      SolveOptions o;
      o.strategy = s;
      o.timeout_ms = 5000;
      std::string cell;
      try {
        const SolveResult r = solve(p, o);
        const double secs = (r.time_ms + r.encode_ms) / 1000;
        const bool valid_model = r.model && validate_model(p, *r.model, Bounds{}).ok();
        const bool ok = r.status == smt::Status::Sat && valid_model && secs < 5;
        if (!ok) pass = false;
        if (std::string(name) == "refactoring" && ok) best_refactoring = std::min(best_refactoring, secs);
        cell = r.status == smt::Status::Sat ? fmt(secs) + "s" : std::string(smt::to_string(r.status));
        if (r.status == smt::Status::Sat && !valid_model) cell += "(invalid model)";
      } catch (const std::exception& e) {
        pass = false;
        cell = "error";
      }
      detail += " " + std::string(to_string(s)) + "=" + cell;
    }
  }
  if (best_refactoring >= 1) pass = false;
  detail += "; refactoring best " + fmt(best_refactoring) + " s (limit 1 s)";
  return {pass, detail};
}

// 4. Equisatisfiability fuzzing gate.
Verdict fuzz_gate(int count) {
  SamplerConfig cfg;
  cfg.seed = 2026;
  DiffOptions o;
  o.timeout_ms = 10000;
  int disagreements = 0, invalid = 0, errors = 0, unknown = 0;
  std::string first;
  const auto t0 = Clock::now();
  for (int i = 0; i < count; ++i) {
    const Problem p = sample_problem(cfg, static_cast<std::uint64_t>(i));
    const DiffReport r = differential_run(p, kStrategies, o);
    if (!r.agree) ++disagreements;
    if (!r.models_valid) ++invalid;
    for (const auto& out : r.outcomes) {
      if (!out.error.empty()) ++errors;
      else if (out.status == smt::Status::Unknown) ++unknown;
    }
    if (!r.ok() && first.empty()) first = "sample " + std::to_string(i) + ": " + to_json(r).dump();
  }
  return {disagreements == 0 && invalid == 0 && errors == 0,
          std::to_string(count) + " samples, " + std::to_string(disagreements) + " disagreements, " +
              std::to_string(invalid) + " invalid models, " + std::to_string(errors) + " errors, " +
              std::to_string(unknown) + " timeouts (of " + std::to_string(count * 5) + " runs), " +
              fmt(seconds_since(t0), 0) + " s" + (first.empty() ? "" : "; " + first)};
}

// 5. Concrete mirror over all in-bounds dates and the 25 periods.
Verdict mirror_gate() {
  const auto t0 = Clock::now();
  const auto periods = mirror_periods();
  bool pass = periods.size() == 25;
  std::string detail;
  for (Strategy s : kStrategies) {
    const MirrorReport rep = mirror_check(s, Bounds{}, periods);
    if (!rep.ok()) pass = false;
    detail += std::string(to_string(s)) + " " + std::to_string(rep.checks) + "/" + std::to_string(rep.failures) + ", ";
    if (!rep.ok() && !rep.examples.empty()) detail += "(" + rep.examples[0] + ") ";
  }
  const double secs = seconds_since(t0);
  if (secs >= 300) pass = false;
  return {pass, "checks/failures per strategy: " + detail + fmt(secs, 1) + " s (limit 300 s)"};
}

// 6. Benchmark protocol on the synthetic matrix, and the speedup trend on a
// day-weighted sampled suite.
Verdict bench_protocol() {
  std::vector<std::string> mismatches;
  const int synthetic_bad = synthetic::check(synthetic::matrix(), [&](const std::string& s) { mismatches.push_back(s); });

  const fs::path dir = fs::temp_directory_path() / ("datesat_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  SamplerConfig sc;
  sc.seed = 6;
  sc.day_only = 0.8;
  const auto suite = sample_suite(sc, 100);
  for (std::size_t i = 0; i < suite.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "sample_%05zu.json", i);
    std::ofstream(dir / name) << problem_to_json(suite[i]).dump(2) << "\n";
  }
  SuiteConfig cfg;
  cfg.suite = dir.string();
  cfg.strategies = {Strategy::Naive, Strategy::AlphaBetaTable};
  cfg.repeats = 3;
  cfg.timeout_ms = 10000;
  const SuiteResult result = run_suite(cfg);
  fs::remove_all(dir);

  const auto sp = speedups(result.records);
  const double overall = median_speedups(sp)[Strategy::AlphaBetaTable];
  // Constraints where Naive's mean time exceeds 1 s.
  std::map<std::string, std::pair<double, int>> naive_mean;
  for (const auto& r : result.records) {
    if (r.strategy != Strategy::Naive) continue;
    naive_mean[r.constraint].first += r.time_ms;
    ++naive_mean[r.constraint].second;
  }
  std::vector<double> slow;
  for (const auto& rec : sp) {
    const auto& [total, runs] = naive_mean[rec.constraint];
    auto it = rec.entries.find(Strategy::AlphaBetaTable);
    if (runs && total / runs > 1000 && it != rec.entries.end()) slow.push_back(it->second.speedup);
  }
  const double slow_median = median(slow);
  const bool pass = synthetic_bad == 0 && !result.had_errors() && overall >= 1.0 && !slow.empty() && slow_median >= 1.2;
  std::string detail = "synthetic matrix " + std::string(synthetic_bad == 0 ? "exact" : mismatches.front()) +
                       "; day-weighted suite (100, 3 repeats, 10 s): median alpha-beta-table speedup " + fmt(overall) +
                       " (need >= 1.0), on " + std::to_string(slow.size()) + " with naive > 1 s " + fmt(slow_median) +
                       " (need >= 1.2)";
  if (result.had_errors()) detail += ", suite had errors";
  return {pass, detail};
}

// 7. CLI contract.
int run_cli(const std::string& args, const fs::path& out) {
  const std::string cmd = "'" + kCli + "' " + args + " > '" + out.string() + "' 2>/dev/null";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Verdict cli_contract() {
  const fs::path dir = fs::temp_directory_path() / ("datesat_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const auto expected = nlohmann::json::parse(std::ifstream(kData + "/regression_expected.json"));
  const std::map<std::string, int> exit_of{{"sat", 0}, {"unsat", 1}, {"unknown", 2}};
  const std::set<std::string> keys{"status", "model", "time_ms", "strategy"};
  int runs = 0, unstable = 0, bad_schema = 0, resolve_checked = 0, resolve_bad = 0, wrong = 0, unknown = 0;
  std::string first;
  const auto note = [&](const std::string& s) {
    if (first.empty()) first = s;
  };

  for (const auto& [file, want] : expected.items()) {
    for (Strategy s : kStrategies) {
      const std::string base = (dir / (file + "." + std::string(to_string(s)))).string();
      const std::string args = "solve '" + kData + "/regression/" + file + "' --strategy " + std::string(to_string(s)) +
                               " --timeout-ms 10000 --dump-smt ";
      const int rc1 = run_cli(args + "'" + base + ".1.smt2'", base + ".1.json");
      const int rc2 = run_cli(args + "'" + base + ".2.smt2'", base + ".2.json");
      ++runs;
      nlohmann::json j1, j2;
      try {
        j1 = nlohmann::json::parse(slurp(base + ".1.json"));
        j2 = nlohmann::json::parse(slurp(base + ".2.json"));
      } catch (const std::exception&) {
        ++bad_schema;
        note(file + " " + std::string(to_string(s)) + ": result is not JSON");
        continue;
      }
      for (const auto& k : keys) {
        if (!j1.contains(k)) {
          ++bad_schema;
          note(file + ": missing key " + k);
        }
      }
      const std::string status = j1.value("status", "");
      if (!exit_of.contains(status) || exit_of.at(status) != rc1) {
        ++bad_schema;
        note(file + ": exit code " + std::to_string(rc1) + " for " + status);
      }
      if (status == "unknown") ++unknown;
      else if (status != want.get<std::string>()) {
        ++wrong;
        note(file + " " + std::string(to_string(s)) + ": " + status);
      }
      // Timing fields differ between runs by nature; everything else must not.
      for (auto* j : {&j1, &j2}) {
        j->erase("time_ms");
        j->erase("encode_ms");
      }
      const std::string d1 = slurp(base + ".1.smt2"), d2 = slurp(base + ".2.smt2");
      const bool same_status = j1.value("status", "") == j2.value("status", "");
      if (rc1 != rc2 || d1 != d2 || d1.empty() || (same_status && j1.dump() != j2.dump())) {
        ++unstable;
        note(file + " " + std::string(to_string(s)) + ": differs between invocations");
      }
      if (status == "unknown") continue;
      const smt::ScriptResult re = smt::run_script(d1, 10000, smt::SolverConfig::from_env());
      ++resolve_checked;
      if (std::string(smt::to_string(re.status)) != status) {
        ++resolve_bad;
        note(file + " " + std::string(to_string(s)) + ": re-solve gave " + std::string(smt::to_string(re.status)));
      }
    }
  }
  // Error exits.
  const int missing = run_cli("solve '" + (dir / "nope.json").string() + "'", dir / "e1");
  const int bad_strategy = run_cli("solve '" + kData + "/regression/trivial.json' --strategy bogus", dir / "e2");
  const bool error_codes = missing > 2 && bad_strategy > 2;
  fs::remove_all(dir);

  const bool pass = unstable == 0 && bad_schema == 0 && resolve_bad == 0 && wrong == 0 && error_codes;
  return {pass, std::to_string(runs) + " file/strategy pairs run twice: " + std::to_string(unstable) + " unstable, " +
                    std::to_string(bad_schema) + " schema/exit-code problems, " + std::to_string(wrong) +
                    " wrong statuses, " + std::to_string(unknown) + " unknown; dumped scripts re-solved " +
                    std::to_string(resolve_checked - resolve_bad) + "/" + std::to_string(resolve_checked) +
                    "; error exits " + (error_codes ? "ok" : "wrong") + (first.empty() ? "" : "; first: " + first)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  bool strict = false;
  std::vector<int> only;
  int fuzz_count = 500;
  std::string report_path;
  app.add_flag("--strict", strict, "exit 1 if any criterion fails");
  app.add_option("--only", only, "run only these criteria")->delimiter(',');
  app.add_option("--fuzz-count", fuzz_count, "samples for criterion 4");
  app.add_option("--report", report_path, "also write the verdict lines to this file");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"oracle exhaustive suite", oracle_exhaustive},
      {"semantics regression", semantics_examples},
      {"paper instances", paper_instances},
      {"equisatisfiability fuzzing", [&] { return fuzz_gate(fuzz_count); }},
      {"concrete mirror", mirror_gate},
      {"benchmark protocol", bench_protocol},
      {"CLI contract", cli_contract},
  };
  int failed = 0;
  std::ofstream report;
  if (!report_path.empty()) report.open(report_path);
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failed;
    std::ostringstream line;
    line << (v.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << criteria[i].first << "): " << v.detail;
    std::cout << line.str() << std::endl;
    if (report) report << line.str() << std::endl;
  }
  return strict && failed ? 1 : 0;
}
