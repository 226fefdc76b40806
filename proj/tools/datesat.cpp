// datesat: solve, benchmark, cross-check, sample and validate date constraints.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "datesat/bench.hpp"
#include "datesat/differential.hpp"
#include "datesat/sampler.hpp"
#include "datesat/solve.hpp"
#include "datesat/validator.hpp"

using namespace datesat;
namespace fs = std::filesystem;

namespace {

enum Exit { kSat = 0, kUnsat = 1, kUnknown = 2, kBadInput = 3, kEncodeFailed = 4, kSolverFailed = 5 };

struct Common {
  std::string lb = to_string(kRegularLowerBound);
  std::string ub = to_string(kRegularUpperBound);
  int timeout_ms = 60000;
  std::string solver;

  void add(CLI::App* app) {
    app->add_option("--lb", lb, "lower date bound (YYYY-MM-DD)");
    app->add_option("--ub", ub, "upper date bound (YYYY-MM-DD)");
    app->add_option("--timeout-ms", timeout_ms, "solver timeout per check");
    app->add_option("--solver", solver, "SMT-LIB2 solver executable");
  }

  Bounds bounds() const {
    const auto l = parse_date(lb);
    const auto u = parse_date(ub);
    if (!l || !u) throw std::invalid_argument("bounds must be valid YYYY-MM-DD dates");
    if (*u < *l) throw std::invalid_argument("--lb is after --ub");
    return {*l, *u};
  }

  smt::SolverConfig solver_config() const {
    smt::SolverConfig cfg = smt::SolverConfig::from_env();
    if (!solver.empty()) cfg.executable = solver;
    return cfg;
  }
};

std::vector<Strategy> parse_strategies(const std::vector<std::string>& names) {
  if (names.empty() || (names.size() == 1 && names[0] == "all")) {
    return {kAllStrategies.begin(), kAllStrategies.end()};
  }
  std::vector<Strategy> out;
  for (const auto& n : names) {
    auto s = parse_strategy(n);
    if (!s) throw std::invalid_argument("unknown strategy '" + n + "'");
    out.push_back(*s);
  }
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int fail(int code, const std::string& kind, const std::string& message) {
  std::cerr << nlohmann::json{{"error", kind}, {"message", message}}.dump() << "\n";
  return code;
}

int cmd_solve(const std::string& file, const std::string& strategy, const Common& c,
              const std::string& dump_path) {
  Problem p;
  SolveOptions so;
  try {
    p = load_problem_file(file);
    auto s = parse_strategy(strategy);
    if (!s) throw std::invalid_argument("unknown strategy '" + strategy + "'");
    so.strategy = *s;
    so.bounds = c.bounds();
  } catch (const std::exception& e) {
    return fail(kBadInput, "input", e.what());
  }
  so.timeout_ms = c.timeout_ms;
  so.solver = c.solver_config();

  SolveResult r;
  try {
    if (!dump_path.empty()) {
      EncodedInstance inst = encode(p, so.strategy, so.bounds, so.encode);
      write_file(dump_path, inst.session->dump());
    }
    r = solve(p, so);
  } catch (const WellFormednessError& e) {
    return fail(kBadInput, "well-formedness", e.what());
  } catch (const EncodingError& e) {
    return fail(kEncodeFailed, "encoding", e.what());
  } catch (const std::exception& e) {
    return fail(kSolverFailed, "solver", e.what());
  }

  nlohmann::json out{{"status", smt::to_string(r.status)},
                     {"model", r.model ? to_json(*r.model) : nlohmann::json(nullptr)},
                     {"time_ms", r.time_ms},
                     {"encode_ms", r.encode_ms},
                     {"strategy", to_string(so.strategy)}};
  std::cout << out.dump() << "\n";
  switch (r.status) {
    case smt::Status::Sat: return kSat;
    case smt::Status::Unsat: return kUnsat;
    case smt::Status::Unknown: return kUnknown;
  }
  return kUnknown;
}

int cmd_bench(SuiteConfig cfg, const std::vector<std::string>& names, const Common& c,
              const std::string& out_path, const std::string& csv_path) {
  try {
    cfg.strategies = parse_strategies(names);
    cfg.bounds = c.bounds();
  } catch (const std::exception& e) {
    return fail(kBadInput, "input", e.what());
  }
  cfg.timeout_ms = c.timeout_ms;
  cfg.solver = c.solver_config();
  const SuiteResult result = run_suite(cfg);
  const std::string report = report_json(result).dump(2);
  if (out_path.empty()) std::cout << report << "\n";
  else write_file(out_path, report + "\n");
  if (!csv_path.empty()) write_file(csv_path, report_csv(result.records));
  for (const auto& s : result.skipped) std::cerr << "skipped " << s.file << ": " << s.reason << "\n";
  return result.had_errors() ? kBadInput : 0;
}

int cmd_diff(const std::string& target, const std::vector<std::string>& names, const Common& c,
             bool minimize) {
  DiffOptions opt;
  std::vector<Strategy> strategies;
  try {
    strategies = parse_strategies(names);
    opt.bounds = c.bounds();
  } catch (const std::exception& e) {
    return fail(kBadInput, "input", e.what());
  }
  opt.timeout_ms = c.timeout_ms;
  opt.solver = c.solver_config();
  opt.minimize = minimize;

  std::vector<fs::path> files;
  if (fs::is_directory(target)) {
    for (const auto& e : fs::directory_iterator(target)) {
      if (e.path().extension() == ".json") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(target);
  }

  bool all_ok = true, bad_input = false;
  nlohmann::json reports = nlohmann::json::object();
  for (const auto& f : files) {
    try {
      const DiffReport r = differential_run(load_problem_file(f.string()), strategies, opt);
      all_ok &= r.ok();
      reports[f.filename().string()] = to_json(r);
    } catch (const std::exception& e) {
      bad_input = true;
      reports[f.filename().string()] = {{"error", e.what()}};
    }
  }
  if (fs::is_directory(target)) std::cout << reports.dump(2) << "\n";
  else std::cout << reports.begin()->dump(2) << "\n";
  if (!all_ok) return 1;
  return bad_input ? kBadInput : 0;
}

int cmd_sample(const SamplerConfig& cfg, std::size_t count, const std::string& dir) {
  fs::create_directories(dir);
  const auto suite = sample_suite(cfg, count);
  for (std::size_t i = 0; i < suite.size(); ++i) {
    std::ostringstream name;
    name << "sample_" << std::setw(5) << std::setfill('0') << i << ".json";
    write_file((fs::path(dir) / name.str()).string(), problem_to_json(suite[i]).dump(2) + "\n");
  }
  return 0;
}

int cmd_validate(const std::string& file, const std::string& model_path, const Common& c) {
  try {
    const Problem p = load_problem_file(file);
    std::ifstream in(model_path);
    if (!in) throw std::runtime_error("cannot read " + model_path);
    nlohmann::json doc = nlohmann::json::parse(in);
    if (doc.is_object() && doc.contains("model") && doc.contains("status")) doc = doc["model"];
    const ValidationResult r = validate_model(p, assignment_from_json(doc), c.bounds());
    std::cout << to_json(r).dump(2) << "\n";
    return r.ok() ? 0 : 1;
  } catch (const std::exception& e) {
    return fail(kBadInput, "input", e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Satisfiability checking for date and period constraints"};
  app.require_subcommand(1);

  Common common;
  int code = 0;

  auto* solve_cmd = app.add_subcommand("solve", "solve one benchmark file");
  std::string solve_file, strategy = "alpha-beta-table", dump_path;
  solve_cmd->add_option("file", solve_file)->required();
  solve_cmd->add_option("--strategy", strategy, "naive|epoch|hybrid|alpha-beta|alpha-beta-table");
  solve_cmd->add_option("--dump-smt", dump_path, "write the SMT-LIB2 script here");
  common.add(solve_cmd);

  auto* bench_cmd = app.add_subcommand("bench", "run a benchmark suite");
  SuiteConfig suite;
  std::vector<std::string> strategy_names;
  std::string out_path, csv_path;
  bench_cmd->add_option("suite", suite.suite)->required();
  bench_cmd->add_option("--strategies", strategy_names, "comma-separated, or all")->delimiter(',');
  bench_cmd->add_option("--repeats", suite.repeats);
  bench_cmd->add_option("--workers", suite.workers);
  bench_cmd->add_option("--out", out_path, "report JSON (default: stdout)");
  bench_cmd->add_option("--csv", csv_path, "flat record CSV");
  common.add(bench_cmd);

  auto* diff_cmd = app.add_subcommand("diff", "cross-check strategies on a file or suite");
  std::string diff_target;
  bool no_minimize = false;
  diff_cmd->add_option("target", diff_target)->required();
  diff_cmd->add_option("--strategies", strategy_names, "comma-separated, or all")->delimiter(',');
  diff_cmd->add_flag("--no-minimize", no_minimize, "skip witness minimization");
  common.add(diff_cmd);

  auto* sample_cmd = app.add_subcommand("sample", "write random date-only benchmarks");
  SamplerConfig sampler;
  std::size_t count = 10;
  std::string sample_dir;
  sample_cmd->add_option("--seed", sampler.seed);
  sample_cmd->add_option("--count", count);
  sample_cmd->add_option("--out", sample_dir)->required();
  sample_cmd->add_option("--max-depth", sampler.max_depth);
  sample_cmd->add_option("--vars", sampler.date_vars);
  sample_cmd->add_option("--min-constraints", sampler.min_constraints);
  sample_cmd->add_option("--max-constraints", sampler.max_constraints);
  sample_cmd->add_option("--max-years", sampler.max_years);
  sample_cmd->add_option("--max-months", sampler.max_months);
  sample_cmd->add_option("--max-days", sampler.max_days);
  sample_cmd->add_option("--max-scale", sampler.max_scale);
  sample_cmd->add_option("--day-only", sampler.day_only, "probability of a days-only period");
  sample_cmd->add_option("--depth-decay", sampler.depth_decay);

  auto* validate_cmd = app.add_subcommand("validate", "check a model against a benchmark");
  std::string validate_file, model_path;
  validate_cmd->add_option("file", validate_file)->required();
  validate_cmd->add_option("--model", model_path)->required();
  common.add(validate_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kBadInput;
  }

  try {
    if (*solve_cmd) code = cmd_solve(solve_file, strategy, common, dump_path);
    else if (*bench_cmd) code = cmd_bench(suite, strategy_names, common, out_path, csv_path);
    else if (*diff_cmd) code = cmd_diff(diff_target, strategy_names, common, !no_minimize);
    else if (*sample_cmd) code = cmd_sample(sampler, count, sample_dir);
    else if (*validate_cmd) code = cmd_validate(validate_file, model_path, common);
  } catch (const std::exception& e) {
    code = fail(kBadInput, "error", e.what());
  }
  return code;
}
