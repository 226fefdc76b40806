#include "datesat/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "datesat/solve.hpp"
#include "datesat/validator.hpp"

namespace datesat {
namespace fs = std::filesystem;

namespace {

double seconds2(double ms) { return std::round(ms / 10.0) / 100.0; }

std::size_t strategy_rank(Strategy s) {
  return static_cast<std::size_t>(std::find(kAllStrategies.begin(), kAllStrategies.end(), s) -
                                  kAllStrategies.begin());
}

struct Cell {
  double total_ms = 0;
  int runs = 0;
  int solved = 0;
  double mean() const { return runs ? total_ms / runs : 0; }
  bool timed_out() const { return solved == 0; }
};

// constraint -> strategy -> aggregate over repeats
std::map<std::string, std::map<Strategy, Cell>> cells(const std::vector<RunRecord>& records) {
  std::map<std::string, std::map<Strategy, Cell>> out;
  for (const auto& r : records) {
    Cell& c = out[r.constraint][r.strategy];
    c.total_ms += r.time_ms;
    ++c.runs;
    if (r.solved()) ++c.solved;
  }
  return out;
}

}  // namespace

bool SuiteResult::had_errors() const {
  if (!skipped.empty()) return true;
  return std::any_of(records.begin(), records.end(), [](const RunRecord& r) {
    return !r.error.empty() || r.model_valid == false;
  });
}

double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

SuiteResult run_suite(const SuiteConfig& cfg) {
  SuiteResult result;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(cfg.suite)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<std::pair<std::string, Problem>> problems;
  for (const auto& f : files) {
    try {
      problems.emplace_back(f.filename().string(), load_problem_file(f.string()));
    } catch (const std::exception& e) {
      result.skipped.push_back({f.filename().string(), e.what()});
    }
  }

  std::mutex mu;
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < problems.size(); i = next++) {
      const auto& [name, problem] = problems[i];
      std::vector<RunRecord> local;
      for (Strategy s : cfg.strategies) {
        for (int rep = 0; rep < cfg.repeats; ++rep) {
          RunRecord r;
          r.constraint = name;
          r.strategy = s;
          r.repeat = rep;
          r.timeout_ms = cfg.timeout_ms;
          try {
            SolveOptions so;
            so.strategy = s;
            so.bounds = cfg.bounds;
            so.timeout_ms = cfg.timeout_ms;
            so.solver = cfg.solver;
            SolveResult sr = solve(problem, so);
            r.status = sr.status;
            r.time_ms = sr.status == smt::Status::Unknown ? cfg.timeout_ms : sr.time_ms;
            r.encode_ms = sr.encode_ms;
            if (sr.model && cfg.validate) r.model_valid = validate_model(problem, *sr.model, cfg.bounds).ok();
          } catch (const std::exception& e) {
            r.error = e.what();
            r.time_ms = cfg.timeout_ms;
          }
          local.push_back(std::move(r));
        }
      }
      std::lock_guard lock(mu);
      result.records.insert(result.records.end(), local.begin(), local.end());
    }
  };
  const int n = std::max(1, cfg.workers);
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::sort(result.records.begin(), result.records.end(), [](const RunRecord& a, const RunRecord& b) {
    return std::tuple(a.constraint, strategy_rank(a.strategy), a.repeat) <
           std::tuple(b.constraint, strategy_rank(b.strategy), b.repeat);
  });
  return result;
}

StatsSummary summarize(const std::vector<RunRecord>& records) {
  StatsSummary out;
  // strategy -> repeat -> (solved, total)
  std::map<Strategy, std::map<int, std::pair<int, int>>> per_run;
  for (const auto& r : records) {
    auto& [solved, total] = per_run[r.strategy][r.repeat];
    ++total;
    if (r.solved()) ++solved;
  }
  for (const auto& [s, runs] : per_run) {
    double sum = 0;
    for (const auto& [rep, counts] : runs) sum += 100.0 * counts.first / counts.second;
    out[s].solve_rate = sum / static_cast<double>(runs.size());
  }

  std::map<Strategy, std::vector<double>> means;
  for (const auto& [constraint, by_strategy] : cells(records)) {
    for (const auto& [s, c] : by_strategy) means[s].push_back(c.mean());
  }
  for (auto& [s, v] : means) {
    StrategyStats& st = out[s];
    st.constraints = v.size();
    st.median_ms = median(v);
    st.mean_ms = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    if (v.size() > 1) {
      double ss = 0;
      for (double x : v) ss += (x - st.mean_ms) * (x - st.mean_ms);
      st.stddev_ms = std::sqrt(ss / static_cast<double>(v.size() - 1));
    }
  }
  return out;
}

std::vector<SpeedupRecord> speedups(const std::vector<RunRecord>& records) {
  std::vector<SpeedupRecord> out;
  for (const auto& [constraint, by_strategy] : cells(records)) {
    auto naive = by_strategy.find(Strategy::Naive);
    if (naive == by_strategy.end()) continue;
    const Cell& n = naive->second;
    SpeedupRecord rec{constraint, {}};
    for (const auto& [s, c] : by_strategy) {
      if (s == Strategy::Naive) continue;
      if (n.timed_out() && c.timed_out()) continue;
      if (c.timed_out()) {
        rec.entries[s] = {kPinnedSpeedup, "pinned"};
      } else if (n.timed_out()) {
        rec.entries[s] = {n.mean() / c.mean(), "conservative"};
      } else {
        rec.entries[s] = {n.mean() / c.mean(), ""};
      }
    }
    if (!rec.entries.empty()) out.push_back(std::move(rec));
  }
  return out;
}

std::map<Strategy, double> median_speedups(const std::vector<SpeedupRecord>& s) {
  std::map<Strategy, std::vector<double>> all;
  for (const auto& rec : s) {
    for (const auto& [strategy, e] : rec.entries) all[strategy].push_back(e.speedup);
  }
  std::map<Strategy, double> out;
  for (auto& [strategy, v] : all) out[strategy] = median(std::move(v));
  return out;
}

nlohmann::json report_json(const SuiteResult& result) {
  nlohmann::json doc;
  doc["summary"] = nlohmann::json::object();
  for (const auto& [s, st] : summarize(result.records)) {
    doc["summary"][std::string(to_string(s))] = {
        {"solve_rate", std::round(st.solve_rate * 100) / 100},
        {"median_s", seconds2(st.median_ms)},
        {"mean_s", seconds2(st.mean_ms)},
        {"stddev_s", seconds2(st.stddev_ms)},
        {"constraints", st.constraints}};
  }
  const auto sp = speedups(result.records);
  doc["speedups"] = nlohmann::json::array();
  for (const auto& rec : sp) {
    nlohmann::json item{{"constraint", rec.constraint}, {"speedups", nlohmann::json::object()}};
    for (const auto& [s, e] : rec.entries) {
      item["speedups"][std::string(to_string(s))] = {{"speedup", e.speedup},
                                                     {"note", e.note.empty() ? nlohmann::json(nullptr) : nlohmann::json(e.note)}};
    }
    doc["speedups"].push_back(std::move(item));
  }
  doc["median_speedups"] = nlohmann::json::object();
  for (const auto& [s, m] : median_speedups(sp)) doc["median_speedups"][std::string(to_string(s))] = m;
  doc["records"] = nlohmann::json::array();
  for (const auto& r : result.records) {
    nlohmann::json item{{"constraint", r.constraint},
                        {"strategy", to_string(r.strategy)},
                        {"repeat", r.repeat},
                        {"status", r.error.empty() ? smt::to_string(r.status) : "error"},
                        {"time_ms", r.time_ms},
                        {"encode_ms", r.encode_ms},
                        {"timeout_ms", r.timeout_ms}};
    item["model_valid"] = r.model_valid ? nlohmann::json(*r.model_valid) : nlohmann::json(nullptr);
    if (!r.error.empty()) item["error"] = r.error;
    doc["records"].push_back(std::move(item));
  }
  doc["skipped"] = nlohmann::json::array();
  for (const auto& s : result.skipped) doc["skipped"].push_back({{"file", s.file}, {"reason", s.reason}});
  return doc;
}

std::string report_csv(const std::vector<RunRecord>& records) {
  std::ostringstream out;
  out << "constraint,strategy,repeat,status,time_ms,encode_ms,timeout_ms,model_valid\n";
  for (const auto& r : records) {
    out << '"' << r.constraint << "\"," << to_string(r.strategy) << ',' << r.repeat << ','
        << (r.error.empty() ? smt::to_string(r.status) : "error") << ',' << r.time_ms << ','
        << r.encode_ms << ',' << r.timeout_ms << ','
        << (r.model_valid ? (*r.model_valid ? "true" : "false") : "") << '\n';
  }
  return out.str();
}

}  // namespace datesat
