#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "datesat/encoder.hpp"
#include "datesat/smt/solver.hpp"

namespace datesat {

struct SuiteConfig {
  std::string suite;  // directory of benchmark JSON files
  std::vector<Strategy> strategies{kAllStrategies.begin(), kAllStrategies.end()};
  int repeats = 10;
  int timeout_ms = 60000;
  Bounds bounds;
  /// Constraints run in parallel; one constraint's repeats stay serial.
  int workers = 1;
  bool validate = true;
  smt::SolverConfig solver = smt::SolverConfig::from_env();
};

struct RunRecord {
  std::string constraint;  // file name within the suite
  Strategy strategy = Strategy::Naive;
  int repeat = 0;
  smt::Status status = smt::Status::Unknown;
  double time_ms = 0;  // timeout_ms when not solved
  double encode_ms = 0;
  int timeout_ms = 0;
  std::optional<bool> model_valid;
  std::string error;

  bool solved() const { return error.empty() && status != smt::Status::Unknown; }
};

struct SkipEntry {
  std::string file;
  std::string reason;
};

struct SuiteResult {
  std::vector<RunRecord> records;
  std::vector<SkipEntry> skipped;
  /// Skipped files, infrastructure errors or invalid models.
  bool had_errors() const;
};

/// Runs every benchmark file of cfg.suite (sorted by name) under each
/// strategy cfg.repeats times.
SuiteResult run_suite(const SuiteConfig& cfg);

struct StrategyStats {
  /// Mean over repeats of the percentage of constraints solved.
  double solve_rate = 0;
  /// Over the per-constraint mean times, in milliseconds.
  double median_ms = 0;
  double mean_ms = 0;
  double stddev_ms = 0;  // sample standard deviation
  std::size_t constraints = 0;
};

using StatsSummary = std::map<Strategy, StrategyStats>;

StatsSummary summarize(const std::vector<RunRecord>& records);

struct SpeedupEntry {
  double speedup = 0;
  /// "" or "conservative" (Naive timed out, its time taken as the timeout)
  /// or "pinned" (strategy timed out while Naive solved).
  std::string note;
};

struct SpeedupRecord {
  std::string constraint;
  std::map<Strategy, SpeedupEntry> entries;  // absent when both timed out
};

/// kPinnedSpeedup for a strategy that timed out where Naive did not.
inline constexpr double kPinnedSpeedup = 1e-3;

/// Per-constraint speedups over Naive from mean times. A constraint is left
/// out when Naive and every compared strategy timed out.
std::vector<SpeedupRecord> speedups(const std::vector<RunRecord>& records);
std::map<Strategy, double> median_speedups(const std::vector<SpeedupRecord>& s);

nlohmann::json report_json(const SuiteResult& result);
std::string report_csv(const std::vector<RunRecord>& records);

double median(std::vector<double> v);

}  // namespace datesat
