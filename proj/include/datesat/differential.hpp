#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "datesat/solve.hpp"
#include "datesat/validator.hpp"

namespace datesat {

struct StrategyOutcome {
  Strategy strategy = Strategy::Naive;
  smt::Status status = smt::Status::Unknown;
  double time_ms = 0;
  double encode_ms = 0;
  std::optional<Assignment> model;
  /// Set for Sat outcomes.
  std::optional<ValidationResult> validation;
  /// Infrastructure failure (encoding, solver, decoding); excluded from
  /// the agreement verdict.
  std::string error;

  bool finished() const { return error.empty() && status != smt::Status::Unknown; }
};

struct DiffReport {
  std::vector<StrategyOutcome> outcomes;
  /// No Sat/Unsat split among finishing strategies.
  bool agree = true;
  bool models_valid = true;
  /// Smallest problem found that still shows the failure.
  std::optional<Problem> witness;

  bool ok() const { return agree && models_valid; }
};

struct DiffOptions {
  int timeout_ms = 10000;
  Bounds bounds;
  smt::SolverConfig solver = smt::SolverConfig::from_env();
  bool minimize = true;
  /// Strategies run concurrently, one backend process each.
  bool parallel = std::thread::hardware_concurrency() > 1;
};

DiffReport differential_run(const Problem& p, std::span<const Strategy> strategies,
                            const DiffOptions& options = {});

nlohmann::json to_json(const DiffReport& r);

/// Delta debugging: a 1-minimal subset of `items` on which `fails` still
/// holds. `fails(items)` must be true.
std::vector<std::size_t> ddmin(std::size_t count,
                               const std::function<bool(const std::vector<std::size_t>&)>& fails);

/// ddmin over the constraints, then replaces boolean connectives by one of
/// their operands while `fails` holds.
Problem minimize_problem(const Problem& p, const std::function<bool(const Problem&)>& fails);

}  // namespace datesat
