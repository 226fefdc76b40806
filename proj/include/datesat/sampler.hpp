#pragma once

#include <cstdint>
#include <vector>

#include "datesat/problem.hpp"

namespace datesat {

/// Random date-only problems: date variables and literals, period
/// arithmetic, date comparisons and boolean connectives.
struct SamplerConfig {
  std::uint64_t seed = 0;
  int max_depth = 3;
  int date_vars = 4;
  int min_constraints = 1;
  int max_constraints = 3;
  /// Weight multiplier per nesting level for recursive productions.
  double depth_decay = 0.7;

  struct Weights {
    // Bool
    double compare = 1, and_ = 1, or_ = 1, not_ = 1;
    // Date
    double var = 1, literal = 1, add = 1, sub = 1;
    // Period
    double period_literal = 1, period_add = 1, period_scale = 1;
  } weights;

  /// Period literal components are drawn from [-max, max].
  std::int64_t max_years = 10;
  std::int64_t max_months = 24;
  std::int64_t max_days = 60;
  std::int64_t max_scale = 3;
  /// Probability that a period literal only has a day component.
  double day_only = 0;

  Date literal_lo = kRegularLowerBound;
  Date literal_hi = kRegularUpperBound;
};

/// Deterministic in (cfg, index).
Problem sample_problem(const SamplerConfig& cfg, std::uint64_t index = 0);
std::vector<Problem> sample_suite(const SamplerConfig& cfg, std::size_t count);

}  // namespace datesat
