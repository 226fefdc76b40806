#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "datesat/encoder.hpp"

namespace datesat {

/// 25 periods: zero, pure days, months and years of both signs, and mixes.
std::vector<Period> mirror_periods();

struct MirrorReport {
  Strategy strategy = Strategy::Naive;
  /// Cases whose oracle result is in bounds.
  std::int64_t checks = 0;
  /// Cases whose oracle result is out of bounds.
  std::int64_t out_of_bounds = 0;
  std::int64_t failures = 0;
  /// First few failures, as "date + period: detail".
  std::vector<std::string> examples;

  bool ok() const { return failures == 0; }
};

/// Evaluates one strategy's validity, add-period and field formulas
/// concretely for every date in `bounds` and every period. An in-bounds
/// oracle result must be reproduced with all emitted constraints holding;
/// an out-of-bounds one must never come out as a valid in-bounds date with
/// the constraints holding.
MirrorReport mirror_check(Strategy s, const Bounds& bounds, std::span<const Period> periods);

}  // namespace datesat
