#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "datesat/problem.hpp"
#include "datesat/value.hpp"

namespace datesat {

/// Unmapped variable, sort mismatch, or a Date(...) that is not a valid date.
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reference evaluation of a Bool, Int or Date expression.
Value eval(const ExprPtr& e, const Assignment& env);
Period eval_period(const ExprPtr& e, const Assignment& env);

struct Violation {
  /// Index into the problem's constraints; npos for checks on the
  /// assignment itself.
  std::size_t constraint = npos;
  std::string text;
  std::string reason;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

struct ValidationResult {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks every constraint holds and every date (variable or
/// subexpression) is valid and within `b`. Periods are folded first, as the
/// encoders do.
ValidationResult validate_model(const Problem& p, const Assignment& a, const Bounds& b);

nlohmann::json to_json(const ValidationResult& r);

}  // namespace datesat
