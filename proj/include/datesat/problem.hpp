#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "datesat/calendar.hpp"
#include "datesat/expr.hpp"
#include "datesat/parser.hpp"

namespace datesat {

struct Declaration {
  std::string name;
  Sort sort;
  friend bool operator==(const Declaration&, const Declaration&) = default;
};

/// A set of constraints (implicitly conjoined) over declared variables.
struct Problem {
  std::vector<Declaration> declarations;
  std::vector<ExprPtr> constraints;
  std::optional<std::string> description;
  std::vector<std::string> coverage_tags;

  Declarations sort_map() const;
  /// Names introduced by desugaring, excluded from user-facing models.
  bool is_internal(std::string_view name) const;
};

struct Bounds {
  Date lb = kRegularLowerBound;
  Date ub = kRegularUpperBound;

  bool contains(const Date& d) const { return lb <= d && d <= ub; }
  /// Whether every fourth year in [lb, ub] is a leap year.
  bool within_regular_range() const {
    return kRegularLowerBound <= lb && ub <= kRegularUpperBound;
  }
};

/// Benchmark document could not be ingested. `entry` names the offending
/// declaration or constraint when there is one.
class IngestError : public std::runtime_error {
 public:
  IngestError(const std::string& what, std::string entry = {})
      : std::runtime_error(entry.empty() ? what : what + " (in: " + entry + ")"),
        entry_(std::move(entry)) {}
  const std::string& entry() const { return entry_; }

 private:
  std::string entry_;
};

/// A constant date literal that is not a valid Gregorian date.
class WellFormednessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads {"description", "declarations": ["name: sort", ...],
/// "constraints": [...], "coverage_tags": [...]}. Declarations may list
/// several comma-separated names and the sort is case-insensitive.
Problem load_problem(const nlohmann::json& doc);
Problem load_problem_file(const std::string& path);

/// Inverse of load_problem (one declaration per entry, constraints rendered).
nlohmann::json problem_to_json(const Problem& p);

/// Collapses every period subexpression to one literal and rewrites
/// date - period as date + (-period).
ExprPtr fold_periods(const ExprPtr& e);
Problem fold_periods(const Problem& p);

/// Replaces non-constant Date(...) literals by fresh date variables pinned
/// by field constraints; checks constant literals for validity.
/// Expects a folded problem.
Problem desugar_date_literals(const Problem& p);

/// fold_periods followed by desugar_date_literals.
Problem prepare(const Problem& p);

/// Distinct date-sorted subexpressions in first-occurrence order
/// (post-order, so operands precede the sums built from them).
std::vector<ExprPtr> collect_date_subexprs(const Problem& p);

}  // namespace datesat
