#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "datesat/problem.hpp"
#include "datesat/smt/session.hpp"
#include "datesat/smt/solver.hpp"
#include "datesat/value.hpp"

namespace datesat {

enum class Strategy { Naive, Epoch, Hybrid, AlphaBeta, AlphaBetaTable };

inline constexpr std::array<Strategy, 5> kAllStrategies{
    Strategy::Naive, Strategy::Epoch, Strategy::Hybrid, Strategy::AlphaBeta,
    Strategy::AlphaBetaTable};

/// "naive", "epoch", "hybrid", "alpha-beta", "alpha-beta-table".
std::string_view to_string(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view name);

/// Symbolic handles for one date subexpression. Which members are set
/// depends on the strategy:
///   Naive          y, m, d
///   Epoch          delta
///   Hybrid         y, m, d and/or delta, as reported by the two flags
///   AlphaBeta(*)   alpha (months since the epoch), beta (zero-based day)
struct DateRepr {
  smt::Term y, m, d;
  smt::Term delta;
  smt::Term alpha, beta;
  bool ymd_flag = false;
  bool delta_flag = false;
  /// Set for dates with no variables in them.
  std::optional<Date> known;
};

class EncodingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A SAT model that does not decode to valid, in-bounds dates.
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Builds the formulas of one strategy into a session.
class Encoder {
 public:
  /// Throws EncodingError when AlphaBetaTable is asked for bounds outside
  /// the regular leap range.
  Encoder(smt::Session& session, Strategy strategy, const Bounds& bounds);

  Strategy strategy() const { return strategy_; }
  const Bounds& bounds() const { return bounds_; }

  /// Fresh variables for a declared date, with their validity constraints.
  DateRepr date_var(const std::string& name);
  DateRepr constant(const Date& d);
  /// `a` may gain a representation (Hybrid), hence the reference.
  DateRepr add_period(DateRepr& a, const Period& p);
  smt::Term compare(DateRepr& a, DateRepr& b, CmpOp op);
  smt::Term field(DateRepr& a, Field f);
  /// lb <= a <= ub in the strategy's own comparison form.
  smt::Term in_bounds(DateRepr& a);

  /// Encodes a prepared constraint. Date subexpressions are shared by
  /// their rendering.
  smt::Term constraint(const ExprPtr& e);
  DateRepr& date(const ExprPtr& e);

  void declare(const Declaration& d);
  const std::map<std::string, DateRepr>& date_vars() const { return date_vars_; }
  const std::map<std::string, smt::Term>& scalar_vars() const { return scalar_vars_; }

  /// Session variable names holding a date variable's native values, and
  /// those values for a concrete date, in matching order.
  static std::vector<std::string> native_names(Strategy s, const std::string& var);
  static std::vector<std::int64_t> native_values(Strategy s, const Date& d);

 private:
  /// Years a year term can take in any model where the enclosing result is
  /// in bounds, widened by one year on each side.
  struct YearSpan {
    std::int64_t lo, hi;
  };

  struct Shifted {
    smt::Term years;   // March-based years since 2000
    smt::Term mshift;  // 0 = March ... 11 = February
    smt::Term day0;    // zero-based day of month
  };

  /// alpha = period * years + ms with 0 <= ms < period, where the period
  /// is 48 months for AlphaBetaTable and 12 otherwise.
  struct Split {
    smt::Term years, ms;
  };
  std::int64_t split_period() const;

  smt::Term integer(const ExprPtr& e);
  Split split(const smt::Term& alpha);
  void remember_split(const smt::Term& alpha, const Split& sp);
  smt::Term shift_alpha(const smt::Term& alpha, std::int64_t n);

  smt::Term leap(const smt::Term& year, const YearSpan& span);
  smt::Term nb_days(const smt::Term& year, const smt::Term& month, const YearSpan& span);
  /// Days in month `alpha`, where the month is known to lie between the
  /// months of `lo` and `hi`.
  /// `bounded`: the (alpha, beta) pair is itself checked against the bounds,
  /// so a day 29 of a century February that lies past them needs no override.
  smt::Term nb_days_alpha(const smt::Term& alpha, const Date& lo, const Date& hi, bool bounded = false);
  smt::Term month_offset(const smt::Term& mshift);
  smt::Term leap_days(const smt::Term& shifted_years, bool exact);
  smt::Term ymd_to_delta(const smt::Term& y, const smt::Term& m, const smt::Term& d, bool regular);
  smt::Term alpha_beta_to_delta(const smt::Term& alpha, const smt::Term& beta, bool regular);
  /// With `named` false no session variables are introduced; the result is
  /// then only meant for concrete evaluation.
  Shifted delta_to_shifted(const smt::Term& delta, bool regular, bool named = true);
  /// Leap rule matching the day-count arithmetic: y mod 4 when `regular`,
  /// the full Gregorian rule otherwise.
  smt::Term leap_total(const smt::Term& year, bool regular);
  void delta_to_alpha_beta(const smt::Term& delta, smt::Term& alpha, smt::Term& beta);
  void fix_delta(DateRepr& a);
  void fix_ymd(DateRepr& a);
  void add_months_ymd(DateRepr& r, std::int64_t n, const YearSpan& span);
  void add_days_naive(DateRepr& r, std::int64_t n, const YearSpan& span);
  /// Range of the date reached after the month step of `p`, assuming the
  /// operand and the final result are within bounds.
  std::pair<Date, Date> intermediate_range(const Period& p) const;
  static bool regular_range(const std::pair<Date, Date>& r);
  /// Years covered by the bounds and by the intermediate range of `p`.
  YearSpan year_span(const Period& p) const;

  smt::Session& s_;
  Strategy strategy_;
  Bounds bounds_;
  bool regular_;
  smt::Term dim_, dbm_;
  std::map<std::string, DateRepr> date_vars_;
  std::map<std::string, smt::Term> scalar_vars_;
  std::map<std::string, DateRepr> cache_;
  std::unordered_map<const smt::TermNode*, DateRepr> ymd_of_delta_;
  std::unordered_map<const smt::TermNode*, Split> splits_;
  std::vector<smt::Term> pinned_;  // keeps memo keys alive
};

struct EncodeOptions {
  smt::TableMode table_mode = smt::TableMode::Array;
  bool eliminate_divmod = false;
};

struct EncodedInstance {
  std::shared_ptr<smt::Session> session;
  Strategy strategy = Strategy::Naive;
  Bounds bounds;
  Problem problem;  // the prepared problem that was encoded
  std::map<std::string, DateRepr> dates;
  std::map<std::string, smt::Term> scalars;
  double encode_ms = 0;
};

/// Folds, desugars and encodes `p`, adding lb <= e <= ub for every date
/// subexpression and every declared date variable.
EncodedInstance encode(const Problem& p, Strategy s, const Bounds& b, EncodeOptions options = {});

/// Reads user variables back from a model; internal desugaring variables
/// are left out. Throws DecodeError on invalid or out-of-bounds dates.
Assignment decode_model(const EncodedInstance& inst, const smt::RawModel& raw);

}  // namespace datesat
