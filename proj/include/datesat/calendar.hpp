#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace datesat {

// Floor division / non-negative modulo for positive divisors, matching
// SMT-LIB `div` and `mod`.
constexpr std::int64_t floor_div(std::int64_t a, std::int64_t n) {
  std::int64_t q = a / n;
  std::int64_t r = a % n;
  if (r != 0 && ((r < 0) != (n < 0))) --q;
  return q;
}

constexpr std::int64_t floor_mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  if (r < 0) r += (n < 0 ? -n : n);
  return r;
}

/// A Gregorian calendar date with astronomical year numbering.
///
/// Field order matters: the defaulted three-way comparison is the
/// lexicographic (year, month, day) ordering on valid dates.
struct Date {
  std::int64_t year = 2000;
  std::int64_t month = 3;
  std::int64_t day = 1;

  friend constexpr auto operator<=>(const Date&, const Date&) = default;
};

/// A signed (years, months, days) offset. Periods have no ordering.
struct Period {
  std::int64_t years = 0;
  std::int64_t months = 0;
  std::int64_t days = 0;

  friend constexpr bool operator==(const Period&, const Period&) = default;

  constexpr std::int64_t total_months() const { return 12 * years + months; }
  constexpr bool days_only() const { return years == 0 && months == 0; }
  constexpr bool is_zero() const { return years == 0 && months == 0 && days == 0; }
};

constexpr Period operator+(const Period& p, const Period& q) {
  return {p.years + q.years, p.months + q.months, p.days + q.days};
}
constexpr Period operator-(const Period& p) { return {-p.years, -p.months, -p.days}; }
constexpr Period operator-(const Period& p, const Period& q) { return p + (-q); }
constexpr Period operator*(std::int64_t k, const Period& p) {
  return {k * p.years, k * p.months, k * p.days};
}
constexpr Period operator*(const Period& p, std::int64_t k) { return k * p; }

inline Period period_add(const Period& p, const Period& q) { return p + q; }
inline Period period_scale(std::int64_t k, const Period& p) { return k * p; }

/// March 1, 2000: the first day of a 400-year Gregorian cycle, so leap days
/// recur every 1461 days for the two centuries around it.
inline constexpr Date kEpoch{2000, 3, 1};
inline constexpr std::int64_t kLeapCycleDays = 1461;
inline constexpr std::int64_t kLeapCycleMonths = 48;

/// The span in which every fourth year is a leap year.
inline constexpr Date kRegularLowerBound{1900, 3, 1};
inline constexpr Date kRegularUpperBound{2100, 2, 28};

bool is_leap(std::int64_t year);

/// Days in `month` of `year`. Throws std::invalid_argument for a month
/// outside 1..12.
std::int64_t nb_days(std::int64_t year, std::int64_t month);

bool valid(const Date& d);

enum class Ordering { Less, Equal, Greater };
Ordering compare(const Date& a, const Date& b);

/// Add-Months with round-down of the day component.
Date add_months(const Date& a, std::int64_t n);
Date add_days(const Date& a, std::int64_t n);
/// Months first (with round-down), then days.
Date add_period(const Date& a, const Period& p);

/// Days elapsed since `kEpoch` (negative before it). Exact for any year.
std::int64_t to_epoch_days(const Date& a);
Date from_epoch_days(std::int64_t delta);

/// (months since March 2000, zero-based day of month).
struct AlphaBeta {
  std::int64_t alpha = 0;
  std::int64_t beta = 0;
  friend constexpr bool operator==(const AlphaBeta&, const AlphaBeta&) = default;
};

AlphaBeta to_alpha_beta(const Date& a);
/// Throws std::invalid_argument when beta is outside [0, nb_days).
Date from_alpha_beta(std::int64_t alpha, std::int64_t beta);

/// Days-in-month and days-before-month for the 48 months starting at the
/// epoch. Only meaningful inside the regular leap range.
struct MonthTables {
  std::array<std::int64_t, kLeapCycleMonths> dim48{};
  std::array<std::int64_t, kLeapCycleMonths> dbm48{};
  static constexpr std::int64_t cycle_len = kLeapCycleDays;
};

const MonthTables& build_month_tables();

/// ISO "YYYY-MM-DD"; year zero-padded to at least four digits, with a
/// leading '-' for negative years.
std::string to_string(const Date& d);
std::string to_string(const Period& p);

/// Parses the ISO form produced by `to_string`. Returns nullopt on malformed
/// or invalid input.
std::optional<Date> parse_date(std::string_view text);

}  // namespace datesat
