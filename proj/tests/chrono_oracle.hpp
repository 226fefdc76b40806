#pragma once

// Reference calendar built on <chrono>, independent of datesat's own
// arithmetic. Used as the test oracle for derived values.

#include <chrono>
#include <cstdint>

#include "datesat/calendar.hpp"

namespace chrono_oracle {

namespace ch = std::chrono;

inline ch::year_month_day ymd(const datesat::Date& d) {
  return ch::year{static_cast<int>(d.year)} / ch::month{static_cast<unsigned>(d.month)} /
         ch::day{static_cast<unsigned>(d.day)};
}

inline datesat::Date date(const ch::year_month_day& v) {
  return {static_cast<int>(v.year()), static_cast<unsigned>(v.month()), static_cast<unsigned>(v.day())};
}

inline datesat::Date date(ch::sys_days s) { return date(ch::year_month_day{s}); }

inline std::int64_t epoch_days(const datesat::Date& d) {
  return (ch::sys_days{ymd(d)} - ch::sys_days{ch::year{2000} / ch::March / 1}).count();
}

inline datesat::Date from_epoch_days(std::int64_t n) {
  return date(ch::sys_days{ch::year{2000} / ch::March / 1} + ch::days{n});
}

inline bool valid(const datesat::Date& d) {
  if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > 31) return false;
  return ymd(d).ok();
}

inline std::int64_t days_in_month(std::int64_t y, std::int64_t m) {
  return static_cast<unsigned>(
      ch::year_month_day_last{ch::year{static_cast<int>(y)} / ch::month{static_cast<unsigned>(m)} / ch::last}.day());
}

// Month arithmetic on year_month, then the day is clamped to the month end.
inline datesat::Date add_months(const datesat::Date& d, std::int64_t n) {
  const ch::year_month ym =
      ch::year{static_cast<int>(d.year)} / ch::month{static_cast<unsigned>(d.month)} + ch::months{n};
  const std::int64_t y = static_cast<int>(ym.year());
  const std::int64_t m = static_cast<unsigned>(ym.month());
  const std::int64_t last = days_in_month(y, m);
  return {y, m, d.day < last ? d.day : last};
}

inline datesat::Date add_period(const datesat::Date& d, const datesat::Period& p) {
  const datesat::Date m = chrono_oracle::add_months(d, 12 * p.years + p.months);
  return date(ch::sys_days{ymd(m)} + ch::days{p.days});
}

}  // namespace chrono_oracle
