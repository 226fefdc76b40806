#include "datesat/calendar.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace datesat {

namespace {

constexpr std::int64_t kDaysPer400Years = 146097;

}  // namespace

bool is_leap(std::int64_t year) {
  return floor_mod(year, 4) == 0 &&
         (floor_mod(year, 100) != 0 || floor_mod(year, 400) == 0);
}

std::int64_t nb_days(std::int64_t year, std::int64_t month) {
  switch (month) {
    case 4: case 6: case 9: case 11:
      return 30;
    case 2:
      return is_leap(year) ? 29 : 28;
    case 1: case 3: case 5: case 7: case 8: case 10: case 12:
      return 31;
    default:
      throw std::invalid_argument("month out of range: " + std::to_string(month));
  }
}

bool valid(const Date& d) {
  return d.month >= 1 && d.month <= 12 && d.day >= 1 && d.day <= nb_days(d.year, d.month);
}

Ordering compare(const Date& a, const Date& b) {
  auto c = a <=> b;
  if (c < 0) return Ordering::Less;
  if (c > 0) return Ordering::Greater;
  return Ordering::Equal;
}

Date add_months(const Date& a, std::int64_t n) {
  const std::int64_t shifted = a.month - 1 + n;
  Date r;
  r.year = a.year + floor_div(shifted, 12);
  r.month = 1 + floor_mod(shifted, 12);
  r.day = std::min(a.day, nb_days(r.year, r.month));
  return r;
}

Date add_days(const Date& a, std::int64_t n) {
  if (n == 0) return a;
  return from_epoch_days(to_epoch_days(a) + n);
}

Date add_period(const Date& a, const Period& p) {
  return add_days(add_months(a, p.total_months()), p.days);
}

std::int64_t to_epoch_days(const Date& a) {
  // Shift to a March-based year so the leap day is the last day of it.
  const std::int64_t shifted_year = a.year - (a.month <= 2 ? 1 : 0) - 2000;
  const std::int64_t march_month = floor_mod(a.month + 9, 12);
  const std::int64_t day_of_year = (153 * march_month + 2) / 5 + a.day - 1;
  return 365 * shifted_year + floor_div(shifted_year, 4) - floor_div(shifted_year, 100) +
         floor_div(shifted_year, 400) + day_of_year;
}

Date from_epoch_days(std::int64_t delta) {
  // The epoch starts a 400-year cycle, so no offset is needed.
  const std::int64_t era = floor_div(delta, kDaysPer400Years);
  const std::int64_t doe = delta - era * kDaysPer400Years;
  const std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const std::int64_t mp = (5 * doy + 2) / 153;
  Date r;
  r.day = doy - (153 * mp + 2) / 5 + 1;
  r.month = mp < 10 ? mp + 3 : mp - 9;
  r.year = 2000 + 400 * era + yoe + (r.month <= 2 ? 1 : 0);
  return r;
}

AlphaBeta to_alpha_beta(const Date& a) {
  return {12 * (a.year - 2000) + (a.month - 3), a.day - 1};
}

Date from_alpha_beta(std::int64_t alpha, std::int64_t beta) {
  Date r;
  r.year = 2000 + floor_div(alpha + 2, 12);
  r.month = floor_mod(alpha + 2, 12) + 1;
  const std::int64_t len = nb_days(r.year, r.month);
  if (beta < 0 || beta >= len) {
    throw std::invalid_argument("beta " + std::to_string(beta) + " outside [0, " +
                                std::to_string(len) + ")");
  }
  r.day = beta + 1;
  return r;
}

const MonthTables& build_month_tables() {
  static const MonthTables tables = [] {
    MonthTables t;
    std::int64_t elapsed = 0;
    for (std::int64_t i = 0; i < kLeapCycleMonths; ++i) {
      const Date first = add_months(kEpoch, i);
      t.dim48[i] = nb_days(first.year, first.month);
      t.dbm48[i] = elapsed;
      elapsed += t.dim48[i];
    }
    return t;
  }();
  return tables;
}

std::string to_string(const Date& d) {
  char buf[64];
  const std::int64_t y = d.year < 0 ? -d.year : d.year;
  std::snprintf(buf, sizeof buf, "%s%04lld-%02lld-%02lld", d.year < 0 ? "-" : "",
                static_cast<long long>(y), static_cast<long long>(d.month),
                static_cast<long long>(d.day));
  return buf;
}

std::string to_string(const Period& p) {
  return "Period(" + std::to_string(p.years) + ", " + std::to_string(p.months) + ", " +
         std::to_string(p.days) + ")";
}

std::optional<Date> parse_date(std::string_view text) {
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  auto read = [&text](std::int64_t& out, std::size_t min_digits) -> bool {
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    const auto used = static_cast<std::size_t>(ptr - text.data());
    if (ec != std::errc{} || used < min_digits) return false;
    text.remove_prefix(used);
    return true;
  };
  Date d;
  if (text.empty() || text.front() == '-' || text.front() == '+') return std::nullopt;
  if (!read(d.year, 4) || text.empty() || text.front() != '-') return std::nullopt;
  text.remove_prefix(1);
  if (text.size() != 5 || !read(d.month, 2) || text.empty() || text.front() != '-') {
    return std::nullopt;
  }
  text.remove_prefix(1);
  if (text.size() != 2 || !read(d.day, 2) || !text.empty()) return std::nullopt;
  if (negative) d.year = -d.year;
  if (!valid(d)) return std::nullopt;
  return d;
}

}  // namespace datesat
