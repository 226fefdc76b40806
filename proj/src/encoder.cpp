#include "datesat/encoder.hpp"

#include <algorithm>
#include <chrono>

namespace datesat {

using namespace smt;

namespace {

constexpr std::array<std::int64_t, 12> kMonthOffsets{0,   31,  61,  92,  122, 153,
                                                     184, 214, 245, 275, 306, 337};

Term I(std::int64_t v) { return int_const(v); }

Term int_compare(CmpOp op, const Term& a, const Term& b) {
  switch (op) {
    case CmpOp::Lt: return lt(a, b);
    case CmpOp::Le: return le(a, b);
    case CmpOp::Gt: return gt(a, b);
    case CmpOp::Ge: return ge(a, b);
    case CmpOp::Eq: return eq(a, b);
    case CmpOp::Ne: return neq(a, b);
  }
  throw EncodingError("bad comparison operator");
}

Term lex_less(const std::vector<Term>& a, const std::vector<Term>& b, std::size_t i = 0) {
  if (i + 1 == a.size()) return lt(a[i], b[i]);
  return or_(lt(a[i], b[i]), and_(eq(a[i], b[i]), lex_less(a, b, i + 1)));
}

Term lex_compare(CmpOp op, const std::vector<Term>& a, const std::vector<Term>& b) {
  switch (op) {
    case CmpOp::Lt: return lex_less(a, b);
    case CmpOp::Gt: return lex_less(b, a);
    case CmpOp::Le: return not_(lex_less(b, a));
    case CmpOp::Ge: return not_(lex_less(a, b));
    case CmpOp::Eq:
    case CmpOp::Ne: {
      std::vector<Term> parts;
      for (std::size_t i = 0; i < a.size(); ++i) parts.push_back(eq(a[i], b[i]));
      Term all = and_(parts);
      return op == CmpOp::Eq ? all : not_(all);
    }
  }
  throw EncodingError("bad comparison operator");
}

Term table_term(const char* name, const std::array<std::int64_t, kLeapCycleMonths>& values) {
  return const_array_from_table(name, std::vector<std::int64_t>(values.begin(), values.end()));
}

}  // namespace

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::Naive: return "naive";
    case Strategy::Epoch: return "epoch";
    case Strategy::Hybrid: return "hybrid";
    case Strategy::AlphaBeta: return "alpha-beta";
    case Strategy::AlphaBetaTable: return "alpha-beta-table";
  }
  return "?";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  for (Strategy s : kAllStrategies) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

Encoder::Encoder(Session& session, Strategy strategy, const Bounds& bounds)
    : s_(session), strategy_(strategy), bounds_(bounds), regular_(bounds.within_regular_range()) {
  if (bounds_.ub < bounds_.lb) throw EncodingError("lower bound exceeds upper bound");
  if (!valid(bounds_.lb) || !valid(bounds_.ub)) throw EncodingError("bounds must be valid dates");
  if (strategy_ == Strategy::AlphaBetaTable) {
    if (!regular_) {
      throw EncodingError("alpha-beta-table needs bounds within " + to_string(kRegularLowerBound) +
                          " .. " + to_string(kRegularUpperBound));
    }
    const auto& t = build_month_tables();
    dim_ = table_term("dim48!tbl", t.dim48);
    dbm_ = table_term("dbm48!tbl", t.dbm48);
  }
}

std::vector<std::string> Encoder::native_names(Strategy s, const std::string& var) {
  switch (s) {
    case Strategy::Naive:
    case Strategy::Hybrid: return {var + ".y", var + ".m", var + ".d"};
    case Strategy::Epoch: return {var + ".delta"};
    case Strategy::AlphaBeta:
    case Strategy::AlphaBetaTable: return {var + ".alpha", var + ".beta"};
  }
  return {};
}

std::vector<std::int64_t> Encoder::native_values(Strategy s, const Date& d) {
  switch (s) {
    case Strategy::Naive:
    case Strategy::Hybrid: return {d.year, d.month, d.day};
    case Strategy::Epoch: return {to_epoch_days(d)};
    case Strategy::AlphaBeta:
    case Strategy::AlphaBetaTable: {
      const auto ab = to_alpha_beta(d);
      return {ab.alpha, ab.beta};
    }
  }
  return {};
}

// -- calendar arithmetic on terms ------------------------------------------

Term Encoder::leap(const Term& year, const YearSpan& span) {
  // Within the span, the century rule reduces to a few excluded years.
  constexpr std::int64_t kMaxExclusions = 8;
  std::vector<Term> parts{eq(mod_const(year, 4), I(0))};
  for (std::int64_t c = floor_div(span.lo, 100) * 100; c <= span.hi; c += 100) {
    if (c < span.lo || is_leap(c)) continue;
    if (static_cast<std::int64_t>(parts.size()) > kMaxExclusions) {
      return and_(parts[0], or_(neq(mod_const(year, 100), I(0)), eq(mod_const(year, 400), I(0))));
    }
    parts.push_back(neq(year, I(c)));
  }
  return and_(parts);
}

Term Encoder::nb_days(const Term& year, const Term& month, const YearSpan& span) {
  const Term thirty = or_({eq(month, I(4)), eq(month, I(6)), eq(month, I(9)), eq(month, I(11))});
  return ite(eq(month, I(2)), ite(leap(year, span), I(29), I(28)), ite(thirty, I(30), I(31)));
}

std::int64_t Encoder::split_period() const {
  return strategy_ == Strategy::AlphaBetaTable ? kLeapCycleMonths : 12;
}

Encoder::Split Encoder::split(const Term& alpha) {
  auto it = splits_.find(alpha.get());
  if (it == splits_.end()) {
    const std::int64_t k = split_period();
    const Split sp{s_.witnessed("ay", SortKind::Int, div_const(alpha, k)),
                   s_.witnessed("ams", SortKind::Int, mod_const(alpha, k))};
    s_.add(and_({eq(alpha, add(mul_const(k, sp.years), sp.ms)), ge(sp.ms, I(0)), lt(sp.ms, I(k))}));
    remember_split(alpha, sp);
    return sp;
  }
  return it->second;
}

void Encoder::remember_split(const Term& alpha, const Split& sp) {
  if (splits_.emplace(alpha.get(), sp).second) pinned_.push_back(alpha);
}

Term Encoder::shift_alpha(const Term& alpha, std::int64_t n) {
  const Split sp = split(alpha);
  const std::int64_t period = split_period();
  const std::int64_t years = floor_div(n, period);
  const std::int64_t k = n - period * years;
  Split out;
  if (k == 0) {
    out = {s_.define("ay", add(sp.years, years)), sp.ms};
  } else {
    const Term wrap = ge(sp.ms, I(period - k));
    out = {s_.define("ay", add(sp.years, ite(wrap, I(years + 1), I(years)))),
           s_.define("ams", ite(wrap, add(sp.ms, k - period), add(sp.ms, k)))};
  }
  const Term shifted = s_.define("alpha", add(alpha, n));
  remember_split(shifted, out);
  return shifted;
}

Term Encoder::nb_days_alpha(const Term& alpha, const Date& lo, const Date& hi, bool bounded) {
  if (strategy_ == Strategy::AlphaBetaTable) {
    // The 48-month table repeats the leap pattern of 2000-2099; only the
    // Februaries of non-leap century years deviate from it.
    Term nb = select(dim_, split(alpha).ms);
    for (std::int64_t y = floor_div(lo.year, 100) * 100; y <= hi.year; y += 100) {
      if (is_leap(y)) continue;
      const Date feb{y, 2, 1};
      if (feb < Date{lo.year, lo.month, 1} || hi < feb) continue;
      if (bounded && (bounds_.ub < Date{y, 2, 29} || Date{y, 3, 1} <= bounds_.lb)) continue;
      nb = ite(eq(alpha, I(to_alpha_beta(feb).alpha)), I(28), nb);
    }
    return nb;
  }
  const Split sp = split(alpha);
  const Term& ms = sp.ms;
  const Term feb_year = add(sp.years, 2001);
  const Term thirty = or_({eq(ms, I(1)), eq(ms, I(3)), eq(ms, I(6)), eq(ms, I(8))});
  const YearSpan span{lo.year - 1, hi.year + 1};
  return ite(eq(ms, I(11)), ite(leap(feb_year, span), I(29), I(28)), ite(thirty, I(30), I(31)));
}

Term Encoder::month_offset(const Term& mshift) {
  Term t = I(kMonthOffsets[11]);
  for (int i = 10; i >= 0; --i) t = ite(eq(mshift, I(i)), I(kMonthOffsets[i]), t);
  return t;
}

Term Encoder::leap_days(const Term& years, bool exact) {
  Term n = div_const(years, 4);
  if (exact) n = add(sub(n, div_const(years, 100)), div_const(years, 400));
  return n;
}

Term Encoder::ymd_to_delta(const Term& y, const Term& m, const Term& d, bool regular) {
  const Term before_march = le(m, I(2));
  const Term years = s_.define("Y", sub(add(y, -2000), ite(before_march, I(1), I(0))));
  const Term ms = s_.define("ms", ite(before_march, add(m, 9), add(m, -3)));
  return add(add(add(mul_const(365, years), leap_days(years, !regular)), month_offset(ms)),
             add(d, -1));
}

Term Encoder::alpha_beta_to_delta(const Term& alpha, const Term& beta, bool regular) {
  if (strategy_ == Strategy::AlphaBetaTable && regular) {
    const Split sp = split(alpha);
    return add(add(select(dbm_, sp.ms), beta), mul_const(kLeapCycleDays, sp.years));
  }
  Term years, ms;
  if (strategy_ == Strategy::AlphaBetaTable) {
    years = div_const(alpha, 12);
    ms = mod_const(alpha, 12);
  } else {
    const Split sp = split(alpha);
    years = sp.years;
    ms = sp.ms;
  }
  return add(add(add(mul_const(365, years), leap_days(years, !regular)), month_offset(ms)), beta);
}

Encoder::Shifted Encoder::delta_to_shifted(const Term& delta, bool regular, bool named) {
  const auto name = [&](std::string_view hint, const Term& t) { return named ? s_.define(hint, t) : t; };
  Term years, doy;
  if (regular) {
    const Term q = name("q", div_const(delta, kLeapCycleDays));
    const Term r = name("r", mod_const(delta, kLeapCycleDays));
    const Term yib = name("yib", ite(lt(r, I(365)), I(0),
                                     ite(lt(r, I(730)), I(1), ite(lt(r, I(1095)), I(2), I(3)))));
    doy = name("doy", sub(r, mul_const(365, yib)));
    years = add(mul_const(4, q), yib);
  } else {
    const Term era = name("era", div_const(delta, 146097));
    const Term doe = name("doe", mod_const(delta, 146097));
    const Term yoe = name(
        "yoe", div_const(sub(add(sub(doe, div_const(doe, 1460)), div_const(doe, 36524)),
                             div_const(doe, 146096)),
                         365));
    doy = name("doy", sub(doe, add(sub(mul_const(365, yoe), div_const(yoe, 100)),
                                   div_const(yoe, 4))));
    years = add(mul_const(400, era), yoe);
  }
  Term ms = I(11);
  for (int i = 10; i >= 0; --i) ms = ite(lt(doy, I(kMonthOffsets[i + 1])), I(i), ms);
  ms = name("ms", ms);
  const Term day0 = name("day0", sub(doy, month_offset(ms)));
  return {name("years", years), ms, day0};
}

Term Encoder::leap_total(const Term& year, bool regular) {
  const Term four = eq(mod_const(year, 4), I(0));
  if (regular) return four;
  return and_(four, or_(neq(mod_const(year, 100), I(0)), eq(mod_const(year, 400), I(0))));
}

void Encoder::delta_to_alpha_beta(const Term& delta, Term& alpha, Term& beta) {
  if (strategy_ == Strategy::AlphaBetaTable) {
    // i is the last month of the cycle whose offset does not exceed r.
    const auto& tables = build_month_tables();
    const Term q = s_.define("q", div_const(delta, kLeapCycleDays));
    const Term r = s_.define("r", sub(delta, mul_const(kLeapCycleDays, q)));
    Term scan = I(0);
    for (std::int64_t k = 1; k < kLeapCycleMonths; ++k) scan = ite(ge(r, I(tables.dbm48[k])), I(k), scan);
    const Term i = s_.define("i", scan);
    beta = s_.define("beta", sub(r, select(dbm_, i)));
    alpha = s_.define("alpha", add(i, mul_const(kLeapCycleMonths, q)));
    remember_split(alpha, Split{q, i});
    return;
  }
  // The inverse conversion is stated relationally: (years, ms, beta) is the
  // unique valid triple whose forward conversion gives delta.
  const Shifted w = delta_to_shifted(delta, regular_, false);
  const Term years = s_.witnessed("ay", SortKind::Int, w.years);
  const Term ms = s_.witnessed("ams", SortKind::Int, w.mshift);
  beta = s_.witnessed("beta", SortKind::Int, w.day0);
  const Term feb = ite(leap_total(add(years, 1), regular_), I(29), I(28));
  const Term thirty = or_({eq(ms, I(1)), eq(ms, I(3)), eq(ms, I(6)), eq(ms, I(8))});
  const Term nb = ite(eq(ms, I(11)), feb, ite(thirty, I(30), I(31)));
  s_.add(and_({ge(ms, I(0)), lt(ms, I(12)), ge(beta, I(0)), lt(beta, nb)}));
  s_.add(eq(add(add(add(mul_const(365, years), leap_days(years, !regular_)), month_offset(ms)), beta),
            delta));
  alpha = s_.define("alpha", add(mul_const(12, years), ms));
  remember_split(alpha, Split{years, ms});
}

void Encoder::fix_delta(DateRepr& a) {
  if (a.delta_flag) return;
  a.delta = s_.define("delta", ymd_to_delta(a.y, a.m, a.d, regular_));
  a.delta_flag = true;
}

void Encoder::fix_ymd(DateRepr& a) {
  if (a.ymd_flag) return;
  auto it = ymd_of_delta_.find(a.delta.get());
  if (it == ymd_of_delta_.end()) {
    // Fresh components, tied to delta by validity and the forward conversion.
    const Shifted w = delta_to_shifted(a.delta, regular_, false);
    const Term late = ge(w.mshift, I(10));
    DateRepr ymd;
    ymd.y = s_.witnessed("y", SortKind::Int, add(add(w.years, 2000), ite(late, I(1), I(0))));
    ymd.m = s_.witnessed("m", SortKind::Int, ite(late, add(w.mshift, -9), add(w.mshift, 3)));
    ymd.d = s_.witnessed("d", SortKind::Int, add(w.day0, 1));
    const Term feb = ite(leap_total(ymd.y, regular_), I(29), I(28));
    const Term thirty = or_({eq(ymd.m, I(4)), eq(ymd.m, I(6)), eq(ymd.m, I(9)), eq(ymd.m, I(11))});
    s_.add(and_({ge(ymd.m, I(1)), le(ymd.m, I(12)), ge(ymd.d, I(1)),
                 le(ymd.d, ite(eq(ymd.m, I(2)), feb, ite(thirty, I(30), I(31))))}));
    s_.add(eq(ymd_to_delta(ymd.y, ymd.m, ymd.d, regular_), a.delta));
    it = ymd_of_delta_.emplace(a.delta.get(), ymd).first;
    pinned_.push_back(a.delta);
  }
  a.y = it->second.y;
  a.m = it->second.m;
  a.d = it->second.d;
  a.ymd_flag = true;
}

void Encoder::add_months_ymd(DateRepr& r, std::int64_t n, const YearSpan& span) {
  if (n == 0) return;
  const std::int64_t years = floor_div(n, 12);
  const std::int64_t k = n - 12 * years;
  if (k == 0) {
    r.y = s_.define("y", add(r.y, years));
  } else {
    const Term wrap = gt(r.m, I(12 - k));
    r.y = s_.define("y", add(r.y, ite(wrap, I(years + 1), I(years))));
    r.m = s_.define("m", ite(wrap, add(r.m, k - 12), add(r.m, k)));
  }
  r.d = s_.define("d", min(r.d, s_.define("nb", nb_days(r.y, r.m, span))));
}

void Encoder::add_days_naive(DateRepr& r, std::int64_t n, const YearSpan& span) {
  if (n == 0) return;
  // y mod 4 is carried through the steps instead of recomputed per day.
  Term r4 = s_.define("r4", mod_const(r.y, 4));
  const auto leap = [&](const Term& y, const Term& rem) {
    std::vector<Term> parts{eq(rem, I(0))};
    for (std::int64_t c = floor_div(span.lo, 100) * 100; c <= span.hi; c += 100) {
      if (c >= span.lo && !is_leap(c)) parts.push_back(neq(y, I(c)));
    }
    return and_(parts);
  };
  const auto thirty = [&](const Term& m) {
    return or_({eq(m, I(4)), eq(m, I(6)), eq(m, I(9)), eq(m, I(11))});
  };
  for (std::int64_t step = 0; step < n; ++step) {
    // d + 1 > nbDays(y, m), written with equalities only since d <= nbDays(y, m).
    const Term over = s_.define("over", or_({
        eq(r.d, I(31)), and_(eq(r.d, I(30)), thirty(r.m)),
        and_(eq(r.m, I(2)), or_(eq(r.d, I(29)), and_(eq(r.d, I(28)), not_(leap(r.y, r4)))))}));
    const Term december = eq(r.m, I(12));
    const Term next_year = and_(over, december);
    const Term y = s_.define("y", ite(next_year, add(r.y, 1), r.y));
    const Term m = s_.define("m", ite(over, ite(december, I(1), add(r.m, 1)), r.m));
    r4 = s_.define("r4", ite(next_year, ite(eq(r4, I(3)), I(0), add(r4, 1)), r4));
    r.d = s_.define("d", ite(over, I(1), add(r.d, 1)));
    r.y = y;
    r.m = m;
  }
  for (std::int64_t step = 0; step > n; --step) {
    const Term under = s_.define("under", eq(r.d, I(1)));
    const Term january = eq(r.m, I(1));
    const Term prev_year = and_(under, january);
    const Term y = s_.define("y", ite(prev_year, add(r.y, -1), r.y));
    const Term m = s_.define("m", ite(under, ite(january, I(12), add(r.m, -1)), r.m));
    r4 = s_.define("r4", ite(prev_year, ite(eq(r4, I(0)), I(3), add(r4, -1)), r4));
    const Term feb = ite(leap(y, r4), I(29), I(28));
    r.d = s_.define("d", ite(under, ite(eq(m, I(2)), feb, ite(thirty(m), I(30), I(31))), add(r.d, -1)));
    r.y = y;
    r.m = m;
  }
}

std::pair<Date, Date> Encoder::intermediate_range(const Period& p) const {
  const auto n = p.total_months();
  const Date lo = std::max(add_months(bounds_.lb, n), add_days(bounds_.lb, -p.days));
  const Date hi = std::min(add_months(bounds_.ub, n), add_days(bounds_.ub, -p.days));
  // An empty range means the result can never be in bounds; any formula will do.
  if (hi < lo) return {bounds_.lb, bounds_.ub};
  return {lo, hi};
}

bool Encoder::regular_range(const std::pair<Date, Date>& r) {
  return kRegularLowerBound <= r.first && r.second <= kRegularUpperBound;
}

Encoder::YearSpan Encoder::year_span(const Period& p) const {
  const auto [lo, hi] = intermediate_range(p);
  return {std::min(lo, bounds_.lb).year - 1, std::max(hi, bounds_.ub).year + 1};
}

// -- representation-level operations -----------------------------------------

DateRepr Encoder::date_var(const std::string& name) {
  DateRepr r;
  const auto names = native_names(strategy_, name);
  switch (strategy_) {
    case Strategy::Naive:
    case Strategy::Hybrid:
      r.y = s_.declare(names[0], SortKind::Int);
      r.m = s_.declare(names[1], SortKind::Int);
      r.d = s_.declare(names[2], SortKind::Int);
      s_.add(and_({ge(r.m, I(1)), le(r.m, I(12)), ge(r.d, I(1)), le(r.d, nb_days(r.y, r.m, {bounds_.lb.year - 1, bounds_.ub.year + 1}))}));
      r.ymd_flag = true;
      break;
    case Strategy::Epoch:
      r.delta = s_.declare(names[0], SortKind::Int);
      r.delta_flag = true;
      break;
    case Strategy::AlphaBeta:
    case Strategy::AlphaBetaTable:
      r.alpha = s_.declare(names[0], SortKind::Int);
      r.beta = s_.declare(names[1], SortKind::Int);
      s_.add(and_(ge(r.beta, I(0)), lt(r.beta, nb_days_alpha(r.alpha, bounds_.lb, bounds_.ub, true))));
      break;
  }
  return r;
}

DateRepr Encoder::constant(const Date& d) {
  if (!valid(d)) throw EncodingError("invalid date constant " + to_string(d));
  DateRepr r;
  r.known = d;
  const auto v = native_values(strategy_, d);
  switch (strategy_) {
    case Strategy::Hybrid:
      r.delta = I(to_epoch_days(d));
      r.delta_flag = true;
      [[fallthrough]];
    case Strategy::Naive:
      r.y = I(v[0]);
      r.m = I(v[1]);
      r.d = I(v[2]);
      r.ymd_flag = true;
      break;
    case Strategy::Epoch:
      r.delta = I(v[0]);
      r.delta_flag = true;
      break;
    case Strategy::AlphaBeta:
    case Strategy::AlphaBetaTable:
      r.alpha = I(v[0]);
      r.beta = I(v[1]);
      break;
  }
  return r;
}

DateRepr Encoder::add_period(DateRepr& a, const Period& p) {
  if (p.is_zero()) return a;
  if (a.known) return constant(datesat::add_period(*a.known, p));
  const std::int64_t n = p.total_months();
  DateRepr r = a;
  switch (strategy_) {
    case Strategy::Naive:
      add_months_ymd(r, n, year_span(p));
      add_days_naive(r, p.days, year_span(p));
      return r;

    case Strategy::Epoch: {
      if (n == 0) {
        r.delta = s_.define("delta", add(a.delta, p.days));
        return r;
      }
      DateRepr ymd = a;
      fix_ymd(ymd);
      add_months_ymd(ymd, n, year_span(p));
      const Term moved =
          ymd_to_delta(ymd.y, ymd.m, ymd.d, regular_ && regular_range(intermediate_range(p)));
      r.delta = s_.define("delta", add(moved, p.days));
      if (p.days == 0 && ymd_of_delta_.emplace(r.delta.get(), ymd).second) pinned_.push_back(r.delta);
      return r;
    }

    case Strategy::Hybrid: {
      if (n != 0) {
        fix_ymd(a);
        r = a;
        add_months_ymd(r, n, year_span(p));
        r.ymd_flag = true;
        r.delta_flag = false;
        r.delta = Term();
        if (p.days == 0) return r;
        r.delta = s_.define("delta", ymd_to_delta(r.y, r.m, r.d,
                                                  regular_ && regular_range(intermediate_range(p))));
        r.delta_flag = true;
      } else {
        fix_delta(a);
        r = a;
      }
      r.delta = s_.define("delta", add(r.delta, p.days));
      r.ymd_flag = false;
      r.delta_flag = true;
      return r;
    }

    case Strategy::AlphaBeta:
    case Strategy::AlphaBetaTable: {
      const auto mid = intermediate_range(p);
      const bool mid_regular = regular_ && regular_range(mid);
      Term alpha = a.alpha;
      Term beta = a.beta;
      Term nb;
      if (n != 0) {
        alpha = shift_alpha(alpha, n);
        nb = s_.define("nb", nb_days_alpha(alpha, mid.first, mid.second));
        beta = s_.define("beta", ite(gt(beta, add(nb, -1)), add(nb, -1), beta));
      }
      if (p.days != 0) {
        if (!nb) nb = s_.define("nb", nb_days_alpha(alpha, bounds_.lb, bounds_.ub, true));
        const Term moved = s_.define("beta", add(beta, p.days));
        const Term stays = and_(ge(moved, I(0)), lt(moved, nb));
        Term alpha2, beta2;
        delta_to_alpha_beta(s_.define("delta", alpha_beta_to_delta(alpha, moved, mid_regular)),
                            alpha2, beta2);
        const Term joined = s_.define("alpha", ite(stays, alpha, alpha2));
        {
          const Split a1 = split(alpha), a2 = split(alpha2);
          remember_split(joined, Split{s_.define("ay", ite(stays, a1.years, a2.years)),
                                       s_.define("ams", ite(stays, a1.ms, a2.ms))});
        }
        alpha = joined;
        beta = s_.define("beta", ite(stays, moved, beta2));
      }
      r.alpha = alpha;
      r.beta = beta;
      return r;
    }
  }
  return r;
}

Term Encoder::compare(DateRepr& a, DateRepr& b, CmpOp op) {
  switch (strategy_) {
    case Strategy::Naive: return lex_compare(op, {a.y, a.m, a.d}, {b.y, b.m, b.d});
    case Strategy::Epoch: return int_compare(op, a.delta, b.delta);
    case Strategy::Hybrid:
      if (a.delta_flag && b.delta_flag) return int_compare(op, a.delta, b.delta);
      if (a.ymd_flag && b.ymd_flag) return lex_compare(op, {a.y, a.m, a.d}, {b.y, b.m, b.d});
      fix_delta(a);
      fix_delta(b);
      return int_compare(op, a.delta, b.delta);
    case Strategy::AlphaBeta:
    case Strategy::AlphaBetaTable: return lex_compare(op, {a.alpha, a.beta}, {b.alpha, b.beta});
  }
  throw EncodingError("unknown strategy");
}

Term Encoder::field(DateRepr& a, Field f) {
  if (strategy_ == Strategy::AlphaBeta || strategy_ == Strategy::AlphaBetaTable) {
    switch (f) {
      case Field::Year: {
        // year = 2000 + (alpha + 2) div 12, with alpha split by the period.
        const Split sp = split(a.alpha);
        Term carry = I(0);
        for (std::int64_t k = 1; k <= split_period() / 12; ++k) carry = ite(ge(sp.ms, I(12 * k - 2)), I(k), carry);
        return add(add(mul_const(split_period() / 12, sp.years), 2000), carry);
      }
      case Field::Month: {
        const Split sp = split(a.alpha);
        Term t = add(sp.ms, 3);
        for (std::int64_t k = 1; k <= split_period() / 12; ++k) t = ite(ge(sp.ms, I(12 * k - 2)), add(sp.ms, 3 - 12 * k), t);
        return t;
      }
      case Field::Day: return add(a.beta, 1);
    }
  }
  DateRepr ymd = a;
  if (strategy_ == Strategy::Hybrid) {
    fix_ymd(a);
    ymd = a;
  } else if (strategy_ == Strategy::Epoch) {
    fix_ymd(ymd);
  }
  switch (f) {
    case Field::Year: return ymd.y;
    case Field::Month: return ymd.m;
    case Field::Day: return ymd.d;
  }
  throw EncodingError("unknown field");
}

Term Encoder::in_bounds(DateRepr& a) {
  DateRepr lb = constant(bounds_.lb);
  DateRepr ub = constant(bounds_.ub);
  return and_(compare(a, lb, CmpOp::Ge), compare(a, ub, CmpOp::Le));
}

// -- expressions ---------------------------------------------------------------

void Encoder::declare(const Declaration& d) {
  switch (d.sort) {
    case Sort::Date:
      if (date_vars_.contains(d.name)) throw EncodingError("duplicate declaration " + d.name);
      date_vars_.emplace(d.name, date_var(d.name));
      break;
    case Sort::Int:
      scalar_vars_.emplace(d.name, s_.declare(d.name, SortKind::Int));
      break;
    case Sort::Bool:
      scalar_vars_.emplace(d.name, s_.declare(d.name, SortKind::Bool));
      break;
    case Sort::Period:
      throw EncodingError("period variables are not supported: " + d.name);
  }
}

DateRepr& Encoder::date(const ExprPtr& e) {
  if (e->kind() == ExprKind::DateVar) {
    auto it = date_vars_.find(e->name());
    if (it == date_vars_.end()) throw EncodingError("undeclared date variable " + e->name());
    return it->second;
  }
  const std::string key = render(*e);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  DateRepr r;
  switch (e->kind()) {
    case ExprKind::DateLit:
      if (!is_constant_date_lit(*e)) {
        throw EncodingError("date literal with variable components must be desugared: " + key);
      }
      r = constant(Date{e->arg(0)->value(), e->arg(1)->value(), e->arg(2)->value()});
      break;
    case ExprKind::DateAddPeriod: {
      if (e->arg(1)->kind() != ExprKind::PeriodLit) throw EncodingError("unfolded period in " + key);
      DateRepr& base = date(e->arg(0));
      r = add_period(base, e->arg(1)->period());
      break;
    }
    default:
      throw EncodingError("unfolded date expression " + key);
  }
  return cache_.emplace(key, r).first->second;
}

Term Encoder::integer(const ExprPtr& e) {
  switch (e->kind()) {
    case ExprKind::IntConst: return I(e->value());
    case ExprKind::IntVar: {
      auto it = scalar_vars_.find(e->name());
      if (it == scalar_vars_.end() || it->second.sort() != SortKind::Int) {
        throw EncodingError("undeclared int variable " + e->name());
      }
      return it->second;
    }
    case ExprKind::Neg: return neg(integer(e->arg(0)));
    case ExprKind::IntAdd: return add(integer(e->arg(0)), integer(e->arg(1)));
    case ExprKind::IntSub: return sub(integer(e->arg(0)), integer(e->arg(1)));
    case ExprKind::IntMulConst: return mul_const(e->value(), integer(e->arg(0)));
    case ExprKind::DateField: return field(date(e->arg(0)), e->field());
    default: throw EncodingError("not an integer expression: " + render(*e));
  }
}

Term Encoder::constraint(const ExprPtr& e) {
  switch (e->kind()) {
    case ExprKind::BoolConst: return bool_const(e->value() != 0);
    case ExprKind::BoolVar: {
      auto it = scalar_vars_.find(e->name());
      if (it == scalar_vars_.end() || it->second.sort() != SortKind::Bool) {
        throw EncodingError("undeclared bool variable " + e->name());
      }
      return it->second;
    }
    case ExprKind::Not: return not_(constraint(e->arg(0)));
    case ExprKind::And: return and_(constraint(e->arg(0)), constraint(e->arg(1)));
    case ExprKind::Or: return or_(constraint(e->arg(0)), constraint(e->arg(1)));
    case ExprKind::Implies: return implies(constraint(e->arg(0)), constraint(e->arg(1)));
    case ExprKind::Iff: return eq(constraint(e->arg(0)), constraint(e->arg(1)));
    case ExprKind::Xor: return neq(constraint(e->arg(0)), constraint(e->arg(1)));
    case ExprKind::IntCmp: return int_compare(e->op(), integer(e->arg(0)), integer(e->arg(1)));
    case ExprKind::DateCmp: {
      DateRepr& a = date(e->arg(0));
      DateRepr& b = date(e->arg(1));
      return compare(a, b, e->op());
    }
    default: throw EncodingError("not a boolean expression: " + render(*e));
  }
}

// -- whole problems --------------------------------------------------------------

EncodedInstance encode(const Problem& p, Strategy s, const Bounds& b, EncodeOptions options) {
  const auto start = std::chrono::steady_clock::now();
  EncodedInstance inst;
  inst.strategy = s;
  inst.bounds = b;
  inst.problem = prepare(p);
  inst.session = std::make_shared<Session>(SessionOptions{options.table_mode, options.eliminate_divmod});
  Session& session = *inst.session;

  Encoder enc(session, s, b);
  for (const auto& d : inst.problem.declarations) enc.declare(d);
  for (const auto& c : inst.problem.constraints) session.add(enc.constraint(c));
  for (const auto& e : collect_date_subexprs(inst.problem)) session.add(enc.in_bounds(enc.date(e)));
  for (const auto& d : inst.problem.declarations) {
    if (d.sort == Sort::Date) session.add(enc.in_bounds(enc.date(Expr::date_var(d.name))));
  }
  inst.dates = enc.date_vars();
  inst.scalars = enc.scalar_vars();
  inst.encode_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return inst;
}

Assignment decode_model(const EncodedInstance& inst, const RawModel& raw) {
  Evaluator ev(*inst.session, [&raw](const std::string& name) { return raw.get(name); });
  Assignment out;
  for (const auto& [name, r] : inst.dates) {
    if (inst.problem.is_internal(name)) continue;
    Date d;
    if (r.ymd_flag) {
      d = Date{ev.eval(r.y), ev.eval(r.m), ev.eval(r.d)};
    } else if (r.delta_flag) {
      d = from_epoch_days(ev.eval(r.delta));
    } else {
      const auto alpha = ev.eval(r.alpha);
      const auto beta = ev.eval(r.beta);
      try {
        d = from_alpha_beta(alpha, beta);
      } catch (const std::invalid_argument&) {
        throw DecodeError("model gives " + name + " an invalid (alpha, beta) = (" +
                          std::to_string(alpha) + ", " + std::to_string(beta) + ")");
      }
    }
    if (!valid(d)) throw DecodeError("model gives " + name + " an invalid date " + to_string(d));
    if (!inst.bounds.contains(d)) {
      throw DecodeError("model puts " + name + " = " + to_string(d) + " outside the bounds");
    }
    out.emplace(name, d);
  }
  for (const auto& [name, t] : inst.scalars) {
    if (inst.problem.is_internal(name)) continue;
    const auto v = ev.eval(t);
    if (t.sort() == SortKind::Bool) {
      out.emplace(name, v != 0);
    } else {
      out.emplace(name, v);
    }
  }
  return out;
}

}  // namespace datesat
