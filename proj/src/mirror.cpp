#include "datesat/mirror.hpp"

namespace datesat {

std::vector<Period> mirror_periods() {
  return {{0, 0, 0},   {0, 0, 1},    {0, 0, -1},  {0, 0, 15},    {0, 0, -15},
          {0, 0, 31},  {0, 0, -31},  {0, 0, 365}, {0, 0, -366},  {0, 1, 0},
          {0, -1, 0},  {0, 18, 0},   {0, -13, 0}, {1, 0, 0},     {-1, 0, 0},
          {4, 0, 0},   {-4, 0, 0},   {1, 2, 15},  {2, 2, 1},     {-1, -2, -15},
          {1, 1, 0},   {0, 1, -1},   {0, -1, 1},  {3, -5, 100},  {-2, 7, -60}};
}

MirrorReport mirror_check(Strategy s, const Bounds& bounds, std::span<const Period> periods) {
  MirrorReport rep;
  rep.strategy = s;
  const std::int64_t lo = to_epoch_days(bounds.lb), hi = to_epoch_days(bounds.ub);
  for (const Period& p : periods) {
    smt::Session session;
    Encoder enc(session, s, bounds);
    DateRepr a = enc.date_var("a");
    DateRepr r = enc.add_period(a, p);
    std::vector<smt::Term> roots{enc.field(r, Field::Year), enc.field(r, Field::Month),
                                 enc.field(r, Field::Day)};
    for (const auto& t : session.assertions()) roots.push_back(t);
    smt::Tape tape(session, roots, Encoder::native_names(s, "a"));

    for (std::int64_t n = lo; n <= hi; ++n) {
      const Date d = from_epoch_days(n);
      const Date want = add_period(d, p);
      const auto& out = tape.run(Encoder::native_values(s, d));
      bool holds = true;
      for (std::size_t i = 3; i < out.size(); ++i) holds = holds && out[i] != 0;
      const Date got{out[0], out[1], out[2]};
      bool bad;
      if (bounds.contains(want)) {
        ++rep.checks;
        bad = !holds || got != want;
      } else {
        ++rep.out_of_bounds;
        bad = holds && valid(got) && bounds.contains(got);
      }
      if (!bad) continue;
      if (rep.failures++ < 5) {
        rep.examples.push_back(to_string(d) + " + " + to_string(p) + ": want " + to_string(want) + ", got " +
                               std::to_string(got.year) + "-" + std::to_string(got.month) + "-" +
                               std::to_string(got.day) + (holds ? "" : " (constraints fail)"));
      }
    }
  }
  return rep;
}

}  // namespace datesat
