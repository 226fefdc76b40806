#include <algorithm>
#include <fstream>
#include <random>
#include <regex>
#include <sstream>

#include <gtest/gtest.h>

#include "chrono_oracle.hpp"
#include "datesat/encoder.hpp"
#include "datesat/mirror.hpp"
#include "datesat/solve.hpp"
#include "datesat/validator.hpp"

using namespace datesat;

namespace {

const std::string kData = DATESAT_TEST_DATA;

Problem problem(std::vector<std::string> decls, std::vector<std::string> constraints) {
  nlohmann::json doc;
  doc["declarations"] = decls;
  doc["constraints"] = constraints;
  return load_problem(doc);
}

SolveResult run(const Problem& p, Strategy s, int timeout_ms = 20000) {
  SolveOptions o;
  o.strategy = s;
  o.timeout_ms = timeout_ms;
  return solve(p, o);
}

class PerStrategy : public ::testing::TestWithParam<Strategy> {};

std::string strategy_name(const ::testing::TestParamInfo<Strategy>& info) {
  std::string n(to_string(info.param));
  std::replace(n.begin(), n.end(), '-', '_');
  return n;
}

// Each arithmetic example pinned by equalities: the equality is SAT with the
// expected date, and its negation is UNSAT.
struct ArithCase {
  const char* start;
  const char* expr;
  Date want;
};

const ArithCase kArith[] = {
    {"Date(2017, 12, 30)", "a + Period(2, 2, 1)", {2020, 3, 1}},
    {"Date(2020, 1, 30)", "a + Period(0, 1, 0) + Period(0, 0, 1)", {2020, 3, 1}},
    {"Date(2020, 1, 30)", "a + Period(0, 0, 1) + Period(0, 1, 0)", {2020, 2, 29}},
    {"Date(2020, 2, 29)", "a + Period(1, 0, 0) + Period(0, 1, 0)", {2021, 3, 28}},
    {"Date(2020, 2, 29)", "a + Period(1, 1, 0)", {2021, 3, 29}},
    {"Date(2000, 2, 29)", "a + Period(1, 0, 0)", {2001, 2, 28}},
    {"Date(2020, 3, 1)", "a + Period(0, 0, -1)", {2020, 2, 29}},
    {"Date(2000, 3, 1)", "a + Period(0, 0, 61)", {2000, 5, 1}},
    {"Date(2000, 3, 1)", "a + Period(0, 0, 1461)", {2004, 3, 1}},
    {"Date(2017, 12, 30)", "a + Period(0, 26, 0)", {2020, 2, 29}},
    {"Date(2023, 7, 4)", "a + Period(0, 0, 0)", {2023, 7, 4}},
    {"Date(2100, 1, 31)", "a + Period(0, 1, 0)", {2100, 2, 28}},
};

TEST_P(PerStrategy, ArithmeticExamples) {
  for (const ArithCase& c : kArith) {
    const std::string lit = "Date(" + std::to_string(c.want.year) + ", " + std::to_string(c.want.month) + ", " +
                            std::to_string(c.want.day) + ")";
    const Problem pos = problem({"a, b: date"}, {std::string("a == ") + c.start, std::string("b == ") + c.expr});
    const SolveResult r = run(pos, GetParam());
    ASSERT_EQ(r.status, smt::Status::Sat) << c.expr;
    EXPECT_EQ(std::get<Date>(r.model->at("b")), c.want) << c.expr;
    const Problem neg = problem({"a: date"}, {std::string("a == ") + c.start, std::string(c.expr) + " != " + lit});
    EXPECT_EQ(run(neg, GetParam()).status, smt::Status::Unsat) << c.expr;
  }
}

TEST_P(PerStrategy, NonCommutativeEqualityIsUnsat) {
  const Problem p = problem({"a: date"}, {"a == Date(2020, 1, 30)",
                                          "a + Period(0, 1, 0) + Period(0, 0, 1) == a + Period(0, 0, 1) + Period(0, 1, 0)"});
  EXPECT_EQ(run(p, GetParam()).status, smt::Status::Unsat);
}

TEST_P(PerStrategy, ContradictoryEqualities) {
  const Problem p = problem({"x: date"}, {"x == Date(2023, 1, 1) && x == Date(2024, 1, 1)"});
  EXPECT_EQ(run(p, GetParam()).status, smt::Status::Unsat);
}

TEST_P(PerStrategy, CompareConstants) {
  EXPECT_EQ(run(problem({}, {"Date(2020, 1, 30) > Date(2020, 1, 31)"}), GetParam()).status, smt::Status::Unsat);
  const Problem eq = problem({"a, b: date"}, {"a == b"});
  const SolveResult r = run(eq, GetParam());
  ASSERT_EQ(r.status, smt::Status::Sat);
  EXPECT_EQ(r.model->at("a"), r.model->at("b"));
}

TEST_P(PerStrategy, DayRoundTrip) {
  EXPECT_EQ(run(problem({"a: date"}, {"a + Period(0, 0, 7) + Period(0, 0, -7) != a"}), GetParam()).status,
            smt::Status::Unsat);
  EXPECT_EQ(run(problem({"a: date"}, {"a + Period(0, 0, 7) + Period(0, 0, -7) == a"}), GetParam()).status,
            smt::Status::Sat);
}

TEST_P(PerStrategy, BoundsOnIntermediates) {
  // The upper bound itself is reachable, one day past it is not.
  EXPECT_EQ(run(problem({"a: date"}, {"a + Period(0, 0, 1) > a"}), GetParam()).status, smt::Status::Sat);
  EXPECT_EQ(run(problem({"a: date"}, {"a == Date(2100, 2, 28)", "a + Period(0, 0, 1) > a"}), GetParam()).status,
            smt::Status::Unsat);
  EXPECT_EQ(run(problem({"a: date"}, {"a == Date(1900, 3, 1)", "a + Period(0, -1, 0) < a"}), GetParam()).status,
            smt::Status::Unsat);
  EXPECT_EQ(run(problem({"a: date"}, {"a < Date(1900, 3, 1)"}), GetParam()).status, smt::Status::Unsat);
}

TEST_P(PerStrategy, FieldsParticipate) {
  const Problem p = problem({"x: date", "n: int"}, {"x.year == 2024", "x.month == 2", "x.day == n", "n > 28"});
  const SolveResult r = run(p, GetParam());
  ASSERT_EQ(r.status, smt::Status::Sat);
  EXPECT_EQ(std::get<Date>(r.model->at("x")), (Date{2024, 2, 29}));
  EXPECT_EQ(std::get<std::int64_t>(r.model->at("n")), 29);
  EXPECT_EQ(run(problem({"x: date"}, {"x.year == 2023", "x.month == 2", "x.day == 29"}), GetParam()).status,
            smt::Status::Unsat);
}

// Comparison terms against the oracle over random date pairs.
TEST_P(PerStrategy, CompareMirror) {
  const Strategy s = GetParam();
  smt::Session session;
  Encoder enc(session, s, Bounds{});
  DateRepr a = enc.date_var("a"), b = enc.date_var("b");
  const CmpOp ops[] = {CmpOp::Lt, CmpOp::Le, CmpOp::Gt, CmpOp::Ge, CmpOp::Eq, CmpOp::Ne};
  std::vector<smt::Term> roots;
  for (CmpOp op : ops) roots.push_back(enc.compare(a, b, op));
  std::vector<std::string> inputs = Encoder::native_names(s, "a");
  for (const auto& n : Encoder::native_names(s, "b")) inputs.push_back(n);
  smt::Tape tape(session, roots, inputs);

  std::mt19937_64 rng(13);
  const std::int64_t lo = to_epoch_days(kRegularLowerBound), hi = to_epoch_days(kRegularUpperBound);
  std::uniform_int_distribution<std::int64_t> day(lo, hi), near(-40, 40);
  for (int i = 0; i < 1000; ++i) {
    const std::int64_t n = day(rng);
    const Date x = from_epoch_days(n);
    const Date y = from_epoch_days(i % 2 ? std::clamp(n + near(rng), lo, hi) : day(rng));
    std::vector<std::int64_t> in = Encoder::native_values(s, x);
    for (auto v : Encoder::native_values(s, y)) in.push_back(v);
    const auto& out = tape.run(in);
    const auto cx = chrono_oracle::epoch_days(x), cy = chrono_oracle::epoch_days(y);
    const bool want[] = {cx < cy, cx <= cy, cx > cy, cx >= cy, cx == cy, cx != cy};
    for (std::size_t k = 0; k < 6; ++k) ASSERT_EQ(out[k] != 0, want[k]) << to_string(x) << " vs " << to_string(y);
  }
}

TEST_P(PerStrategy, ExhaustiveMirror) {
  const std::vector<Period> periods = mirror_periods();
  ASSERT_EQ(periods.size(), 25u);
  const MirrorReport rep = mirror_check(GetParam(), Bounds{}, periods);
  EXPECT_EQ(rep.checks + rep.out_of_bounds, 25 * 73049);
  EXPECT_TRUE(rep.ok()) << rep.failures << " failures, first: " << (rep.examples.empty() ? "" : rep.examples[0]);
}

TEST_P(PerStrategy, RegressionSuite) {
  const auto expected = nlohmann::json::parse(std::ifstream(kData + "/regression_expected.json"));
  for (const auto& [name, status] : expected.items()) {
    const Problem p = load_problem_file(kData + "/regression/" + name);
    const SolveResult r = run(p, GetParam(), 10000);
    if (r.status == smt::Status::Unknown) continue;
    EXPECT_EQ(std::string(smt::to_string(r.status)), status.get<std::string>()) << name;
    if (r.status == smt::Status::Sat) {
      const ValidationResult v = validate_model(p, *r.model, Bounds{});
      EXPECT_TRUE(v.ok()) << name;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(All, PerStrategy, ::testing::ValuesIn(kAllStrategies), strategy_name);

TEST(Encoder, WideBoundsMirror) {
  Bounds wide{{1703, 1, 1}, {2403, 12, 31}};
  const std::vector<Period> periods{{0, 0, 1}, {0, 0, -366}, {0, 1, 0}, {1, 0, 0}, {-1, -2, -15}, {3, -5, 100}};
  for (Strategy s : {Strategy::Epoch, Strategy::Hybrid, Strategy::AlphaBeta}) {
    const MirrorReport rep = mirror_check(s, wide, periods);
    EXPECT_TRUE(rep.ok()) << to_string(s) << ": " << (rep.examples.empty() ? "" : rep.examples[0]);
  }
  EXPECT_THROW(
      {
        smt::Session session;
        Encoder enc(session, Strategy::AlphaBetaTable, wide);
      },
      EncodingError);
}

TEST(Encoder, StrategyNames) {
  for (Strategy s : kAllStrategies) EXPECT_EQ(parse_strategy(to_string(s)), s);
  EXPECT_FALSE(parse_strategy("bitvector"));
}

TEST(Encoder, HybridFlags) {
  smt::Session session;
  Encoder enc(session, Strategy::Hybrid, Bounds{});
  DateRepr a = enc.date_var("a");
  EXPECT_TRUE(a.ymd_flag);
  EXPECT_FALSE(a.delta_flag);
  DateRepr m = enc.add_period(a, {0, 1, 0});
  EXPECT_TRUE(m.ymd_flag);
  EXPECT_FALSE(m.delta_flag);
  DateRepr d = enc.add_period(a, {0, 0, 7});
  EXPECT_FALSE(d.ymd_flag);
  EXPECT_TRUE(d.delta_flag);
  EXPECT_TRUE(a.delta_flag);
  DateRepr md = enc.add_period(a, {0, 1, 7});
  EXPECT_TRUE(md.ymd_flag || md.delta_flag);
}

// A session asserting `native == values` for variable "a", solved and decoded.
Assignment solve_native(Strategy s, const std::vector<std::int64_t>& values, const std::string& extra = "") {
  std::vector<std::string> cs{"a == a"};
  if (!extra.empty()) cs.push_back(extra);
  EncodedInstance inst = encode(problem({"a: date"}, cs), s, Bounds{});
  const auto names = Encoder::native_names(s, "a");
  for (std::size_t i = 0; i < names.size(); ++i) {
    inst.session->add(smt::eq(inst.session->variable(names[i]), smt::int_const(values[i])));
  }
  smt::SolverSession solver(*inst.session);
  if (solver.check(20000) != smt::Status::Sat) return {};
  return decode_model(inst, solver.model());
}

TEST(Encoder, NativeVariables) {
  EXPECT_EQ(std::get<Date>(solve_native(Strategy::AlphaBeta, {2, 5}).at("a")), (Date{2000, 5, 6}));
  EXPECT_EQ(std::get<Date>(solve_native(Strategy::AlphaBetaTable, {2, 5}).at("a")), (Date{2000, 5, 6}));
  EXPECT_EQ(std::get<Date>(solve_native(Strategy::Epoch, {0}).at("a")), (Date{2000, 3, 1}));
  EXPECT_EQ(std::get<Date>(solve_native(Strategy::AlphaBeta, {-3, 30}).at("a")), (Date{1999, 12, 31}));
  EXPECT_TRUE(solve_native(Strategy::Naive, {2024, 2, 30}).empty());
  EXPECT_TRUE(solve_native(Strategy::AlphaBeta, {0, 31}).empty());
  EXPECT_EQ(Encoder::native_values(Strategy::AlphaBeta, {2000, 5, 6}), (std::vector<std::int64_t>{2, 5}));
  EXPECT_EQ(Encoder::native_values(Strategy::Epoch, {2004, 3, 1}), (std::vector<std::int64_t>{1461}));
}

TEST(Encoder, FieldTermsOnNativeValues) {
  struct Case {
    Strategy s;
    std::vector<std::int64_t> native;
    Date want;
  };
  const Case cases[] = {{Strategy::Epoch, {0}, {2000, 3, 1}},
                        {Strategy::AlphaBeta, {-3, 30}, {1999, 12, 31}},
                        {Strategy::AlphaBetaTable, {-3, 30}, {1999, 12, 31}},
                        {Strategy::Naive, {2001, 2, 28}, {2001, 2, 28}}};
  for (const Case& c : cases) {
    smt::Session session;
    Encoder enc(session, c.s, Bounds{});
    DateRepr a = enc.date_var("a");
    std::vector<smt::Term> roots{enc.field(a, Field::Year), enc.field(a, Field::Month), enc.field(a, Field::Day)};
    smt::Tape tape(session, roots, Encoder::native_names(c.s, "a"));
    const auto& out = tape.run(c.native);
    EXPECT_EQ((Date{out[0], out[1], out[2]}), c.want) << to_string(c.s);
  }
}

TEST(Encoder, DecodeModel) {
  EncodedInstance epoch = encode(problem({"a: date"}, {"a == a"}), Strategy::Epoch, Bounds{});
  smt::RawModel raw;
  raw.values[Encoder::native_names(Strategy::Epoch, "a")[0]] = 0;
  EXPECT_EQ(std::get<Date>(decode_model(epoch, raw).at("a")), (Date{2000, 3, 1}));
  raw.values[Encoder::native_names(Strategy::Epoch, "a")[0]] = 100000;
  EXPECT_THROW(decode_model(epoch, raw), DecodeError);

  EncodedInstance ab = encode(problem({"a: date"}, {"a == a"}), Strategy::AlphaBeta, Bounds{});
  smt::RawModel raw_ab;
  const auto names = Encoder::native_names(Strategy::AlphaBeta, "a");
  raw_ab.values[names[0]] = 2;
  raw_ab.values[names[1]] = 5;
  EXPECT_EQ(std::get<Date>(decode_model(ab, raw_ab).at("a")), (Date{2000, 5, 6}));
  raw_ab.values[names[1]] = 31;
  EXPECT_THROW(decode_model(ab, raw_ab), DecodeError);

  // A Hybrid date whose triple is stale decodes from its day count.
  EncodedInstance hy = encode(problem({"a: date"}, {"a == a"}), Strategy::Hybrid, Bounds{});
  DateRepr stale;
  stale.y = smt::var("sy", smt::SortKind::Int);
  stale.m = smt::var("sm", smt::SortKind::Int);
  stale.d = smt::var("sd", smt::SortKind::Int);
  stale.delta = smt::var("sdelta", smt::SortKind::Int);
  stale.delta_flag = true;
  hy.dates["a"] = stale;
  smt::RawModel raw_hy;
  raw_hy.values = {{"sy", 1999}, {"sm", 2}, {"sd", 31}, {"sdelta", 1461}};
  EXPECT_EQ(std::get<Date>(decode_model(hy, raw_hy).at("a")), (Date{2004, 3, 1}));
}

TEST(Encoder, InternalVariablesHidden) {
  const Problem p = problem({"n: int", "x: date"}, {"n == 2024", "x == Date(n, 1, 1)"});
  for (Strategy s : kAllStrategies) {
    const SolveResult r = run(p, s);
    ASSERT_EQ(r.status, smt::Status::Sat) << to_string(s);
    EXPECT_EQ(r.model->size(), 2u);
    EXPECT_EQ(std::get<Date>(r.model->at("x")), (Date{2024, 1, 1}));
  }
}

TEST(Encoder, MonthTablesInScript) {
  const MonthTables& t = build_month_tables();
  EncodedInstance inst = encode(problem({"a: date"}, {"a + Period(0, 1, 20) > a"}), Strategy::AlphaBetaTable, Bounds{});
  const std::string script = inst.session->dump();
  EXPECT_NE(script.find("QF_ALIA"), std::string::npos);
  int dim_hits = 0, dbm_hits = 0;
  std::istringstream in(script);
  std::string line;
  while (std::getline(in, line)) {
    std::smatch m;
    static const std::regex pat(R"(^\(assert \(= \(select (\S+) (\d+)\) (\d+)\)\)$)");
    if (!std::regex_match(line, m, pat)) continue;
    const auto i = std::stoul(m[2]);
    const auto v = std::stoll(m[3]);
    ASSERT_LT(i, 48u);
    if (m[1].str().find("dim") != std::string::npos) {
      EXPECT_EQ(v, t.dim48[i]) << line;
      ++dim_hits;
    } else if (m[1].str().find("dbm") != std::string::npos) {
      EXPECT_EQ(v, t.dbm48[i]) << line;
      ++dbm_hits;
    }
  }
  EXPECT_EQ(dim_hits, 48);
  EXPECT_EQ(dbm_hits, 48);

  EncodedInstance ite = encode(problem({"a: date"}, {"a + Period(0, 1, 0) > a"}), Strategy::AlphaBetaTable, Bounds{},
                               EncodeOptions{smt::TableMode::Ite, false});
  EXPECT_NE(ite.session->dump().find("QF_LIA"), std::string::npos);
}

TEST(Encoder, NaiveScriptIsLinear) {
  EncodedInstance inst = encode(problem({"a, b: date"}, {"a + Period(1, 2, 15) < b"}), Strategy::Naive, Bounds{});
  EXPECT_NE(inst.session->dump().find("(set-logic QF_LIA)"), std::string::npos);
  EncodedInstance nodiv = encode(problem({"a, b: date"}, {"a + Period(1, 2, 15) < b"}), Strategy::Epoch, Bounds{},
                                 EncodeOptions{smt::TableMode::Array, true});
  const std::string s = nodiv.session->dump();
  EXPECT_EQ(s.find("(div "), std::string::npos);
  EXPECT_EQ(s.find("(mod "), std::string::npos);
}

}  // namespace
