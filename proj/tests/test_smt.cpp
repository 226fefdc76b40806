#include <random>

#include <gtest/gtest.h>

#include "datesat/smt/session.hpp"
#include "datesat/smt/solver.hpp"

using namespace datesat::smt;

namespace {

const SolverConfig kSolver = SolverConfig::from_env();

TEST(Term, SmtlibDivMod) {
  EXPECT_EQ(smt_mod(-1, 12), 11);
  EXPECT_EQ(smt_div(-1, 12), -1);
  EXPECT_EQ(smt_div(1460, 1461), 0);
  EXPECT_EQ(smt_div(1461, 1461), 1);
  EXPECT_EQ(smt_div(-1, 1461), -1);
  EXPECT_EQ(smt_mod(-1, 1461), 1460);
  EXPECT_EQ(smt_div(7, -2), -3);
  EXPECT_EQ(smt_mod(7, -2), 1);
  EXPECT_EQ(smt_div(-7, -2), 4);
  EXPECT_EQ(smt_mod(-7, -2), 1);
}

TEST(Term, ConstantFolding) {
  EXPECT_EQ(mod_const(int_const(-1), 12).const_value(), 11);
  EXPECT_EQ(div_const(int_const(1460), 1461).const_value(), 0);
  EXPECT_EQ(div_const(int_const(1461), 1461).const_value(), 1);
  EXPECT_EQ(ite(bool_const(true), int_const(1), int_const(2)).const_value(), 1);
  EXPECT_EQ(ite(bool_const(false), int_const(1), int_const(2)).const_value(), 2);
  EXPECT_TRUE(and_(bool_const(true), bool_const(true)).is_true());
  EXPECT_THROW(div_const(int_const(1), 0), TermError);
  EXPECT_THROW(add(bool_const(true), int_const(1)), TermError);
}

TEST(Evaluator, Basics) {
  Session s;
  const Term x = s.declare("x", SortKind::Int);
  const Term y = s.define("y", mod_const(x, 12));
  Evaluator ev(s, [](const std::string& n) -> std::optional<std::int64_t> {
    if (n == "x") return -1;
    return std::nullopt;
  });
  EXPECT_EQ(ev.eval(y), 11);
  EXPECT_EQ(ev.eval(ite(lt(x, int_const(0)), int_const(5), int_const(6))), 5);
  EXPECT_TRUE(ev.holds(eq(div_const(x, 1461), int_const(-1))));
}

TEST(Session, NamesAndDump) {
  Session s;
  const Term x = s.declare("x", SortKind::Int);
  EXPECT_THROW(s.declare("x", SortKind::Int), TermError);
  const Term a = s.fresh("t", SortKind::Int);
  const Term b = s.fresh("t", SortKind::Int);
  EXPECT_NE(a.name(), b.name());
  s.add(gt(x, a));
  const std::string d1 = s.dump();
  const std::string d2 = s.dump();
  EXPECT_EQ(d1, d2);
  EXPECT_NE(d1.find("(set-logic QF_LIA)"), std::string::npos);
  EXPECT_NE(d1.find("(check-sat)"), std::string::npos);
  EXPECT_EQ(s.logic(), "QF_LIA");

  Session t;
  const Term i = t.declare("i", SortKind::Int);
  const Term tab = const_array_from_table("dim", {31, 30, 31});
  t.add(eq(select(tab, i), int_const(30)));
  EXPECT_EQ(t.logic(), "QF_ALIA");
  Session u(SessionOptions{TableMode::Ite, false});
  const Term j = u.declare("j", SortKind::Int);
  u.add(eq(select(tab, j), int_const(30)));
  EXPECT_EQ(u.logic(), "QF_LIA");
}

TEST(Solver, ParseModel) {
  const RawModel m = parse_model(
      "(model\n  (define-fun x () Int\n    (- 42))\n  (define-fun b () Bool true)\n"
      "  (define-fun |odd name| () Int 7)\n  (define-fun arr () (Array Int Int) ((as const (Array Int Int)) 0))\n)");
  EXPECT_EQ(m.get("x"), -42);
  EXPECT_EQ(m.get("b"), 1);
  EXPECT_EQ(m.get("odd name"), 7);
  EXPECT_FALSE(m.get("arr"));
  EXPECT_EQ(parse_model("((define-fun y () Int 3))").get("y"), 3);
}

TEST(Solver, SatWithModel) {
  Session s;
  const Term x = s.declare("x", SortKind::Int);
  s.add(and_(gt(x, int_const(0)), lt(x, int_const(2))));
  SolverSession solver(s, kSolver);
  ASSERT_EQ(solver.check(10000), Status::Sat);
  EXPECT_EQ(solver.model().get("x"), 1);
}

TEST(Solver, Unsat) {
  Session s;
  const Term x = s.declare("x", SortKind::Int);
  s.add(and_(gt(x, int_const(0)), lt(x, int_const(1))));
  SolverSession solver(s, kSolver);
  EXPECT_EQ(solver.check(10000), Status::Unsat);
  EXPECT_THROW(solver.model(), SolverError);
}

TEST(Solver, ZeroTimeoutIsUnknown) {
  Session s;
  s.declare("x", SortKind::Int);
  SolverSession solver(s, kSolver);
  EXPECT_EQ(solver.check(0), Status::Unknown);
}

TEST(Solver, MissingBackend) {
  SolverConfig bad;
  bad.executable = "/nonexistent/solver";
  EXPECT_THROW(run_script("(check-sat)\n", 1000, bad), SolverError);
}

TEST(Solver, TableSelect) {
  for (TableMode mode : {TableMode::Array, TableMode::Ite}) {
    Session s(SessionOptions{mode, false});
    const Term i = s.declare("i", SortKind::Int);
    const Term tab = const_array_from_table("dim", {31, 28, 31, 30});
    s.add(and_({ge(i, int_const(0)), lt(i, int_const(4)), eq(select(tab, i), int_const(28))}));
    SolverSession solver(s, kSolver);
    ASSERT_EQ(solver.check(10000), Status::Sat);
    EXPECT_EQ(solver.model().get("i"), 1);
  }
}

// Random integer terms: the backend's value of each term, pinned through a
// result variable, must equal the evaluator's.
class RandomTerms {
 public:
  RandomTerms(std::uint64_t seed, std::vector<Term> leaves) : rng_(seed), leaves_(std::move(leaves)) {}

  Term int_term(int depth) {
    if (depth == 0 || pick(4) == 0) {
      if (pick(3) == 0) return int_const(pick_signed(50));
      return leaves_[pick(leaves_.size())];
    }
    switch (pick(8)) {
      case 0: return add(int_term(depth - 1), int_term(depth - 1));
      case 1: return sub(int_term(depth - 1), int_term(depth - 1));
      case 2: return neg(int_term(depth - 1));
      case 3: return mul_const(pick_signed(7), int_term(depth - 1));
      case 4: return div_const(int_term(depth - 1), nonzero());
      case 5: return mod_const(int_term(depth - 1), nonzero());
      case 6: return select(table_, mod_const(int_term(depth - 1), 5));
      default: return ite(bool_term(depth - 1), int_term(depth - 1), int_term(depth - 1));
    }
  }

  Term bool_term(int depth) {
    if (depth == 0) return lt(int_term(0), int_term(0));
    switch (pick(7)) {
      case 0: return le(int_term(depth - 1), int_term(depth - 1));
      case 1: return eq(int_term(depth - 1), int_term(depth - 1));
      case 2: return neq(int_term(depth - 1), int_term(depth - 1));
      case 3: return and_(bool_term(depth - 1), bool_term(depth - 1));
      case 4: return or_(bool_term(depth - 1), bool_term(depth - 1));
      case 5: return implies(bool_term(depth - 1), bool_term(depth - 1));
      default: return not_(bool_term(depth - 1));
    }
  }

 private:
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  std::int64_t pick_signed(std::int64_t m) { return std::uniform_int_distribution<std::int64_t>(-m, m)(rng_); }
  std::int64_t nonzero() {
    const std::int64_t v = static_cast<std::int64_t>(pick(12)) + 1;
    return pick(4) == 0 ? -v : v;
  }

  std::mt19937_64 rng_;
  std::vector<Term> leaves_;
  Term table_ = const_array_from_table("tab", {3, -1, 4, 1, -5});
};

TEST(Solver, RandomTermsAgreeWithEvaluator) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> input(-3000, 3000);
  for (int round = 0; round < 12; ++round) {
    for (TableMode mode : {TableMode::Array, TableMode::Ite}) {
      Session s(SessionOptions{mode, round % 3 == 0});
      std::vector<Term> leaves;
      std::map<std::string, std::int64_t> values;
      for (const char* n : {"a", "b", "c"}) {
        leaves.push_back(s.declare(n, SortKind::Int));
        values[n] = input(rng);
        s.add(eq(leaves.back(), int_const(values[n])));
      }
      RandomTerms gen(rng(), leaves);
      std::vector<std::pair<Term, Term>> results;
      for (int k = 0; k < 25; ++k) {
        const Term r = s.declare("r" + std::to_string(k), SortKind::Int);
        const Term t = gen.int_term(4);
        s.add(eq(r, t));
        results.emplace_back(r, t);
      }
      SolverSession solver(s, kSolver);
      ASSERT_EQ(solver.check(20000), Status::Sat);
      Evaluator ev(s, [&](const std::string& n) -> std::optional<std::int64_t> {
        auto it = values.find(n);
        if (it == values.end()) return std::nullopt;
        return it->second;
      });
      for (const auto& [r, t] : results) {
        ASSERT_EQ(solver.model().get(r.name()), ev.eval(t)) << "round " << round;
      }
    }
  }
}

TEST(Tape, MatchesEvaluator) {
  Session s;
  std::vector<Term> leaves{s.declare("a", SortKind::Int), s.declare("b", SortKind::Int)};
  RandomTerms gen(17, leaves);
  std::vector<Term> roots;
  for (int k = 0; k < 40; ++k) roots.push_back(gen.int_term(5));
  for (int k = 0; k < 10; ++k) roots.push_back(gen.bool_term(3));
  Tape tape(s, roots, {"a", "b"});
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::int64_t> input(-100000, 100000);
  for (int i = 0; i < 2000; ++i) {
    const std::int64_t a = input(rng), b = input(rng);
    const auto& out = tape.run({a, b});
    Evaluator ev(s, [&](const std::string& n) -> std::optional<std::int64_t> {
      if (n == "a") return a;
      if (n == "b") return b;
      return std::nullopt;
    });
    for (std::size_t k = 0; k < roots.size(); ++k) ASSERT_EQ(out[k], ev.eval(roots[k])) << k;
  }
}

}  // namespace
