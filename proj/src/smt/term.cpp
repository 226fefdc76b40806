#include "datesat/smt/term.hpp"

#include "datesat/calendar.hpp"

namespace datesat::smt {

namespace {

Term make(Op op, SortKind sort, std::vector<Term> args, std::int64_t value = 0) {
  auto n = std::make_shared<TermNode>();
  n->op = op;
  n->sort = sort;
  n->value = value;
  n->args = std::move(args);
  return Term(std::move(n));
}

void require(const Term& t, SortKind sort, const char* what) {
  if (!t) throw TermError(std::string(what) + ": null term");
  if (t.sort() != sort) throw TermError(std::string(what) + ": ill-sorted operand");
}

void require_int(const Term& a, const Term& b, const char* what) {
  require(a, SortKind::Int, what);
  require(b, SortKind::Int, what);
}

Term compare(Op op, const Term& a, const Term& b, const char* what) {
  require_int(a, b, what);
  if (a.is_const() && b.is_const()) {
    const auto x = a.const_value();
    const auto y = b.const_value();
    switch (op) {
      case Op::Lt: return bool_const(x < y);
      case Op::Le: return bool_const(x <= y);
      case Op::Gt: return bool_const(x > y);
      case Op::Ge: return bool_const(x >= y);
      default: break;
    }
  }
  if (a == b) return bool_const(op == Op::Le || op == Op::Ge);
  return make(op, SortKind::Bool, {a, b});
}

}  // namespace

std::int64_t smt_mod(std::int64_t m, std::int64_t n) { return floor_mod(m, n < 0 ? -n : n); }
std::int64_t smt_div(std::int64_t m, std::int64_t n) { return (m - smt_mod(m, n)) / n; }

Term int_const(std::int64_t v) { return make(Op::IntConst, SortKind::Int, {}, v); }

Term bool_const(bool v) {
  static const Term kTrue = make(Op::BoolConst, SortKind::Bool, {}, 1);
  static const Term kFalse = make(Op::BoolConst, SortKind::Bool, {}, 0);
  return v ? kTrue : kFalse;
}

Term var(std::string name, SortKind sort) {
  auto n = std::make_shared<TermNode>();
  n->op = Op::Var;
  n->sort = sort;
  n->name = std::move(name);
  return Term(std::move(n));
}

Term const_array_from_table(std::string name, std::vector<std::int64_t> values) {
  auto n = std::make_shared<TermNode>();
  n->op = Op::Table;
  n->sort = SortKind::IntArray;
  n->name = std::move(name);
  n->table = std::make_shared<const std::vector<std::int64_t>>(std::move(values));
  return Term(std::move(n));
}

Term add(const Term& a, const Term& b) {
  require_int(a, b, "add");
  if (a.is_const() && b.is_const()) return int_const(a.const_value() + b.const_value());
  if (a.is_const() && a.const_value() == 0) return b;
  if (b.is_const() && b.const_value() == 0) return a;
  return make(Op::Add, SortKind::Int, {a, b});
}

Term add(const Term& a, std::int64_t k) { return add(a, int_const(k)); }

Term sub(const Term& a, const Term& b) {
  require_int(a, b, "sub");
  if (a.is_const() && b.is_const()) return int_const(a.const_value() - b.const_value());
  if (b.is_const() && b.const_value() == 0) return a;
  if (a == b) return int_const(0);
  return make(Op::Sub, SortKind::Int, {a, b});
}

Term neg(const Term& a) {
  require(a, SortKind::Int, "neg");
  if (a.is_const()) return int_const(-a.const_value());
  return make(Op::Neg, SortKind::Int, {a});
}

Term mul_const(std::int64_t k, const Term& a) {
  require(a, SortKind::Int, "mul_const");
  if (a.is_const()) return int_const(k * a.const_value());
  if (k == 0) return int_const(0);
  if (k == 1) return a;
  return make(Op::MulConst, SortKind::Int, {a}, k);
}

Term div_const(const Term& a, std::int64_t n) {
  require(a, SortKind::Int, "div_const");
  if (n == 0) throw TermError("div_const: zero divisor");
  if (a.is_const()) return int_const(smt_div(a.const_value(), n));
  if (n == 1) return a;
  return make(Op::DivConst, SortKind::Int, {a}, n);
}

Term mod_const(const Term& a, std::int64_t n) {
  require(a, SortKind::Int, "mod_const");
  if (n == 0) throw TermError("mod_const: zero divisor");
  if (a.is_const()) return int_const(smt_mod(a.const_value(), n));
  if (n == 1 || n == -1) return int_const(0);
  return make(Op::ModConst, SortKind::Int, {a}, n);
}

Term ite(const Term& cond, const Term& then_t, const Term& else_t) {
  require(cond, SortKind::Bool, "ite condition");
  if (!then_t || !else_t || then_t.sort() != else_t.sort()) {
    throw TermError("ite: branches must have the same sort");
  }
  if (cond.is_true()) return then_t;
  if (cond.is_false()) return else_t;
  if (then_t == else_t) return then_t;
  if (then_t.is_const() && else_t.is_const() && then_t.const_value() == else_t.const_value()) {
    return then_t;
  }
  if (then_t.sort() == SortKind::Bool && then_t.is_const() && else_t.is_const()) {
    return then_t.is_true() ? cond : not_(cond);
  }
  return make(Op::Ite, then_t.sort(), {cond, then_t, else_t});
}

Term min(const Term& a, const Term& b) {
  require_int(a, b, "min");
  if (a.is_const() && b.is_const()) return int_const(std::min(a.const_value(), b.const_value()));
  return ite(le(a, b), a, b);
}

Term lt(const Term& a, const Term& b) { return compare(Op::Lt, a, b, "lt"); }
Term le(const Term& a, const Term& b) { return compare(Op::Le, a, b, "le"); }
Term gt(const Term& a, const Term& b) { return compare(Op::Gt, a, b, "gt"); }
Term ge(const Term& a, const Term& b) { return compare(Op::Ge, a, b, "ge"); }

Term eq(const Term& a, const Term& b) {
  if (!a || !b || a.sort() != b.sort() || a.sort() == SortKind::IntArray) {
    throw TermError("eq: operands must share a scalar sort");
  }
  if (a.is_const() && b.is_const()) return bool_const(a.const_value() == b.const_value());
  if (a == b) return bool_const(true);
  return make(Op::Eq, SortKind::Bool, {a, b});
}

Term neq(const Term& a, const Term& b) {
  if (!a || !b || a.sort() != b.sort() || a.sort() == SortKind::IntArray) {
    throw TermError("neq: operands must share a scalar sort");
  }
  if (a.is_const() && b.is_const()) return bool_const(a.const_value() != b.const_value());
  if (a == b) return bool_const(false);
  return make(Op::Distinct, SortKind::Bool, {a, b});
}

Term and_(const Term& a, const Term& b) {
  require(a, SortKind::Bool, "and");
  require(b, SortKind::Bool, "and");
  if (a.is_false() || b.is_false()) return bool_const(false);
  if (a.is_true()) return b;
  if (b.is_true()) return a;
  if (a == b) return a;
  return make(Op::And, SortKind::Bool, {a, b});
}

Term and_(const std::vector<Term>& terms) {
  std::vector<Term> kept;
  for (const auto& t : terms) {
    require(t, SortKind::Bool, "and");
    if (t.is_false()) return bool_const(false);
    if (!t.is_true()) kept.push_back(t);
  }
  if (kept.empty()) return bool_const(true);
  if (kept.size() == 1) return kept.front();
  return make(Op::And, SortKind::Bool, std::move(kept));
}

Term or_(const Term& a, const Term& b) {
  require(a, SortKind::Bool, "or");
  require(b, SortKind::Bool, "or");
  if (a.is_true() || b.is_true()) return bool_const(true);
  if (a.is_false()) return b;
  if (b.is_false()) return a;
  if (a == b) return a;
  return make(Op::Or, SortKind::Bool, {a, b});
}

Term or_(const std::vector<Term>& terms) {
  std::vector<Term> kept;
  for (const auto& t : terms) {
    require(t, SortKind::Bool, "or");
    if (t.is_true()) return bool_const(true);
    if (!t.is_false()) kept.push_back(t);
  }
  if (kept.empty()) return bool_const(false);
  if (kept.size() == 1) return kept.front();
  return make(Op::Or, SortKind::Bool, std::move(kept));
}

Term not_(const Term& a) {
  require(a, SortKind::Bool, "not");
  if (a.is_const()) return bool_const(!a.is_true());
  if (a.op() == Op::Not) return a.args()[0];
  return make(Op::Not, SortKind::Bool, {a});
}

Term implies(const Term& a, const Term& b) {
  require(a, SortKind::Bool, "implies");
  require(b, SortKind::Bool, "implies");
  if (a.is_false() || b.is_true()) return bool_const(true);
  if (a.is_true()) return b;
  if (b.is_false()) return not_(a);
  return make(Op::Implies, SortKind::Bool, {a, b});
}

Term select(const Term& array, const Term& index) {
  require(array, SortKind::IntArray, "select array");
  require(index, SortKind::Int, "select index");
  if (array.op() == Op::Table && index.is_const()) {
    const auto& values = *array.node().table;
    const auto i = index.const_value();
    if (i >= 0 && static_cast<std::size_t>(i) < values.size()) {
      return int_const(values[static_cast<std::size_t>(i)]);
    }
  }
  return make(Op::Select, SortKind::Int, {array, index});
}

}  // namespace datesat::smt
