#include "datesat/expr.hpp"

#include <stdexcept>

namespace datesat {

std::string_view to_string(Sort s) {
  switch (s) {
    case Sort::Bool: return "bool";
    case Sort::Int: return "int";
    case Sort::Date: return "date";
    case Sort::Period: return "period";
  }
  return "?";
}

std::string_view to_string(CmpOp op) {
  switch (op) {
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
    case CmpOp::Eq: return "==";
    case CmpOp::Ne: return "!=";
  }
  return "?";
}

std::string_view to_string(Field f) {
  switch (f) {
    case Field::Year: return "year";
    case Field::Month: return "month";
    case Field::Day: return "day";
  }
  return "?";
}

ExprPtr Expr::make(Expr e) { return std::shared_ptr<const Expr>(new Expr(std::move(e))); }

Expr Expr::node(ExprKind kind, Sort sort, std::vector<ExprPtr> args) {
  Expr e(kind, sort);
  e.args_ = std::move(args);
  return e;
}

ExprPtr Expr::bool_const(bool v) {
  Expr e(ExprKind::BoolConst, Sort::Bool);
  e.value_ = v ? 1 : 0;
  return make(std::move(e));
}

ExprPtr Expr::bool_var(std::string name) {
  Expr e(ExprKind::BoolVar, Sort::Bool);
  e.name_ = std::move(name);
  return make(std::move(e));
}

ExprPtr Expr::not_(ExprPtr a) { Expr e = node(ExprKind::Not, Sort::Bool, {std::move(a)}); return make(std::move(e)); }
ExprPtr Expr::and_(ExprPtr a, ExprPtr b) { Expr e = node(ExprKind::And, Sort::Bool, {std::move(a), std::move(b)}); return make(std::move(e)); }
ExprPtr Expr::or_(ExprPtr a, ExprPtr b) { Expr e = node(ExprKind::Or, Sort::Bool, {std::move(a), std::move(b)}); return make(std::move(e)); }
ExprPtr Expr::implies(ExprPtr a, ExprPtr b) { Expr e = node(ExprKind::Implies, Sort::Bool, {std::move(a), std::move(b)}); return make(std::move(e)); }
ExprPtr Expr::iff(ExprPtr a, ExprPtr b) { Expr e = node(ExprKind::Iff, Sort::Bool, {std::move(a), std::move(b)}); return make(std::move(e)); }
ExprPtr Expr::xor_(ExprPtr a, ExprPtr b) { Expr e = node(ExprKind::Xor, Sort::Bool, {std::move(a), std::move(b)}); return make(std::move(e)); }

ExprPtr Expr::int_const(std::int64_t v) {
  Expr e(ExprKind::IntConst, Sort::Int);
  e.value_ = v;
  return make(std::move(e));
}

ExprPtr Expr::int_var(std::string name) {
  Expr e(ExprKind::IntVar, Sort::Int);
  e.name_ = std::move(name);
  return make(std::move(e));
}

ExprPtr Expr::neg(ExprPtr a) { Expr e = node(ExprKind::Neg, Sort::Int, {std::move(a)}); return make(std::move(e)); }
ExprPtr Expr::int_add(ExprPtr a, ExprPtr b) { Expr e = node(ExprKind::IntAdd, Sort::Int, {std::move(a), std::move(b)}); return make(std::move(e)); }
ExprPtr Expr::int_sub(ExprPtr a, ExprPtr b) { Expr e = node(ExprKind::IntSub, Sort::Int, {std::move(a), std::move(b)}); return make(std::move(e)); }

ExprPtr Expr::int_mul_const(std::int64_t k, ExprPtr a) {
  Expr e = node(ExprKind::IntMulConst, Sort::Int, {std::move(a)});
  e.value_ = k;
  return make(std::move(e));
}

ExprPtr Expr::date_field(ExprPtr date, Field f) {
  Expr e = node(ExprKind::DateField, Sort::Int, {std::move(date)});
  e.field_ = f;
  return make(std::move(e));
}

ExprPtr Expr::int_cmp(CmpOp op, ExprPtr a, ExprPtr b) {
  Expr e = node(ExprKind::IntCmp, Sort::Bool, {std::move(a), std::move(b)});
  e.op_ = op;
  return make(std::move(e));
}

ExprPtr Expr::date_cmp(CmpOp op, ExprPtr a, ExprPtr b) {
  Expr e = node(ExprKind::DateCmp, Sort::Bool, {std::move(a), std::move(b)});
  e.op_ = op;
  return make(std::move(e));
}

ExprPtr Expr::date_var(std::string name) {
  Expr e(ExprKind::DateVar, Sort::Date);
  e.name_ = std::move(name);
  return make(std::move(e));
}

ExprPtr Expr::date_lit(ExprPtr y, ExprPtr m, ExprPtr d) {
  Expr e = node(ExprKind::DateLit, Sort::Date, {std::move(y), std::move(m), std::move(d)});
  return make(std::move(e));
}

ExprPtr Expr::date_lit(const Date& d) {
  return date_lit(int_const(d.year), int_const(d.month), int_const(d.day));
}

ExprPtr Expr::date_add_period(ExprPtr date, ExprPtr period) {
  Expr e = node(ExprKind::DateAddPeriod, Sort::Date, {std::move(date), std::move(period)});
  return make(std::move(e));
}

ExprPtr Expr::date_sub_period(ExprPtr date, ExprPtr period) {
  Expr e = node(ExprKind::DateSubPeriod, Sort::Date, {std::move(date), std::move(period)});
  return make(std::move(e));
}

ExprPtr Expr::period_lit(const Period& p) {
  Expr e(ExprKind::PeriodLit, Sort::Period);
  e.period_ = p;
  return make(std::move(e));
}

ExprPtr Expr::period_add(ExprPtr a, ExprPtr b) { Expr e = node(ExprKind::PeriodAdd, Sort::Period, {std::move(a), std::move(b)}); return make(std::move(e)); }
ExprPtr Expr::period_sub(ExprPtr a, ExprPtr b) { Expr e = node(ExprKind::PeriodSub, Sort::Period, {std::move(a), std::move(b)}); return make(std::move(e)); }

ExprPtr Expr::period_scale(std::int64_t k, ExprPtr p) {
  Expr e = node(ExprKind::PeriodScale, Sort::Period, {std::move(p)});
  e.value_ = k;
  return make(std::move(e));
}

ExprPtr Expr::with_args(std::vector<ExprPtr> args) const {
  Expr copy = *this;
  copy.args_ = std::move(args);
  return make(std::move(copy));
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (&a == &b) return true;
  if (a.kind() != b.kind() || a.sort() != b.sort() || a.name() != b.name() ||
      a.value() != b.value() || a.op() != b.op() || a.field() != b.field() ||
      a.period() != b.period() || a.args().size() != b.args().size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.args().size(); ++i) {
    if (!structurally_equal(*a.arg(i), *b.arg(i))) return false;
  }
  return true;
}

bool is_ground_int(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::IntConst: return true;
    case ExprKind::Neg:
    case ExprKind::IntMulConst: return is_ground_int(*e.arg(0));
    case ExprKind::IntAdd:
    case ExprKind::IntSub: return is_ground_int(*e.arg(0)) && is_ground_int(*e.arg(1));
    default: return false;
  }
}

std::int64_t eval_ground_int(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::IntConst: return e.value();
    case ExprKind::Neg: return -eval_ground_int(*e.arg(0));
    case ExprKind::IntMulConst: return e.value() * eval_ground_int(*e.arg(0));
    case ExprKind::IntAdd: return eval_ground_int(*e.arg(0)) + eval_ground_int(*e.arg(1));
    case ExprKind::IntSub: return eval_ground_int(*e.arg(0)) - eval_ground_int(*e.arg(1));
    default: throw std::logic_error("eval_ground_int on non-ground expression");
  }
}

bool is_constant_date_lit(const Expr& e) {
  return e.kind() == ExprKind::DateLit && e.arg(0)->kind() == ExprKind::IntConst &&
         e.arg(1)->kind() == ExprKind::IntConst && e.arg(2)->kind() == ExprKind::IntConst;
}

namespace {

bool is_atomic(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::BoolConst:
    case ExprKind::BoolVar:
    case ExprKind::IntVar:
    case ExprKind::DateVar:
    case ExprKind::DateLit:
    case ExprKind::PeriodLit:
    case ExprKind::DateField:
      return true;
    case ExprKind::IntConst:
      return e.value() >= 0;
    default:
      return false;
  }
}

void render_into(const Expr& e, std::string& out);

void render_child(const Expr& e, std::string& out) {
  if (is_atomic(e)) {
    render_into(e, out);
  } else {
    out += '(';
    render_into(e, out);
    out += ')';
  }
}

void render_binary(const Expr& e, std::string_view op, std::string& out) {
  render_child(*e.arg(0), out);
  out += ' ';
  out += op;
  out += ' ';
  render_child(*e.arg(1), out);
}

void render_into(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case ExprKind::BoolConst: out += e.value() ? "True" : "False"; return;
    case ExprKind::BoolVar:
    case ExprKind::IntVar:
    case ExprKind::DateVar: out += e.name(); return;
    case ExprKind::Not: out += '!'; render_child(*e.arg(0), out); return;
    case ExprKind::And: render_binary(e, "&&", out); return;
    case ExprKind::Or: render_binary(e, "||", out); return;
    case ExprKind::Implies: render_binary(e, "->", out); return;
    case ExprKind::Iff: render_binary(e, "==", out); return;
    case ExprKind::Xor: render_binary(e, "!=", out); return;
    case ExprKind::IntConst: out += std::to_string(e.value()); return;
    case ExprKind::Neg:
      // "-5" would re-parse as a negative literal, so keep the parens.
      if (e.arg(0)->kind() == ExprKind::IntConst) {
        out += "-(";
        render_into(*e.arg(0), out);
        out += ')';
      } else {
        out += '-';
        render_child(*e.arg(0), out);
      }
      return;
    case ExprKind::IntAdd:
    case ExprKind::DateAddPeriod:
    case ExprKind::PeriodAdd: render_binary(e, "+", out); return;
    case ExprKind::IntSub:
    case ExprKind::DateSubPeriod:
    case ExprKind::PeriodSub: render_binary(e, "-", out); return;
    case ExprKind::IntMulConst:
    case ExprKind::PeriodScale:
      out += std::to_string(e.value());
      out += " * ";
      render_child(*e.arg(0), out);
      return;
    case ExprKind::DateField:
      render_child(*e.arg(0), out);
      out += '.';
      out += to_string(e.field());
      return;
    case ExprKind::IntCmp:
    case ExprKind::DateCmp: render_binary(e, to_string(e.op()), out); return;
    case ExprKind::DateLit:
      out += "Date(";
      render_into(*e.arg(0), out);
      out += ", ";
      render_into(*e.arg(1), out);
      out += ", ";
      render_into(*e.arg(2), out);
      out += ')';
      return;
    case ExprKind::PeriodLit:
      out += to_string(e.period());
      return;
  }
}

}  // namespace

std::string render(const Expr& e) {
  std::string out;
  render_into(e, out);
  return out;
}

}  // namespace datesat
