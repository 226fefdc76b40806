#include "datesat/validator.hpp"

namespace datesat {
namespace {

template <typename T>
T as(const Value& v, const Expr& e) {
  if (const T* x = std::get_if<T>(&v)) return *x;
  throw EvalError("sort mismatch in " + render(e));
}

template <typename T>
bool compare_with(CmpOp op, const T& a, const T& b) {
  switch (op) {
    case CmpOp::Lt: return a < b;
    case CmpOp::Le: return a <= b;
    case CmpOp::Gt: return a > b;
    case CmpOp::Ge: return a >= b;
    case CmpOp::Eq: return a == b;
    case CmpOp::Ne: return a != b;
  }
  return false;
}

Value lookup(const Expr& e, const Assignment& env, Sort want) {
  auto it = env.find(e.name());
  if (it == env.end()) throw EvalError("unmapped variable '" + e.name() + "'");
  if (sort_of(it->second) != want) {
    throw EvalError("variable '" + e.name() + "' is not a " + std::string(to_string(want)));
  }
  return it->second;
}

}  // namespace

Period eval_period(const ExprPtr& e, const Assignment& env) {
  switch (e->kind()) {
    case ExprKind::PeriodLit: return e->period();
    case ExprKind::PeriodAdd: return eval_period(e->arg(0), env) + eval_period(e->arg(1), env);
    case ExprKind::PeriodSub: return eval_period(e->arg(0), env) - eval_period(e->arg(1), env);
    case ExprKind::PeriodScale: return e->value() * eval_period(e->arg(0), env);
    default: throw EvalError("not a period: " + render(*e));
  }
}

Value eval(const ExprPtr& e, const Assignment& env) {
  const Expr& x = *e;
  const auto b = [&](std::size_t i) { return as<bool>(eval(x.arg(i), env), *x.arg(i)); };
  const auto n = [&](std::size_t i) { return as<std::int64_t>(eval(x.arg(i), env), *x.arg(i)); };
  const auto d = [&](std::size_t i) { return as<Date>(eval(x.arg(i), env), *x.arg(i)); };
  switch (x.kind()) {
    case ExprKind::BoolConst: return x.value() != 0;
    case ExprKind::BoolVar: return lookup(x, env, Sort::Bool);
    case ExprKind::Not: return !b(0);
    case ExprKind::And: return b(0) && b(1);
    case ExprKind::Or: return b(0) || b(1);
    case ExprKind::Implies: return !b(0) || b(1);
    case ExprKind::Iff: return b(0) == b(1);
    case ExprKind::Xor: return b(0) != b(1);
    case ExprKind::IntConst: return x.value();
    case ExprKind::IntVar: return lookup(x, env, Sort::Int);
    case ExprKind::Neg: return -n(0);
    case ExprKind::IntAdd: return n(0) + n(1);
    case ExprKind::IntSub: return n(0) - n(1);
    case ExprKind::IntMulConst: return x.value() * n(0);
    case ExprKind::DateField: {
      const Date v = d(0);
      switch (x.field()) {
        case Field::Year: return v.year;
        case Field::Month: return v.month;
        case Field::Day: return v.day;
      }
      break;
    }
    case ExprKind::IntCmp: return compare_with(x.op(), n(0), n(1));
    case ExprKind::DateCmp: return compare_with(x.op(), d(0), d(1));
    case ExprKind::DateVar: return lookup(x, env, Sort::Date);
    case ExprKind::DateLit: {
      const Date v{n(0), n(1), n(2)};
      if (!valid(v)) throw EvalError("invalid date " + render(x) + " = " + to_string(v));
      return v;
    }
    case ExprKind::DateAddPeriod: return add_period(d(0), eval_period(x.arg(1), env));
    case ExprKind::DateSubPeriod: return add_period(d(0), -eval_period(x.arg(1), env));
    case ExprKind::PeriodLit:
    case ExprKind::PeriodAdd:
    case ExprKind::PeriodSub:
    case ExprKind::PeriodScale: break;
  }
  throw EvalError("cannot evaluate " + render(x) + " to a scalar");
}

ValidationResult validate_model(const Problem& p, const Assignment& a, const Bounds& b) {
  ValidationResult out;
  const auto fail = [&](std::size_t i, std::string text, std::string reason) {
    out.violations.push_back({i, std::move(text), std::move(reason)});
  };

  for (const auto& decl : p.declarations) {
    auto it = a.find(decl.name);
    if (it == a.end()) {
      fail(Violation::npos, decl.name, "unmapped variable");
      continue;
    }
    if (sort_of(it->second) != decl.sort) {
      fail(Violation::npos, decl.name, "expected a " + std::string(to_string(decl.sort)));
      continue;
    }
    if (const Date* v = std::get_if<Date>(&it->second)) {
      if (!valid(*v)) fail(Violation::npos, decl.name, "invalid date " + to_string(*v));
      else if (!b.contains(*v)) fail(Violation::npos, decl.name, to_string(*v) + " out of bounds");
    }
  }

  const Problem folded = fold_periods(p);
  for (std::size_t i = 0; i < folded.constraints.size(); ++i) {
    const ExprPtr& c = folded.constraints[i];
    const std::string text = render(*p.constraints[i]);
    try {
      if (!std::get<bool>(eval(c, a))) fail(i, text, "evaluates to false");
    } catch (const EvalError& err) {
      fail(i, text, err.what());
      continue;
    }
    Problem one;
    one.constraints = {c};
    for (const ExprPtr& sub : collect_date_subexprs(one)) {
      try {
        const Date v = std::get<Date>(eval(sub, a));
        if (!b.contains(v)) fail(i, text, render(*sub) + " = " + to_string(v) + " out of bounds");
      } catch (const EvalError& err) {
        fail(i, text, err.what());
      }
    }
  }
  return out;
}

nlohmann::json to_json(const ValidationResult& r) {
  nlohmann::json doc{{"ok", r.ok()}, {"violations", nlohmann::json::array()}};
  for (const auto& v : r.violations) {
    nlohmann::json item{{"text", v.text}, {"reason", v.reason}};
    item["constraint"] = v.constraint == Violation::npos ? nlohmann::json(nullptr) : nlohmann::json(v.constraint);
    doc["violations"].push_back(std::move(item));
  }
  return doc;
}

}  // namespace datesat
