#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "datesat/calendar.hpp"

namespace datesat {

enum class Sort { Bool, Int, Date, Period };

enum class CmpOp { Lt, Le, Gt, Ge, Eq, Ne };

enum class Field { Year, Month, Day };

enum class ExprKind {
  BoolConst,
  BoolVar,
  Not,
  And,
  Or,
  Implies,
  Iff,  // boolean ==
  Xor,  // boolean !=
  IntConst,
  IntVar,
  Neg,
  IntAdd,
  IntSub,
  IntMulConst,
  DateField,
  IntCmp,
  DateCmp,
  DateVar,
  DateLit,
  DateAddPeriod,
  DateSubPeriod,
  PeriodLit,
  PeriodAdd,
  PeriodSub,
  PeriodScale,
};

std::string_view to_string(Sort s);
std::string_view to_string(CmpOp op);
std::string_view to_string(Field f);

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable AST node. Build through the static factories, which compute
/// the node's sort; they do not re-check child sorts (the parser does).
class Expr {
 public:
  ExprKind kind() const { return kind_; }
  Sort sort() const { return sort_; }
  const std::vector<ExprPtr>& args() const { return args_; }
  const ExprPtr& arg(std::size_t i) const { return args_[i]; }
  const std::string& name() const { return name_; }
  /// IntConst value, BoolConst (0/1), or the IntMulConst / PeriodScale factor.
  std::int64_t value() const { return value_; }
  CmpOp op() const { return op_; }
  Field field() const { return field_; }
  const Period& period() const { return period_; }

  static ExprPtr bool_const(bool v);
  static ExprPtr bool_var(std::string name);
  static ExprPtr not_(ExprPtr e);
  static ExprPtr and_(ExprPtr a, ExprPtr b);
  static ExprPtr or_(ExprPtr a, ExprPtr b);
  static ExprPtr implies(ExprPtr a, ExprPtr b);
  static ExprPtr iff(ExprPtr a, ExprPtr b);
  static ExprPtr xor_(ExprPtr a, ExprPtr b);

  static ExprPtr int_const(std::int64_t v);
  static ExprPtr int_var(std::string name);
  static ExprPtr neg(ExprPtr e);
  static ExprPtr int_add(ExprPtr a, ExprPtr b);
  static ExprPtr int_sub(ExprPtr a, ExprPtr b);
  static ExprPtr int_mul_const(std::int64_t k, ExprPtr e);
  static ExprPtr date_field(ExprPtr date, Field f);
  static ExprPtr int_cmp(CmpOp op, ExprPtr a, ExprPtr b);
  static ExprPtr date_cmp(CmpOp op, ExprPtr a, ExprPtr b);

  static ExprPtr date_var(std::string name);
  static ExprPtr date_lit(ExprPtr y, ExprPtr m, ExprPtr d);
  static ExprPtr date_lit(const Date& d);
  static ExprPtr date_add_period(ExprPtr date, ExprPtr period);
  static ExprPtr date_sub_period(ExprPtr date, ExprPtr period);

  static ExprPtr period_lit(const Period& p);
  static ExprPtr period_add(ExprPtr a, ExprPtr b);
  static ExprPtr period_sub(ExprPtr a, ExprPtr b);
  static ExprPtr period_scale(std::int64_t k, ExprPtr p);

  /// Rebuilds this node over new children, keeping every other attribute.
  ExprPtr with_args(std::vector<ExprPtr> args) const;

 private:
  Expr(ExprKind kind, Sort sort) : kind_(kind), sort_(sort) {}
  static ExprPtr make(Expr e);
  static Expr node(ExprKind kind, Sort sort, std::vector<ExprPtr> args);

  ExprKind kind_;
  Sort sort_;
  std::vector<ExprPtr> args_;
  std::string name_;
  std::int64_t value_ = 0;
  CmpOp op_ = CmpOp::Eq;
  Field field_ = Field::Year;
  Period period_{};
};

bool structurally_equal(const Expr& a, const Expr& b);

/// True when the integer expression mentions no variables.
bool is_ground_int(const Expr& e);

/// Concrete value of a variable-free integer expression.
std::int64_t eval_ground_int(const Expr& e);

/// True when `e` is a DateLit whose components are all IntConst.
bool is_constant_date_lit(const Expr& e);

/// Pretty-prints `e` in the concrete constraint syntax. Compound children
/// are parenthesized, so `parse(render(e))` rebuilds an equal tree.
std::string render(const Expr& e);

}  // namespace datesat
