#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace datesat::smt {

enum class SortKind { Bool, Int, IntArray };

enum class Op {
  IntConst, BoolConst, Var, Table,
  Add, Sub, Neg, MulConst, DivConst, ModConst,
  Ite,
  Lt, Le, Gt, Ge, Eq, Distinct,
  And, Or, Not, Implies,
  Select,
};

/// Raised for ill-sorted construction or a zero divisor.
class TermError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class Term;

/// SMT-LIB integer division: m = n*q + r with 0 <= r < |n|.
std::int64_t smt_div(std::int64_t m, std::int64_t n);
std::int64_t smt_mod(std::int64_t m, std::int64_t n);

struct TermNode {
  Op op;
  SortKind sort;
  std::int64_t value = 0;  // constant value or MulConst/DivConst/ModConst factor
  std::string name;        // Var / Table
  std::vector<Term> args;
  std::shared_ptr<const std::vector<std::int64_t>> table;  // Table contents
};

/// Immutable handle to a formula node. Copies share the node.
class Term {
 public:
  Term() = default;
  explicit Term(std::shared_ptr<const TermNode> n) : n_(std::move(n)) {}

  const TermNode& node() const { return *n_; }
  const TermNode* get() const { return n_.get(); }
  explicit operator bool() const { return static_cast<bool>(n_); }

  Op op() const { return n_->op; }
  SortKind sort() const { return n_->sort; }
  bool is_const() const { return n_->op == Op::IntConst || n_->op == Op::BoolConst; }
  bool is_true() const { return n_->op == Op::BoolConst && n_->value != 0; }
  bool is_false() const { return n_->op == Op::BoolConst && n_->value == 0; }
  std::int64_t const_value() const { return n_->value; }
  const std::string& name() const { return n_->name; }
  const std::vector<Term>& args() const { return n_->args; }

  friend bool operator==(const Term& a, const Term& b) { return a.n_ == b.n_; }

 private:
  std::shared_ptr<const TermNode> n_;
};

// Constructors fold constant operands; none of them introduces variables.
Term int_const(std::int64_t v);
Term bool_const(bool v);
Term var(std::string name, SortKind sort);

Term add(const Term& a, const Term& b);
Term add(const Term& a, std::int64_t k);
Term sub(const Term& a, const Term& b);
Term neg(const Term& a);
Term mul_const(std::int64_t k, const Term& a);
/// Euclidean division by a nonzero constant.
Term div_const(const Term& a, std::int64_t n);
/// Non-negative remainder by a nonzero constant; in [0, |n|).
Term mod_const(const Term& a, std::int64_t n);
Term ite(const Term& cond, const Term& then_t, const Term& else_t);
Term min(const Term& a, const Term& b);

Term lt(const Term& a, const Term& b);
Term le(const Term& a, const Term& b);
Term gt(const Term& a, const Term& b);
Term ge(const Term& a, const Term& b);
Term eq(const Term& a, const Term& b);
Term neq(const Term& a, const Term& b);

Term and_(const Term& a, const Term& b);
Term and_(const std::vector<Term>& terms);
Term or_(const Term& a, const Term& b);
Term or_(const std::vector<Term>& terms);
Term not_(const Term& a);
Term implies(const Term& a, const Term& b);

Term select(const Term& array, const Term& index);

/// A named Int->Int array whose entries 0..n-1 are `values`. The session
/// serializes it either as select equalities or as an ite chain.
Term const_array_from_table(std::string name, std::vector<std::int64_t> values);

}  // namespace datesat::smt
