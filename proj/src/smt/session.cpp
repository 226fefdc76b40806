#include "datesat/smt/session.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace datesat::smt {

namespace {

const char* sort_name(SortKind s) {
  switch (s) {
    case SortKind::Bool: return "Bool";
    case SortKind::Int: return "Int";
    case SortKind::IntArray: return "(Array Int Int)";
  }
  return "?";
}

const char* op_symbol(Op op) {
  switch (op) {
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Neg: return "-";
    case Op::MulConst: return "*";
    case Op::DivConst: return "div";
    case Op::ModConst: return "mod";
    case Op::Ite: return "ite";
    case Op::Lt: return "<";
    case Op::Le: return "<=";
    case Op::Gt: return ">";
    case Op::Ge: return ">=";
    case Op::Eq: return "=";
    case Op::Distinct: return "distinct";
    case Op::And: return "and";
    case Op::Or: return "or";
    case Op::Not: return "not";
    case Op::Implies: return "=>";
    case Op::Select: return "select";
    default: return "?";
  }
}

std::string numeral(std::int64_t v) {
  if (v < 0) return "(- " + std::to_string(-v) + ")";
  return std::to_string(v);
}

std::int64_t table_at(const std::vector<std::int64_t>& table, std::int64_t i) {
  if (i < 0 || static_cast<std::size_t>(i) >= table.size()) return 0;
  return table[static_cast<std::size_t>(i)];
}

std::int64_t apply(Op op, std::int64_t value, std::int64_t a, std::int64_t b) {
  switch (op) {
    case Op::Add: return a + b;
    case Op::Sub: return a - b;
    case Op::Neg: return -a;
    case Op::MulConst: return value * a;
    case Op::DivConst: return smt_div(a, value);
    case Op::ModConst: return smt_mod(a, value);
    case Op::Lt: return a < b;
    case Op::Le: return a <= b;
    case Op::Gt: return a > b;
    case Op::Ge: return a >= b;
    case Op::Eq: return a == b;
    case Op::Distinct: return a != b;
    case Op::Not: return !a;
    case Op::Implies: return !a || b;
    default: throw TermError("unexpected operator in evaluation");
  }
}

class Printer {
 public:
  Printer(const Session& s) : session_(s) {}

  // Assigns quotient variables to every div/mod node below `t`.
  void collect_divmod(const Term& t) {
    if (!seen_.insert(t.get()).second) return;
    for (const auto& a : t.args()) collect_divmod(a);
    if (t.op() == Op::DivConst || t.op() == Op::ModConst) {
      const auto key = std::make_pair(t.args()[0].get(), t.const_value());
      if (quotients_.contains(key)) return;
      std::string name;
      do {
        name = "divq!" + std::to_string(quotient_counter_++);
      } while (session_.has_variable(name));
      quotients_.emplace(key, name);
      quotient_order_.push_back({name, t.args()[0], t.const_value()});
    }
  }

  void collect_tables(const Term& t) {
    if (!table_seen_.insert(t.get()).second) return;
    if (t.op() == Op::Table) {
      if (!std::any_of(tables_.begin(), tables_.end(),
                       [&](const Term& u) { return u.name() == t.name(); })) {
        tables_.push_back(t);
      }
      return;
    }
    for (const auto& a : t.args()) collect_tables(a);
  }

  void print(std::ostream& os, const Term& t) {
    switch (t.op()) {
      case Op::IntConst: os << numeral(t.const_value()); return;
      case Op::BoolConst: os << (t.is_true() ? "true" : "false"); return;
      case Op::Var:
      case Op::Table: os << quote_symbol(t.name()); return;
      case Op::MulConst:
        os << "(* " << numeral(t.const_value()) << ' ';
        print(os, t.args()[0]);
        os << ')';
        return;
      case Op::DivConst:
      case Op::ModConst:
        if (session_.options().eliminate_divmod) {
          const auto& q = quotients_.at({t.args()[0].get(), t.const_value()});
          if (t.op() == Op::DivConst) {
            os << quote_symbol(q);
          } else {
            os << "(- ";
            print(os, t.args()[0]);
            os << " (* " << numeral(t.const_value()) << ' ' << quote_symbol(q) << "))";
          }
          return;
        }
        os << '(' << op_symbol(t.op()) << ' ';
        print(os, t.args()[0]);
        os << ' ' << numeral(t.const_value()) << ')';
        return;
      case Op::Select:
        if (session_.options().table_mode == TableMode::Ite && t.args()[0].op() == Op::Table) {
          print_ite_select(os, *t.args()[0].node().table, t.args()[1]);
          return;
        }
        break;
      default:
        break;
    }
    os << '(' << op_symbol(t.op());
    for (const auto& a : t.args()) {
      os << ' ';
      print(os, a);
    }
    os << ')';
  }

  struct Quotient {
    std::string name;
    Term dividend;
    std::int64_t divisor;
  };
  const std::vector<Quotient>& quotients() const { return quotient_order_; }
  const std::vector<Term>& tables() const { return tables_; }

 private:
  void print_ite_select(std::ostream& os, const std::vector<std::int64_t>& values, const Term& idx) {
    if (values.empty()) {
      os << '0';
      return;
    }
    std::ostringstream idx_text;
    print(idx_text, idx);
    const std::string i = idx_text.str();
    for (std::size_t k = 0; k + 1 < values.size(); ++k) {
      os << "(ite (= " << i << ' ' << k << ") " << numeral(values[k]) << ' ';
    }
    os << numeral(values.back()) << std::string(values.size() - 1, ')');
  }

  const Session& session_;
  std::set<const TermNode*> seen_;
  std::set<const TermNode*> table_seen_;
  std::map<std::pair<const TermNode*, std::int64_t>, std::string> quotients_;
  std::vector<Quotient> quotient_order_;
  int quotient_counter_ = 0;
  std::vector<Term> tables_;
};

}  // namespace

std::string quote_symbol(const std::string& name) {
  static const std::string kExtra = "~!@$%^&*_-+=<>.?/";
  const bool simple =
      !name.empty() && !std::isdigit(static_cast<unsigned char>(name[0])) &&
      std::all_of(name.begin(), name.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || kExtra.find(c) != std::string::npos;
      });
  if (simple) return name;
  std::string out = "|";
  for (char c : name) {
    if (c != '|' && c != '\\') out += c;
  }
  return out + "|";
}

Session::Session(SessionOptions options) : options_(options) {}

Term Session::declare(const std::string& name, SortKind sort) {
  if (name.empty()) throw TermError("empty variable name");
  if (by_name_.contains(name)) throw TermError("variable declared twice: " + name);
  Term v = var(name, sort);
  variables_.push_back(v);
  by_name_.emplace(name, v);
  return v;
}

Term Session::fresh(std::string_view hint, SortKind sort) {
  const std::string base(hint);
  int& n = counters_[base];
  std::string name;
  do {
    name = base + "!" + std::to_string(n++);
  } while (by_name_.contains(name));
  return declare(name, sort);
}

Term Session::define(std::string_view hint, const Term& value) {
  if (value.is_const() || value.op() == Op::Var) return value;
  Term v = fresh(hint, value.sort());
  definitions_.emplace(v.name(), value);
  add(eq(v, value));
  return v;
}

Term Session::witnessed(std::string_view hint, SortKind sort, const Term& witness) {
  if (witness.sort() != sort) throw TermError("witness sort mismatch");
  Term v = fresh(hint, sort);
  witnesses_.emplace(v.name(), witness);
  return v;
}

void Session::add(const Term& formula) {
  if (!formula || formula.sort() != SortKind::Bool) throw TermError("assertion must be boolean");
  if (formula.is_true()) return;
  assertions_.push_back(formula);
}

const Term* Session::definition(const std::string& name) const {
  auto it = definitions_.find(name);
  return it == definitions_.end() ? nullptr : &it->second;
}

const Term* Session::witness(const std::string& name) const {
  auto it = witnesses_.find(name);
  return it == witnesses_.end() ? nullptr : &it->second;
}

Term Session::variable(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) throw TermError("unknown variable " + name);
  return it->second;
}

std::string Session::logic() const {
  if (options_.table_mode == TableMode::Ite) return "QF_LIA";
  Printer p(*this);
  for (const auto& a : assertions_) p.collect_tables(a);
  return p.tables().empty() ? "QF_LIA" : "QF_ALIA";
}

std::string Session::dump() const {
  Printer p(*this);
  for (const auto& a : assertions_) {
    p.collect_tables(a);
    if (options_.eliminate_divmod) p.collect_divmod(a);
  }
  const bool arrays = options_.table_mode == TableMode::Array && !p.tables().empty();

  std::ostringstream os;
  os << "(set-option :produce-models true)\n";
  os << "(set-logic " << (arrays ? "QF_ALIA" : "QF_LIA") << ")\n";
  for (const auto& v : variables_) {
    os << "(declare-fun " << quote_symbol(v.name()) << " () " << sort_name(v.sort()) << ")\n";
  }
  for (const auto& q : p.quotients()) {
    os << "(declare-fun " << quote_symbol(q.name) << " () Int)\n";
  }
  if (arrays) {
    for (const auto& t : p.tables()) {
      os << "(declare-fun " << quote_symbol(t.name()) << " () (Array Int Int))\n";
      const auto& values = *t.node().table;
      for (std::size_t i = 0; i < values.size(); ++i) {
        os << "(assert (= (select " << quote_symbol(t.name()) << ' ' << i << ") "
           << numeral(values[i]) << "))\n";
      }
    }
  }
  for (const auto& q : p.quotients()) {
    const std::int64_t n = q.divisor < 0 ? -q.divisor : q.divisor;
    std::ostringstream x;
    p.print(x, q.dividend);
    const std::string prod = "(* " + numeral(q.divisor) + ' ' + quote_symbol(q.name) + ')';
    os << "(assert (<= " << prod << ' ' << x.str() << "))\n";
    os << "(assert (< " << x.str() << " (+ " << prod << ' ' << n << ")))\n";
  }
  for (const auto& a : assertions_) {
    os << "(assert ";
    p.print(os, a);
    os << ")\n";
  }
  os << "(check-sat)\n(get-model)\n";
  return os.str();
}

Evaluator::Evaluator(const Session& session, Env env) : session_(session), env_(std::move(env)) {}

std::int64_t Evaluator::var_value(const Term& t) {
  if (auto it = vars_.find(t.name()); it != vars_.end()) return it->second;
  std::int64_t v = 0;
  if (auto given = env_ ? env_(t.name()) : std::nullopt) {
    v = *given;
  } else if (const Term* def = session_.definition(t.name())) {
    v = eval(*def);
  } else if (const Term* w = session_.witness(t.name())) {
    v = eval(*w);
  }
  vars_.emplace(t.name(), v);
  return v;
}

std::int64_t Evaluator::eval(const Term& t) {
  if (auto it = memo_.find(t.get()); it != memo_.end()) return it->second.second;
  std::int64_t v = 0;
  const auto& args = t.args();
  switch (t.op()) {
    case Op::IntConst:
    case Op::BoolConst: v = t.const_value(); break;
    case Op::Var: v = var_value(t); break;
    case Op::Table: throw TermError("array value has no integer evaluation");
    case Op::Ite: v = eval(args[0]) != 0 ? eval(args[1]) : eval(args[2]); break;
    case Op::And:
      v = 1;
      for (const auto& a : args) {
        if (eval(a) == 0) {
          v = 0;
          break;
        }
      }
      break;
    case Op::Or:
      v = 0;
      for (const auto& a : args) {
        if (eval(a) != 0) {
          v = 1;
          break;
        }
      }
      break;
    case Op::Select: v = table_at(*args[0].node().table, eval(args[1])); break;
    default:
      v = apply(t.op(), t.const_value(), eval(args[0]), args.size() > 1 ? eval(args[1]) : 0);
      break;
  }
  memo_.emplace(t.get(), std::pair{t, v});
  return v;
}

Tape::Tape(const Session& session, const std::vector<Term>& roots,
           const std::vector<std::string>& inputs)
    : session_(session) {
  for (const auto& name : inputs) {
    const int slot = static_cast<int>(code_.size());
    code_.emplace_back(Op::Var, 0);
    var_slot_.emplace(name, slot);
    input_slots_.push_back(slot);
  }
  for (const auto& r : roots) root_slots_.push_back(compile(r));
  regs_.assign(code_.size(), 0);
  out_.assign(root_slots_.size(), 0);
}

int Tape::compile(const Term& t) {
  if (auto it = slot_of_.find(t.get()); it != slot_of_.end()) return it->second;
  int slot = -1;
  if (t.op() == Op::Var) {
    if (auto it = var_slot_.find(t.name()); it != var_slot_.end()) {
      slot = it->second;
    } else {
      const Term* src = session_.definition(t.name());
      if (!src) src = session_.witness(t.name());
      if (src) {
        slot = compile(*src);
      } else {
        slot = static_cast<int>(code_.size());
        code_.emplace_back(Op::IntConst, 0);
      }
      var_slot_.emplace(t.name(), slot);
    }
  } else {
    Instr in(t.op(), t.const_value());
    const auto& args = t.args();
    if (t.op() == Op::Select) {
      in.table = t.args()[0].node().table.get();
      in.a = compile(args[1]);
    } else if (t.op() == Op::And || t.op() == Op::Or) {
      for (const auto& a : args) in.rest.push_back(compile(a));
    } else {
      if (args.size() > 0) in.a = compile(args[0]);
      if (args.size() > 1) in.b = compile(args[1]);
      if (args.size() > 2) in.c = compile(args[2]);
    }
    slot = static_cast<int>(code_.size());
    code_.push_back(std::move(in));
  }
  slot_of_.emplace(t.get(), slot);
  return slot;
}

const std::vector<std::int64_t>& Tape::run(const std::vector<std::int64_t>& inputs) {
  if (inputs.size() != input_slots_.size()) throw TermError("tape input arity mismatch");
  for (std::size_t i = 0; i < inputs.size(); ++i) regs_[input_slots_[i]] = inputs[i];
  std::int64_t* r = regs_.data();
  for (std::size_t pc = 0; pc < code_.size(); ++pc) {
    const Instr& in = code_[pc];
    switch (in.op) {
      case Op::Var: break;
      case Op::IntConst:
      case Op::BoolConst: r[pc] = in.value; break;
      case Op::Ite: r[pc] = r[in.a] != 0 ? r[in.b] : r[in.c]; break;
      case Op::And: {
        std::int64_t v = 1;
        for (int s : in.rest) v = v && r[s];
        r[pc] = v;
        break;
      }
      case Op::Or: {
        std::int64_t v = 0;
        for (int s : in.rest) v = v || r[s];
        r[pc] = v;
        break;
      }
      case Op::Select: r[pc] = table_at(*in.table, r[in.a]); break;
      case Op::Add: r[pc] = r[in.a] + r[in.b]; break;
      case Op::Sub: r[pc] = r[in.a] - r[in.b]; break;
      case Op::MulConst: r[pc] = in.value * r[in.a]; break;
      case Op::DivConst: r[pc] = smt_div(r[in.a], in.value); break;
      case Op::ModConst: r[pc] = smt_mod(r[in.a], in.value); break;
      default:
        r[pc] = apply(in.op, in.value, r[in.a], in.b >= 0 ? r[in.b] : 0);
        break;
    }
  }
  for (std::size_t i = 0; i < root_slots_.size(); ++i) out_[i] = r[root_slots_[i]];
  return out_;
}

}  // namespace datesat::smt
