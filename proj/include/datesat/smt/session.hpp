#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "datesat/smt/term.hpp"

namespace datesat::smt {

enum class TableMode {
  Array,  // uninterpreted array pinned by select equalities (QF_ALIA)
  Ite,    // select expanded into an ite chain over the index (QF_LIA)
};

struct SessionOptions {
  TableMode table_mode = TableMode::Array;
  /// Replace div/mod by constants with fresh quotients in dump().
  bool eliminate_divmod = false;
};

/// Declared variables plus asserted formulas. Besides plain declarations a
/// session records how auxiliary variables were introduced (a defining term
/// or a concrete witness) so they can be evaluated without a solver.
class Session {
 public:
  explicit Session(SessionOptions options = {});

  const SessionOptions& options() const { return options_; }

  /// Declares a variable under its exact name. Throws TermError on reuse.
  Term declare(const std::string& name, SortKind sort);
  /// Declares `hint!N` with the next free N.
  Term fresh(std::string_view hint, SortKind sort);
  /// A fresh variable constrained equal to `value`. Constants and variables
  /// are returned unchanged.
  Term define(std::string_view hint, const Term& value);
  /// A fresh variable whose constraints are asserted separately; `witness`
  /// computes a satisfying value from the other variables.
  Term witnessed(std::string_view hint, SortKind sort, const Term& witness);

  void add(const Term& formula);

  const std::vector<Term>& variables() const { return variables_; }
  const std::vector<Term>& assertions() const { return assertions_; }
  const Term* definition(const std::string& name) const;
  const Term* witness(const std::string& name) const;
  bool has_variable(const std::string& name) const { return by_name_.contains(name); }
  Term variable(const std::string& name) const;

  /// QF_ALIA when array tables are in use, QF_LIA otherwise.
  std::string logic() const;

  /// Complete SMT-LIB2 script ending in (check-sat) (get-model).
  std::string dump() const;

 private:
  SessionOptions options_;
  std::vector<Term> variables_;
  std::unordered_map<std::string, Term> by_name_;
  std::unordered_map<std::string, Term> definitions_;
  std::unordered_map<std::string, Term> witnesses_;
  std::unordered_map<std::string, int> counters_;
  std::vector<Term> assertions_;
};

std::string quote_symbol(const std::string& name);

/// Values of variables supplied from outside (a model or a test harness).
using Env = std::function<std::optional<std::int64_t>(const std::string&)>;

/// Concrete SMT-LIB semantics for terms. Variables take their value from
/// `env` first, then from their definition or witness in `session`, and
/// default to 0 otherwise. Booleans evaluate to 0/1.
class Evaluator {
 public:
  Evaluator(const Session& session, Env env);
  std::int64_t eval(const Term& t);
  bool holds(const Term& t) { return eval(t) != 0; }

 private:
  std::int64_t var_value(const Term& t);

  const Session& session_;
  Env env_;
  // Holds the term so its node address cannot be reused while memoized.
  std::unordered_map<const TermNode*, std::pair<Term, std::int64_t>> memo_;
  std::unordered_map<std::string, std::int64_t> vars_;
};

/// A term DAG flattened into straight-line code for repeated evaluation.
/// Input variables are bound by slot; defined and witnessed variables of the
/// session are computed from their terms.
class Tape {
 public:
  Tape(const Session& session, const std::vector<Term>& roots,
       const std::vector<std::string>& inputs);

  /// Runs the tape with inputs in the order given at construction. Returns
  /// the values of the roots.
  const std::vector<std::int64_t>& run(const std::vector<std::int64_t>& inputs);

 private:
  struct Instr {
    Instr(Op o, std::int64_t v) : op(o), value(v) {}
    Op op;
    std::int64_t value;
    int a = -1, b = -1, c = -1;
    std::vector<int> rest;
    const std::vector<std::int64_t>* table = nullptr;
  };
  int compile(const Term& t);

  const Session& session_;
  std::vector<Instr> code_;
  std::vector<int> input_slots_;
  std::vector<int> root_slots_;
  std::unordered_map<const TermNode*, int> slot_of_;
  std::unordered_map<std::string, int> var_slot_;
  std::vector<std::int64_t> regs_;
  std::vector<std::int64_t> out_;
};

}  // namespace datesat::smt
