#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "datesat/expr.hpp"

namespace datesat {

/// Base for errors in constraint text; carries a 1-based source position.
class LanguageError : public std::runtime_error {
 public:
  LanguageError(const std::string& what, int line, int column)
      : std::runtime_error(what + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class ParseError : public LanguageError {
 public:
  using LanguageError::LanguageError;
};

/// Ill-sorted constraint: mixing dates and integers, comparing periods,
/// nonlinear multiplication, undeclared variables.
class SortError : public LanguageError {
 public:
  using LanguageError::LanguageError;
};

using Declarations = std::map<std::string, Sort, std::less<>>;

/// Parses one constraint. Variable sorts are inferred from usage; a
/// variable only ever compared against other unresolved variables is taken
/// to be a date.
ExprPtr parse(std::string_view text);

/// Parses one constraint against declared variable sorts. Undeclared
/// variables are a SortError.
ExprPtr parse(std::string_view text, const Declarations& declarations);

/// Sorts inferred for the free variables of `text` (the non-strict mode's
/// view of the constraint).
Declarations infer_sorts(std::string_view text);

}  // namespace datesat
