#include "datesat/parser.hpp"

#include <cctype>
#include <charconv>
#include <memory>
#include <optional>
#include <vector>

namespace datesat {

namespace {

enum class Tok {
  End, Int, Ident, LParen, RParen, Comma, Dot, Plus, Minus, Star, Bang,
  AndAnd, OrOr, Arrow, EqEq, NotEq, Lt, Le, Gt, Ge,
};

struct Token {
  Tok kind = Tok::End;
  std::string_view text;
  std::int64_t value = 0;
  int line = 1;
  int col = 1;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Tok::Int;
      t.text = src.substr(i, j - i);
      auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.value);
      if (ec != std::errc{}) throw ParseError("integer literal out of range", line, col);
      out.push_back(t);
      advance(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
        ++j;
      }
      t.kind = Tok::Ident;
      t.text = src.substr(i, j - i);
      out.push_back(t);
      advance(j - i);
      continue;
    }
    auto two = [&](char a, char b) {
      return c == a && i + 1 < src.size() && src[i + 1] == b;
    };
    std::size_t len = 2;
    if (two('&', '&')) t.kind = Tok::AndAnd;
    else if (two('|', '|')) t.kind = Tok::OrOr;
    else if (two('-', '>')) t.kind = Tok::Arrow;
    else if (two('=', '=')) t.kind = Tok::EqEq;
    else if (two('!', '=')) t.kind = Tok::NotEq;
    else if (two('<', '=')) t.kind = Tok::Le;
    else if (two('>', '=')) t.kind = Tok::Ge;
    else {
      len = 1;
      switch (c) {
        case '(': t.kind = Tok::LParen; break;
        case ')': t.kind = Tok::RParen; break;
        case ',': t.kind = Tok::Comma; break;
        case '.': t.kind = Tok::Dot; break;
        case '+': t.kind = Tok::Plus; break;
        case '-': t.kind = Tok::Minus; break;
        case '*': t.kind = Tok::Star; break;
        case '!': t.kind = Tok::Bang; break;
        case '<': t.kind = Tok::Lt; break;
        case '>': t.kind = Tok::Gt; break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", line, col);
      }
    }
    t.text = src.substr(i, len);
    out.push_back(t);
    advance(len);
  }
  Token end;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

// Untyped syntax tree. Sorts are assigned in a second pass.
enum class SynKind { IntLit, BoolLit, Ident, DateCtor, PeriodCtor, Paren, Neg, Not, Binary, Field };
enum class BinOp { Add, Sub, Mul, And, Or, Implies, Cmp, LooseEq };

struct Syn;
using SynPtr = std::unique_ptr<Syn>;

struct Syn {
  SynKind kind = SynKind::IntLit;
  BinOp bop = BinOp::Add;
  CmpOp cmp = CmpOp::Eq;
  Field field = Field::Year;
  std::int64_t value = 0;
  Period period{};
  std::string name;
  std::vector<SynPtr> kids;
  int line = 1;
  int col = 1;
};

SynPtr make_syn(SynKind kind, const Token& at) {
  auto s = std::make_unique<Syn>();
  s->kind = kind;
  s->line = at.line;
  s->col = at.col;
  return s;
}

SynPtr make_binary(BinOp op, SynPtr l, SynPtr r, const Token& at) {
  auto s = make_syn(SynKind::Binary, at);
  s->bop = op;
  s->kids.push_back(std::move(l));
  s->kids.push_back(std::move(r));
  return s;
}

using SortMap = Declarations;

// Structural sort of a syntax node given the currently known variable
// sorts; nullopt when it hinges on an unresolved variable.
std::optional<Sort> sort_of(const Syn& s, const SortMap& vars) {
  switch (s.kind) {
    case SynKind::IntLit:
    case SynKind::Neg:
    case SynKind::Field:
      return Sort::Int;
    case SynKind::BoolLit:
    case SynKind::Not:
      return Sort::Bool;
    case SynKind::DateCtor:
      return Sort::Date;
    case SynKind::PeriodCtor:
      return Sort::Period;
    case SynKind::Paren:
      return sort_of(*s.kids[0], vars);
    case SynKind::Ident: {
      auto it = vars.find(s.name);
      if (it == vars.end()) return std::nullopt;
      return it->second;
    }
    case SynKind::Binary: {
      switch (s.bop) {
        case BinOp::And:
        case BinOp::Or:
        case BinOp::Implies:
        case BinOp::Cmp:
        case BinOp::LooseEq:
          return Sort::Bool;
        case BinOp::Mul: {
          auto a = sort_of(*s.kids[0], vars);
          auto b = sort_of(*s.kids[1], vars);
          if (a == Sort::Period || b == Sort::Period) return Sort::Period;
          return Sort::Int;
        }
        case BinOp::Add:
        case BinOp::Sub: {
          auto a = sort_of(*s.kids[0], vars);
          auto b = sort_of(*s.kids[1], vars);
          if (a == Sort::Period) return Sort::Period;
          if (a == Sort::Date || b == Sort::Period) return Sort::Date;
          // Periods are never variables, so anything else is integer.
          return Sort::Int;
        }
      }
    }
  }
  return std::nullopt;
}

bool is_relational(Tok t) { return t == Tok::Lt || t == Tok::Le || t == Tok::Gt || t == Tok::Ge; }

CmpOp cmp_of(Tok t) {
  switch (t) {
    case Tok::Lt: return CmpOp::Lt;
    case Tok::Le: return CmpOp::Le;
    case Tok::Gt: return CmpOp::Gt;
    case Tok::Ge: return CmpOp::Ge;
    case Tok::EqEq: return CmpOp::Eq;
    default: return CmpOp::Ne;
  }
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const SortMap* declared)
      : toks_(std::move(toks)), declared_(declared) {}

  SynPtr parse_constraint() {
    auto e = implication();
    if (peek().kind != Tok::End) fail("unexpected '" + std::string(peek().text) + "'");
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(std::string("expected ") + what);
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw ParseError(t.kind == Tok::End ? msg + " before end of input" : msg, t.line, t.col);
  }

  std::optional<Sort> guess(const Syn& s) const {
    static const SortMap kEmpty;
    return sort_of(s, declared_ ? *declared_ : kEmpty);
  }

  SynPtr implication() {
    auto lhs = equality();
    const Token at = peek();
    if (accept(Tok::Arrow)) return make_binary(BinOp::Implies, std::move(lhs), implication(), at);
    return lhs;
  }

  SynPtr equality() {
    auto lhs = disjunction();
    const Token at = peek();
    if (at.kind == Tok::EqEq || at.kind == Tok::NotEq) {
      ++pos_;
      auto node = make_binary(BinOp::LooseEq, std::move(lhs), disjunction(), at);
      node->cmp = cmp_of(at.kind);
      if (peek().kind == Tok::EqEq || peek().kind == Tok::NotEq) {
        fail("chained equality; parenthesize one side");
      }
      return node;
    }
    return lhs;
  }

  SynPtr disjunction() {
    auto lhs = conjunction();
    while (peek().kind == Tok::OrOr) {
      const Token at = take();
      lhs = make_binary(BinOp::Or, std::move(lhs), conjunction(), at);
    }
    return lhs;
  }

  SynPtr conjunction() {
    auto lhs = negation();
    while (peek().kind == Tok::AndAnd) {
      const Token at = take();
      lhs = make_binary(BinOp::And, std::move(lhs), negation(), at);
    }
    return lhs;
  }

  SynPtr negation() {
    const Token at = peek();
    if (accept(Tok::Bang)) {
      auto s = make_syn(SynKind::Not, at);
      s->kids.push_back(negation());
      return s;
    }
    return comparison();
  }

  SynPtr comparison() {
    auto lhs = additive();
    const Token at = peek();
    SynPtr node;
    if (is_relational(at.kind)) {
      ++pos_;
      node = make_binary(BinOp::Cmp, std::move(lhs), additive(), at);
    } else if (at.kind == Tok::EqEq || at.kind == Tok::NotEq) {
      // ==/!= between ints or dates is a comparison; between booleans it is
      // the looser equality layer handled by equality().
      const auto ls = guess(*lhs);
      if (ls == Sort::Bool) return lhs;
      if (ls) {
        ++pos_;
        node = make_binary(BinOp::Cmp, std::move(lhs), additive(), at);
      } else {
        const std::size_t saved = pos_;
        ++pos_;
        auto rhs = additive();
        const auto rs = guess(*rhs);
        if (rs == Sort::Int || rs == Sort::Date) {
          node = make_binary(BinOp::Cmp, std::move(lhs), std::move(rhs), at);
        } else {
          pos_ = saved;
          return lhs;
        }
      }
    } else {
      return lhs;
    }
    node->cmp = cmp_of(at.kind);
    if (is_relational(peek().kind)) fail("comparison chaining is not supported");
    return node;
  }

  SynPtr additive() {
    auto lhs = multiplicative();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const Token at = take();
      lhs = make_binary(at.kind == Tok::Plus ? BinOp::Add : BinOp::Sub, std::move(lhs),
                        multiplicative(), at);
    }
    return lhs;
  }

  SynPtr multiplicative() {
    auto lhs = unary();
    while (peek().kind == Tok::Star) {
      const Token at = take();
      lhs = make_binary(BinOp::Mul, std::move(lhs), unary(), at);
    }
    return lhs;
  }

  SynPtr unary() {
    const Token at = peek();
    if (accept(Tok::Minus)) {
      auto s = make_syn(SynKind::Neg, at);
      s->kids.push_back(unary());
      return s;
    }
    return postfix();
  }

  SynPtr postfix() {
    auto e = primary();
    while (peek().kind == Tok::Dot) {
      const Token at = take();
      const Token& f = peek();
      if (f.kind != Tok::Ident) fail("expected year, month or day after '.'");
      auto s = make_syn(SynKind::Field, at);
      if (f.text == "year") s->field = Field::Year;
      else if (f.text == "month") s->field = Field::Month;
      else if (f.text == "day") s->field = Field::Day;
      else fail("unknown date field '" + std::string(f.text) + "'");
      ++pos_;
      s->kids.push_back(std::move(e));
      e = std::move(s);
    }
    return e;
  }

  std::int64_t signed_integer() {
    const bool negative = accept(Tok::Minus);
    const Token& t = peek();
    if (t.kind != Tok::Int) fail("expected integer literal");
    ++pos_;
    return negative ? -t.value : t.value;
  }

  SynPtr primary() {
    const Token at = peek();
    switch (at.kind) {
      case Tok::Int: {
        ++pos_;
        auto s = make_syn(SynKind::IntLit, at);
        s->value = at.value;
        return s;
      }
      case Tok::LParen: {
        ++pos_;
        auto s = make_syn(SynKind::Paren, at);
        s->kids.push_back(implication());
        expect(Tok::RParen, "')'");
        return s;
      }
      case Tok::Ident: {
        ++pos_;
        if (at.text == "True" || at.text == "False") {
          auto s = make_syn(SynKind::BoolLit, at);
          s->value = at.text == "True";
          return s;
        }
        if (at.text == "Date") {
          auto s = make_syn(SynKind::DateCtor, at);
          expect(Tok::LParen, "'(' after Date");
          s->kids.push_back(implication());
          expect(Tok::Comma, "','");
          s->kids.push_back(implication());
          expect(Tok::Comma, "','");
          s->kids.push_back(implication());
          expect(Tok::RParen, "')'");
          return s;
        }
        if (at.text == "Period") {
          auto s = make_syn(SynKind::PeriodCtor, at);
          expect(Tok::LParen, "'(' after Period");
          s->period.years = signed_integer();
          expect(Tok::Comma, "','");
          s->period.months = signed_integer();
          expect(Tok::Comma, "','");
          s->period.days = signed_integer();
          expect(Tok::RParen, "')'");
          return s;
        }
        auto s = make_syn(SynKind::Ident, at);
        s->name = std::string(at.text);
        return s;
      }
      default:
        fail("expected an expression");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const SortMap* declared_;
};

// Second pass: resolve variable sorts, then build typed expressions.
class Typer {
 public:
  Typer(SortMap vars, bool strict) : vars_(std::move(vars)), strict_(strict) {}

  void infer(const Syn& root) {
    if (strict_) {
      check_declared(root);
      return;
    }
    do {
      changed_ = false;
      propagate(root);
    } while (changed_);
    default_unknowns(root);
  }

  ExprPtr build(const Syn& s) {
    switch (s.kind) {
      case SynKind::IntLit: return Expr::int_const(s.value);
      case SynKind::BoolLit: return Expr::bool_const(s.value != 0);
      case SynKind::Paren: return build(*s.kids[0]);
      case SynKind::Ident: {
        const Sort sort = vars_.at(s.name);
        switch (sort) {
          case Sort::Bool: return Expr::bool_var(s.name);
          case Sort::Int: return Expr::int_var(s.name);
          case Sort::Date: return Expr::date_var(s.name);
          case Sort::Period: break;
        }
        throw SortError("period variables are not supported", s.line, s.col);
      }
      case SynKind::Neg: {
        if (s.kids[0]->kind == SynKind::IntLit) return Expr::int_const(-s.kids[0]->value);
        return Expr::neg(expect(*s.kids[0], Sort::Int, "operand of unary '-'"));
      }
      case SynKind::Not: return Expr::not_(expect(*s.kids[0], Sort::Bool, "operand of '!'"));
      case SynKind::Field:
        return Expr::date_field(expect(*s.kids[0], Sort::Date, "operand of field access"),
                                s.field);
      case SynKind::DateCtor:
        return Expr::date_lit(expect(*s.kids[0], Sort::Int, "Date year"),
                              expect(*s.kids[1], Sort::Int, "Date month"),
                              expect(*s.kids[2], Sort::Int, "Date day"));
      case SynKind::PeriodCtor: return Expr::period_lit(s.period);
      case SynKind::Binary: return build_binary(s);
    }
    throw SortError("unhandled syntax", s.line, s.col);
  }

 private:
  std::optional<Sort> sort(const Syn& s) const { return sort_of(s, vars_); }

  const Syn& strip(const Syn& s) const {
    return s.kind == SynKind::Paren ? strip(*s.kids[0]) : s;
  }

  void check_declared(const Syn& s) const {
    if (s.kind == SynKind::Ident && !vars_.contains(s.name)) {
      throw SortError("undeclared variable '" + s.name + "'", s.line, s.col);
    }
    for (const auto& k : s.kids) check_declared(*k);
  }

  void constrain(const Syn& s, Sort want) {
    const Syn& base = strip(s);
    if (base.kind == SynKind::Ident && !vars_.contains(base.name)) {
      vars_.emplace(base.name, want);
      changed_ = true;
    }
  }

  void unify(const Syn& a, const Syn& b) {
    const auto sa = sort(a);
    const auto sb = sort(b);
    if (sa && !sb) constrain(b, *sa);
    if (sb && !sa) constrain(a, *sb);
  }

  void propagate(const Syn& s) {
    for (const auto& k : s.kids) propagate(*k);
    switch (s.kind) {
      case SynKind::Not: constrain(*s.kids[0], Sort::Bool); break;
      case SynKind::Neg: constrain(*s.kids[0], Sort::Int); break;
      case SynKind::Field: constrain(*s.kids[0], Sort::Date); break;
      case SynKind::DateCtor:
        for (const auto& k : s.kids) constrain(*k, Sort::Int);
        break;
      case SynKind::Binary: {
        const Syn& l = *s.kids[0];
        const Syn& r = *s.kids[1];
        switch (s.bop) {
          case BinOp::And:
          case BinOp::Or:
          case BinOp::Implies:
            constrain(l, Sort::Bool);
            constrain(r, Sort::Bool);
            break;
          case BinOp::Mul:
            if (sort(l) != Sort::Period) constrain(l, Sort::Int);
            if (sort(r) != Sort::Period) constrain(r, Sort::Int);
            break;
          case BinOp::Add:
          case BinOp::Sub: {
            const auto sl = sort(l);
            const auto sr = sort(r);
            if (sr == Sort::Period) {
              if (!sl) constrain(l, Sort::Date);
            } else if (sl != Sort::Date && sl != Sort::Period) {
              // A variable on either side of +/- without a period operand
              // can only be an integer.
              if (sr || strip(r).kind == SynKind::Ident) {
                constrain(l, Sort::Int);
                constrain(r, Sort::Int);
              }
            }
            break;
          }
          case BinOp::Cmp:
          case BinOp::LooseEq:
            unify(l, r);
            break;
        }
        break;
      }
      default:
        break;
    }
  }

  void default_unknowns(const Syn& s) {
    for (const auto& k : s.kids) default_unknowns(*k);
    if (s.kind == SynKind::Ident && !vars_.contains(s.name)) vars_.emplace(s.name, Sort::Date);
  }

  ExprPtr expect(const Syn& s, Sort want, const char* role) {
    ExprPtr e = build(s);
    if (e->sort() != want) {
      throw SortError(std::string(role) + " must be " + std::string(to_string(want)) +
                          ", found " + std::string(to_string(e->sort())),
                      s.line, s.col);
    }
    return e;
  }

  [[noreturn]] void mismatch(const Syn& s, const ExprPtr& a, const ExprPtr& b,
                             const char* op) const {
    throw SortError(std::string("cannot apply '") + op + "' to " +
                        std::string(to_string(a->sort())) + " and " +
                        std::string(to_string(b->sort())),
                    s.line, s.col);
  }

  ExprPtr build_binary(const Syn& s) {
    switch (s.bop) {
      case BinOp::And:
        return Expr::and_(expect(*s.kids[0], Sort::Bool, "operand of '&&'"),
                          expect(*s.kids[1], Sort::Bool, "operand of '&&'"));
      case BinOp::Or:
        return Expr::or_(expect(*s.kids[0], Sort::Bool, "operand of '||'"),
                         expect(*s.kids[1], Sort::Bool, "operand of '||'"));
      case BinOp::Implies:
        return Expr::implies(expect(*s.kids[0], Sort::Bool, "operand of '->'"),
                             expect(*s.kids[1], Sort::Bool, "operand of '->'"));
      default:
        break;
    }
    ExprPtr a = build(*s.kids[0]);
    ExprPtr b = build(*s.kids[1]);
    const Sort sa = a->sort();
    const Sort sb = b->sort();
    switch (s.bop) {
      case BinOp::Add:
      case BinOp::Sub: {
        const bool add = s.bop == BinOp::Add;
        if (sa == Sort::Int && sb == Sort::Int) {
          return add ? Expr::int_add(std::move(a), std::move(b))
                     : Expr::int_sub(std::move(a), std::move(b));
        }
        if (sa == Sort::Date && sb == Sort::Period) {
          return add ? Expr::date_add_period(std::move(a), std::move(b))
                     : Expr::date_sub_period(std::move(a), std::move(b));
        }
        if (sa == Sort::Period && sb == Sort::Period) {
          return add ? Expr::period_add(std::move(a), std::move(b))
                     : Expr::period_sub(std::move(a), std::move(b));
        }
        mismatch(s, a, b, add ? "+" : "-");
      }
      case BinOp::Mul: {
        const bool ga = sa == Sort::Int && is_ground_int(*a);
        const bool gb = sb == Sort::Int && is_ground_int(*b);
        if (sa == Sort::Int && sb == Sort::Int) {
          if (ga) return Expr::int_mul_const(eval_ground_int(*a), std::move(b));
          if (gb) return Expr::int_mul_const(eval_ground_int(*b), std::move(a));
          throw SortError("multiplication needs a constant operand", s.line, s.col);
        }
        if (sa == Sort::Period && sb == Sort::Int) {
          if (!gb) throw SortError("periods can only be scaled by constants", s.line, s.col);
          return Expr::period_scale(eval_ground_int(*b), std::move(a));
        }
        if (sa == Sort::Int && sb == Sort::Period) {
          if (!ga) throw SortError("periods can only be scaled by constants", s.line, s.col);
          return Expr::period_scale(eval_ground_int(*a), std::move(b));
        }
        mismatch(s, a, b, "*");
      }
      case BinOp::Cmp:
      case BinOp::LooseEq: {
        if (sa != sb) mismatch(s, a, b, std::string(to_string(s.cmp)).c_str());
        if (sa == Sort::Period) throw SortError("periods cannot be compared", s.line, s.col);
        if (sa == Sort::Int) return Expr::int_cmp(s.cmp, std::move(a), std::move(b));
        if (sa == Sort::Date) return Expr::date_cmp(s.cmp, std::move(a), std::move(b));
        if (s.cmp == CmpOp::Eq) return Expr::iff(std::move(a), std::move(b));
        if (s.cmp == CmpOp::Ne) return Expr::xor_(std::move(a), std::move(b));
        throw SortError("booleans cannot be ordered", s.line, s.col);
      }
      default:
        break;
    }
    throw SortError("unhandled operator", s.line, s.col);
  }

  SortMap vars_;
  bool strict_;
  bool changed_ = false;

 public:
  const SortMap& vars() const { return vars_; }
};

}  // namespace

ExprPtr parse(std::string_view text) {
  Parser p(tokenize(text), nullptr);
  auto syn = p.parse_constraint();
  Typer typer({}, false);
  typer.infer(*syn);
  return typer.build(*syn);
}

ExprPtr parse(std::string_view text, const Declarations& declarations) {
  Parser p(tokenize(text), &declarations);
  auto syn = p.parse_constraint();
  Typer typer(declarations, true);
  typer.infer(*syn);
  return typer.build(*syn);
}

Declarations infer_sorts(std::string_view text) {
  Parser p(tokenize(text), nullptr);
  auto syn = p.parse_constraint();
  Typer typer({}, false);
  typer.infer(*syn);
  return typer.vars();
}

}  // namespace datesat
