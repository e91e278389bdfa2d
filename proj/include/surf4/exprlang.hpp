#pragma once

// Expression language for user-defined charts.
//
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := "-" factor | power
//   power  := atom ("^" factor)?
//   atom   := number | "u" | "v" | "pi" | "e" | ident "(" expr ")" | "(" expr ")"
//
// Functions: sin cos tan exp log sqrt sinh cosh tanh abs sign. Identifiers are
// case-sensitive. `sign` is what `abs` differentiates to; it is parseable so that
// printed derivatives can be read back.

#include "surf4/chart.hpp"
#include "surf4/errors.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace surf4::expr {

enum class Var { U, V };
enum class Constant { Pi, E };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class Function { Sin, Cos, Tan, Exp, Log, Sqrt, Sinh, Cosh, Tanh, Abs, Sign };

class Expr;

struct Literal {
  long double value;
};
struct NamedConstant {
  Constant which;
};
struct Variable {
  Var which;
};
struct Negate;
struct Binary;
struct Call;

using Node = std::variant<Literal, NamedConstant, Variable, Negate, Binary, Call>;

/// Immutable expression tree with shared subtrees.
class Expr {
 public:
  Expr();
  explicit Expr(Node node);

  const Node& node() const;

 private:
  std::shared_ptr<const Node> node_;
};

struct Negate {
  Expr operand;
};
struct Binary {
  BinaryOp op;
  Expr lhs;
  Expr rhs;
};
struct Call {
  Function fn;
  Expr arg;
};

inline Expr::Expr() : Expr(Node{Literal{0.0L}}) {}
inline Expr::Expr(Node node) : node_(std::make_shared<const Node>(std::move(node))) {}
inline const Node& Expr::node() const { return *node_; }

namespace detail {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct FunctionName {
  Function fn;
  std::string_view name;
};

inline constexpr std::array<FunctionName, 11> kFunctions{{
    {Function::Sin, "sin"},
    {Function::Cos, "cos"},
    {Function::Tan, "tan"},
    {Function::Exp, "exp"},
    {Function::Log, "log"},
    {Function::Sqrt, "sqrt"},
    {Function::Sinh, "sinh"},
    {Function::Cosh, "cosh"},
    {Function::Tanh, "tanh"},
    {Function::Abs, "abs"},
    {Function::Sign, "sign"},
}};

inline std::string_view function_name(Function fn) {
  for (const auto& f : kFunctions)
    if (f.fn == fn) return f.name;
  return "?";
}

inline std::optional<Function> lookup_function(std::string_view name) {
  for (const auto& f : kFunctions)
    if (f.name == name) return f.fn;
  return std::nullopt;
}

template <class T>
T apply(Function fn, T x) {
  using std::abs, std::cos, std::cosh, std::exp, std::log, std::sin, std::sinh, std::sqrt, std::tan, std::tanh;
  switch (fn) {
    case Function::Sin: return sin(x);
    case Function::Cos: return cos(x);
    case Function::Tan: return tan(x);
    case Function::Exp: return exp(x);
    case Function::Log: return log(x);
    case Function::Sqrt: return sqrt(x);
    case Function::Sinh: return sinh(x);
    case Function::Cosh: return cosh(x);
    case Function::Tanh: return tanh(x);
    case Function::Abs: return abs(x);
    case Function::Sign: return static_cast<T>((x > T(0)) - (x < T(0)));
  }
  return x;
}

/// Power with the negative-base contract: a non-integer exponent of a negative base is an error.
template <class T>
T power(T base, T exponent) {
  if (base < T(0) && std::trunc(exponent) != exponent)
    throw EvalError("negative base raised to a non-integer exponent");
  return std::pow(base, exponent);
}

template <class T>
T apply(BinaryOp op, T a, T b) {
  switch (op) {
    case BinaryOp::Add: return a + b;
    case BinaryOp::Sub: return a - b;
    case BinaryOp::Mul: return a * b;
    case BinaryOp::Div: return a / b;
    case BinaryOp::Pow: return power(a, b);
  }
  return a;
}

/// Shortest decimal form that reads back to the same long double.
inline std::string format_literal(long double value) {
  char buf[64];
  for (int digits = 1; digits <= 21; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*Lg", digits, value);
    if (std::strtold(buf, nullptr) == value) break;
  }
  return buf;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// construction

inline Expr literal(long double value) { return Expr(Node{Literal{value}}); }
inline Expr variable(Var v) { return Expr(Node{Variable{v}}); }
inline Expr constant(Constant c) { return Expr(Node{NamedConstant{c}}); }
inline Expr negate(Expr a) { return Expr(Node{Negate{std::move(a)}}); }
inline Expr binary(BinaryOp op, Expr a, Expr b) { return Expr(Node{Binary{op, std::move(a), std::move(b)}}); }
inline Expr call(Function fn, Expr a) { return Expr(Node{Call{fn, std::move(a)}}); }

inline const Literal* as_literal(const Expr& e) { return std::get_if<Literal>(&e.node()); }

/// True when the expression does not reference `var`.
inline bool independent_of(const Expr& e, Var var) {
  return std::visit(detail::overloaded{
                        [](const Literal&) { return true; },
                        [](const NamedConstant&) { return true; },
                        [&](const Variable& x) { return x.which != var; },
                        [&](const Negate& n) { return independent_of(n.operand, var); },
                        [&](const Binary& b) { return independent_of(b.lhs, var) && independent_of(b.rhs, var); },
                        [&](const Call& c) { return independent_of(c.arg, var); },
                    },
                    e.node());
}

inline bool is_constant(const Expr& e) { return independent_of(e, Var::U) && independent_of(e, Var::V); }

// ---------------------------------------------------------------------------
// evaluation

/// Evaluates at (u,v). Any non-finite intermediate value raises EvalError.
template <class T = double>
T evaluate(const Expr& e, T u, T v) {
  const auto check = [](T x, const char* what) {
    if (!std::isfinite(x)) throw EvalError(std::string("non-finite value in ") + what);
    return x;
  };
  return std::visit(
      detail::overloaded{
          [](const Literal& l) { return static_cast<T>(l.value); },
          [](const NamedConstant& c) { return c.which == Constant::Pi ? std::numbers::pi_v<T> : std::numbers::e_v<T>; },
          [&](const Variable& x) { return x.which == Var::U ? u : v; },
          [&](const Negate& n) { return -evaluate<T>(n.operand, u, v); },
          [&](const Binary& b) {
            return check(detail::apply(b.op, evaluate<T>(b.lhs, u, v), evaluate<T>(b.rhs, u, v)), "operator");
          },
          [&](const Call& c) {
            return check(detail::apply(c.fn, evaluate<T>(c.arg, u, v)), detail::function_name(c.fn).data());
          },
      },
      e.node());
}

// ---------------------------------------------------------------------------
// differentiation

namespace detail {

// Builders used by the differentiator. They fold literal-only subtrees and drop the
// literal 0s and 1s that the product and chain rules introduce; nothing else is simplified.
inline Expr fold_negate(Expr a) {
  if (const auto* l = as_literal(a)) return literal(l->value == 0 ? 0 : -l->value);
  if (const auto* n = std::get_if<Negate>(&a.node())) return n->operand;
  return negate(std::move(a));
}

inline Expr fold_binary(BinaryOp op, Expr a, Expr b) {
  const auto* la = as_literal(a);
  const auto* lb = as_literal(b);
  if (la && lb) {
    try {
      const long double r = apply(op, la->value, lb->value);
      if (std::isfinite(r)) return literal(r);
    } catch (const EvalError&) {
    }
  }
  // neutral and absorbing literals produced by the product and chain rules
  const auto is = [](const Literal* l, long double x) { return l && l->value == x; };
  switch (op) {
    case BinaryOp::Add:
      if (is(la, 0)) return b;
      if (is(lb, 0)) return a;
      break;
    case BinaryOp::Sub:
      if (is(lb, 0)) return a;
      if (is(la, 0)) return fold_negate(std::move(b));
      break;
    case BinaryOp::Mul:
      if (is(la, 0) || is(lb, 0)) return literal(0);
      if (is(la, 1)) return b;
      if (is(lb, 1)) return a;
      break;
    case BinaryOp::Div:
      if (is(la, 0)) return literal(0);
      if (is(lb, 1)) return a;
      break;
    case BinaryOp::Pow:
      if (is(lb, 0)) return literal(1);
      if (is(lb, 1)) return a;
      break;
  }
  return binary(op, std::move(a), std::move(b));
}

inline Expr fold_call(Function fn, Expr a) {
  if (const auto* l = as_literal(a)) {
    const long double r = apply(fn, l->value);
    if (std::isfinite(r)) return literal(r);
  }
  return call(fn, std::move(a));
}

inline Expr add(Expr a, Expr b) { return fold_binary(BinaryOp::Add, std::move(a), std::move(b)); }
inline Expr sub(Expr a, Expr b) { return fold_binary(BinaryOp::Sub, std::move(a), std::move(b)); }
inline Expr mul(Expr a, Expr b) { return fold_binary(BinaryOp::Mul, std::move(a), std::move(b)); }
inline Expr div(Expr a, Expr b) { return fold_binary(BinaryOp::Div, std::move(a), std::move(b)); }
inline Expr pow(Expr a, Expr b) { return fold_binary(BinaryOp::Pow, std::move(a), std::move(b)); }

}  // namespace detail

/// Symbolic partial derivative. Correct but unsimplified beyond literal folding.
/// d|f| = sign(f) df, so the derivative of abs at 0 evaluates to 0.
inline Expr differentiate(const Expr& e, Var var) {
  using namespace detail;
  return std::visit(
      overloaded{
          [](const Literal&) { return literal(0); },
          [](const NamedConstant&) { return literal(0); },
          [&](const Variable& x) { return literal(x.which == var ? 1 : 0); },
          [&](const Negate& n) { return fold_negate(differentiate(n.operand, var)); },
          [&](const Binary& b) -> Expr {
            const Expr& f = b.lhs;
            const Expr& g = b.rhs;
            switch (b.op) {
              case BinaryOp::Add: return add(differentiate(f, var), differentiate(g, var));
              case BinaryOp::Sub: return sub(differentiate(f, var), differentiate(g, var));
              case BinaryOp::Mul:
                return add(mul(differentiate(f, var), g), mul(f, differentiate(g, var)));
              case BinaryOp::Div:
                return div(sub(mul(differentiate(f, var), g), mul(f, differentiate(g, var))), mul(g, g));
              case BinaryOp::Pow:
                if (independent_of(g, var)) {
                  return mul(mul(g, pow(f, sub(g, literal(1)))), differentiate(f, var));
                }
                return mul(pow(f, g), add(mul(differentiate(g, var), fold_call(Function::Log, f)),
                                          div(mul(g, differentiate(f, var)), f)));
            }
            return literal(0);
          },
          [&](const Call& c) -> Expr {
            const Expr& f = c.arg;
            const Expr df = differentiate(f, var);
            switch (c.fn) {
              case Function::Sin: return mul(fold_call(Function::Cos, f), df);
              case Function::Cos: return mul(fold_negate(fold_call(Function::Sin, f)), df);
              case Function::Tan: return div(df, pow(fold_call(Function::Cos, f), literal(2)));
              case Function::Exp: return mul(fold_call(Function::Exp, f), df);
              case Function::Log: return div(df, f);
              case Function::Sqrt: return div(df, mul(literal(2), fold_call(Function::Sqrt, f)));
              case Function::Sinh: return mul(fold_call(Function::Cosh, f), df);
              case Function::Cosh: return mul(fold_call(Function::Sinh, f), df);
              case Function::Tanh: return div(df, pow(fold_call(Function::Cosh, f), literal(2)));
              case Function::Abs: return mul(fold_call(Function::Sign, f), df);
              case Function::Sign: return literal(0);
            }
            return literal(0);
          },
      },
      e.node());
}

// ---------------------------------------------------------------------------
// printing

namespace detail {

// 1: + -, 2: * /, 3: unary minus, 4: ^, 5: atom
inline int precedence(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add:
    case BinaryOp::Sub: return 1;
    case BinaryOp::Mul:
    case BinaryOp::Div: return 2;
    case BinaryOp::Pow: return 4;
  }
  return 1;
}

inline int precedence(const Expr& e) {
  return std::visit(overloaded{
                        [](const Literal& l) { return l.value < 0 || std::signbit(l.value) ? 3 : 5; },
                        [](const NamedConstant&) { return 5; },
                        [](const Variable&) { return 5; },
                        [](const Negate&) { return 3; },
                        [](const Binary& b) { return precedence(b.op); },
                        [](const Call&) { return 5; },
                    },
                    e.node());
}

inline char op_char(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return '+';
    case BinaryOp::Sub: return '-';
    case BinaryOp::Mul: return '*';
    case BinaryOp::Div: return '/';
    case BinaryOp::Pow: return '^';
  }
  return '?';
}

inline std::string_view op_name(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "Add";
    case BinaryOp::Sub: return "Sub";
    case BinaryOp::Mul: return "Mul";
    case BinaryOp::Div: return "Div";
    case BinaryOp::Pow: return "Pow";
  }
  return "?";
}

}  // namespace detail

/// Infix form that parses back to an equivalent tree.
inline std::string to_string(const Expr& e) {
  using namespace detail;
  const auto wrap = [](const Expr& x, bool parens) {
    return parens ? "(" + to_string(x) + ")" : to_string(x);
  };
  return std::visit(
      overloaded{
          [](const Literal& l) { return format_literal(l.value); },
          [](const NamedConstant& c) { return std::string(c.which == Constant::Pi ? "pi" : "e"); },
          [](const Variable& x) { return std::string(x.which == Var::U ? "u" : "v"); },
          [&](const Negate& n) { return "-" + wrap(n.operand, precedence(n.operand) < 3); },
          [&](const Binary& b) {
            if (b.op == BinaryOp::Pow)
              return wrap(b.lhs, precedence(b.lhs) < 5) + "^" + wrap(b.rhs, precedence(b.rhs) < 3);
            const int p = precedence(b.op);
            // keep the tree shape exactly: right operands of equal precedence are parenthesized
            return wrap(b.lhs, precedence(b.lhs) < p) + op_char(b.op) + wrap(b.rhs, precedence(b.rhs) <= p);
          },
          [&](const Call& c) { return std::string(function_name(c.fn)) + "(" + to_string(c.arg) + ")"; },
      },
      e.node());
}

/// Tree form, e.g. "Sub(Pow(u,2),Pow(v,2))".
inline std::string structure(const Expr& e) {
  using namespace detail;
  return std::visit(
      overloaded{
          [](const Literal& l) { return format_literal(l.value); },
          [](const NamedConstant& c) { return std::string(c.which == Constant::Pi ? "pi" : "e"); },
          [](const Variable& x) { return std::string(x.which == Var::U ? "u" : "v"); },
          [](const Negate& n) { return "Neg(" + structure(n.operand) + ")"; },
          [](const Binary& b) {
            return std::string(op_name(b.op)) + "(" + structure(b.lhs) + "," + structure(b.rhs) + ")";
          },
          [](const Call& c) { return "Apply(" + std::string(function_name(c.fn)) + "," + structure(c.arg) + ")"; },
      },
      e.node());
}

// ---------------------------------------------------------------------------
// parsing

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse() {
    skip_space();
    if (at_end()) throw SyntaxError(pos_, "empty expression");
    Expr e = parse_expr();
    skip_space();
    if (!at_end()) throw SyntaxError(pos_, std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (!at_end() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = binary(BinaryOp::Add, std::move(lhs), parse_term());
      } else if (accept('-')) {
        lhs = binary(BinaryOp::Sub, std::move(lhs), parse_term());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_term() {
    Expr lhs = parse_factor();
    for (;;) {
      if (accept('*')) {
        lhs = binary(BinaryOp::Mul, std::move(lhs), parse_factor());
      } else if (accept('/')) {
        lhs = binary(BinaryOp::Div, std::move(lhs), parse_factor());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_factor() {
    if (accept('-')) return negate(parse_factor());
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_atom();
    if (accept('^')) return binary(BinaryOp::Pow, std::move(base), parse_factor());
    return base;
  }

  Expr parse_atom() {
    skip_space();
    if (at_end()) throw SyntaxError(pos_, "unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = parse_expr();
      if (!accept(')')) throw SyntaxError(pos_, "expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    throw SyntaxError(pos_, std::string("unexpected '") + c + "'");
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    const auto digits = [this] {
      std::size_t n = 0;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_, ++n;
      return n;
    };
    std::size_t n = digits();
    if (!at_end() && text_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) throw SyntaxError(start, "malformed number");
    // exponent only when digits follow, so "2e" is not swallowed
    if (!at_end() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        digits();
      }
    }
    const std::string token(text_.substr(start, pos_ - start));
    return literal(std::strtold(token.c_str(), nullptr));
  }

  Expr parse_identifier() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (auto fn = lookup_function(name)) {
      if (!accept('(')) throw SyntaxError(pos_, "expected '(' after " + std::string(name));
      Expr arg = parse_expr();
      if (!accept(')')) throw SyntaxError(pos_, "expected ')'");
      return call(*fn, std::move(arg));
    }
    if (name == "u") return variable(Var::U);
    if (name == "v") return variable(Var::V);
    if (name == "pi") return constant(Constant::Pi);
    if (name == "e") return constant(Constant::E);
    throw UnknownIdentifier(start, "unknown identifier '" + std::string(name) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Expr parse(std::string_view text) { return detail::Parser(text).parse(); }

// ---------------------------------------------------------------------------
// charts

/// Exact-jet chart from four coordinate expressions; partials come from `differentiate`.
inline Chart compile_chart(const std::array<Expr, 4>& coords, const Domain& domain) {
  struct Compiled {
    std::array<Expr, 4> f, fu, fv, fuu, fuv, fvv;
  };
  auto c = std::make_shared<Compiled>();
  for (std::size_t i = 0; i < 4; ++i) {
    c->f[i] = coords[i];
    c->fu[i] = differentiate(coords[i], Var::U);
    c->fv[i] = differentiate(coords[i], Var::V);
    c->fuu[i] = differentiate(c->fu[i], Var::U);
    c->fuv[i] = differentiate(c->fu[i], Var::V);
    c->fvv[i] = differentiate(c->fv[i], Var::V);
  }
  const auto eval4 = [](const std::array<Expr, 4>& e, wide u, wide v) {
    Vec4<wide> r;
    for (int i = 0; i < 4; ++i) r(i) = evaluate<wide>(e[static_cast<std::size_t>(i)], u, v);
    return r;
  };
  auto position = [c, eval4](wide u, wide v) { return eval4(c->f, u, v); };
  auto jet = [c, eval4](wide u, wide v) {
    Jet2<wide> j;
    j.p = eval4(c->f, u, v);
    j.zu = eval4(c->fu, u, v);
    j.zv = eval4(c->fv, u, v);
    j.zuu = eval4(c->fuu, u, v);
    j.zuv = eval4(c->fuv, u, v);
    j.zvv = eval4(c->fvv, u, v);
    return j;
  };
  return Chart::exact(std::move(position), std::move(jet), domain);
}

inline Chart compile_chart(const std::array<std::string, 4>& coords, const Domain& domain) {
  return compile_chart({parse(coords[0]), parse(coords[1]), parse(coords[2]), parse(coords[3])}, domain);
}

}  // namespace surf4::expr
