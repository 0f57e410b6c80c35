#ifndef SCALEVAR_EXPR_HPP
#define SCALEVAR_EXPR_HPP

// Expression language for Lagrangians L(x, y, v1..vn[, xi]).
//
// Grammar (precedence: power > unary minus > * / > + -):
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' ['-'] integer)*
//   primary := number | 'i' | 'x' | 'y' | 'v'k | 'xi'
//            | name ['(' 'x' ')']        -- bound external reference
//            | ('sin' | 'cos' | 'exp') '(' expr ')'
//            | '(' expr ')'

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scalevar/epsilon.hpp"
#include "scalevar/function_handle.hpp"

namespace scalevar {

struct Variable {
  enum class Kind { x, y, v, xi };
  Kind kind = Kind::x;
  int index = 0;  // 1..n for v

  static Variable x() { return {Kind::x, 0}; }
  static Variable y() { return {Kind::y, 0}; }
  static Variable v(int k) { return {Kind::v, k}; }
  static Variable xi() { return {Kind::xi, 0}; }

  friend bool operator==(const Variable&, const Variable&) = default;
};

std::string to_string(const Variable& var);

enum class Op { constant, variable, external, add, sub, mul, div, pow, neg, sin, cos, exp };

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
  Op op = Op::constant;
  Complex value{};   // constant
  Variable var{};    // variable
  std::string name;  // external
  int exponent = 0;  // pow
  Expr lhs;          // first operand (unary ops use lhs only)
  Expr rhs;
};

namespace expr {

// Raw constructors build exactly the node asked for.
Expr make_constant(Complex value);
Expr make_variable(Variable var);
Expr make_external(std::string name);
Expr make_binary(Op op, Expr lhs, Expr rhs);
Expr make_unary(Op op, Expr operand);
Expr make_pow(Expr base, int exponent);

// Folding constructors: 0/1 identities only, plus negation of real constants.
Expr add(Expr lhs, Expr rhs);
Expr sub(Expr lhs, Expr rhs);
Expr mul(Expr lhs, Expr rhs);
Expr div(Expr lhs, Expr rhs);
Expr pow(Expr base, int exponent);
Expr neg(Expr operand);

bool is_constant(const Expr& e, Complex value);

}  // namespace expr

/// Declared variable set of a Lagrangian expression.
struct Signature {
  int n = 1;
  bool has_param = false;
  std::vector<std::string> externals;
};

/// Parse text into an AST. Throws ErrorKind::parse (with position) or
/// ErrorKind::undeclared_variable.
Expr parse(std::string_view text, const Signature& signature);

/// Text that parses back into a structurally identical tree.
std::string print(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);
bool contains_external(const Expr& e);

/// u = (x, y, v_1..v_n[, xi]).
struct ArgVector {
  double x = 0.0;
  Complex y{};
  std::vector<Complex> v;
  std::optional<Complex> param;
};

/// External reference: a handle of x that may depend on the ambient epsilons.
struct Binding {
  std::function<Complex(double, const EpsilonVector&)> fn;
  /// Kinks of x -> fn(x, eps); used to split quadrature panels.
  std::function<std::vector<double>(const EpsilonVector&)> breakpoints;
};

using BindingTable = std::map<std::string, Binding, std::less<>>;

/// Throws division_by_zero on an exact-zero denominator and unbound_reference
/// for external names missing from the table.
Complex eval_expr(const Expr& e, const ArgVector& u, const EpsilonVector& eps,
                  const BindingTable& bindings = {});

/// Exact symbolic derivative. External references are constant in y, v_k and
/// xi; differentiating one with respect to x throws invalid_argument.
Expr diff_expr(const Expr& e, const Variable& var);

}  // namespace scalevar

#endif  // SCALEVAR_EXPR_HPP
