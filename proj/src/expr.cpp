#include "scalevar/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "scalevar/error.hpp"

namespace scalevar {

std::string to_string(const Variable& var) {
  switch (var.kind) {
    case Variable::Kind::x: return "x";
    case Variable::Kind::y: return "y";
    case Variable::Kind::v: return "v" + std::to_string(var.index);
    case Variable::Kind::xi: return "xi";
  }
  return "?";
}

namespace expr {

Expr make_constant(Complex value) {
  auto n = std::make_shared<Node>();
  n->op = Op::constant;
  n->value = value;
  return n;
}

Expr make_variable(Variable var) {
  auto n = std::make_shared<Node>();
  n->op = Op::variable;
  n->var = var;
  return n;
}

Expr make_external(std::string name) {
  auto n = std::make_shared<Node>();
  n->op = Op::external;
  n->name = std::move(name);
  return n;
}

Expr make_binary(Op op, Expr lhs, Expr rhs) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

Expr make_unary(Op op, Expr operand) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lhs = std::move(operand);
  return n;
}

Expr make_pow(Expr base, int exponent) {
  auto n = std::make_shared<Node>();
  n->op = Op::pow;
  n->lhs = std::move(base);
  n->exponent = exponent;
  return n;
}

bool is_constant(const Expr& e, Complex value) {
  return e->op == Op::constant && e->value == value;
}

Expr add(Expr lhs, Expr rhs) {
  if (is_constant(lhs, 0.0)) return rhs;
  if (is_constant(rhs, 0.0)) return lhs;
  return make_binary(Op::add, std::move(lhs), std::move(rhs));
}

Expr sub(Expr lhs, Expr rhs) {
  if (is_constant(rhs, 0.0)) return lhs;
  if (is_constant(lhs, 0.0)) return neg(std::move(rhs));
  return make_binary(Op::sub, std::move(lhs), std::move(rhs));
}

Expr mul(Expr lhs, Expr rhs) {
  if (is_constant(lhs, 0.0) || is_constant(rhs, 0.0)) return make_constant(0.0);
  if (is_constant(lhs, 1.0)) return rhs;
  if (is_constant(rhs, 1.0)) return lhs;
  return make_binary(Op::mul, std::move(lhs), std::move(rhs));
}

Expr div(Expr lhs, Expr rhs) {
  if (is_constant(lhs, 0.0)) return make_constant(0.0);
  if (is_constant(rhs, 1.0)) return lhs;
  return make_binary(Op::div, std::move(lhs), std::move(rhs));
}

Expr pow(Expr base, int exponent) {
  if (exponent == 0) return make_constant(1.0);
  if (exponent == 1) return base;
  return make_pow(std::move(base), exponent);
}

Expr neg(Expr operand) {
  if (operand->op == Op::constant && operand->value.imag() == 0.0) {
    return make_constant(-operand->value);
  }
  return make_unary(Op::neg, std::move(operand));
}

}  // namespace expr

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Token {
  enum class Kind { number, ident, symbol, end };
  Kind kind = Kind::end;
  std::string text;
  double number = 0.0;
  std::size_t pos = 0;
};

[[noreturn]] void parse_error(std::size_t pos, const std::string& what) {
  throw Error(ErrorKind::parse, "parse error at position " + std::to_string(pos) + ": " + what);
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token tok;
    tok.pos = i;
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t j = i;
      while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '.'))
        ++j;
      if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
        if (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) {
          while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
          j = k;
        }
      }
      tok.kind = Token::Kind::number;
      tok.text = std::string(text.substr(i, j - i));
      const auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + j, tok.number);
      if (ec != std::errc() || ptr != text.data() + j) parse_error(i, "malformed number '" + tok.text + "'");
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      tok.kind = Token::Kind::ident;
      tok.text = std::string(text.substr(i, j - i));
      i = j;
    } else if (std::string_view("+-*/^()").find(c) != std::string_view::npos) {
      tok.kind = Token::Kind::symbol;
      tok.text = std::string(1, c);
      ++i;
    } else {
      parse_error(i, std::string("unexpected character '") + c + "'");
    }
    out.push_back(std::move(tok));
  }
  Token end;
  end.kind = Token::Kind::end;
  end.pos = text.size();
  out.push_back(end);
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, const Signature& sig) : tokens_(std::move(tokens)), sig_(sig) {}

  Expr parse_all() {
    Expr e = parse_expr();
    if (peek().kind != Token::Kind::end) parse_error(peek().pos, "unexpected '" + peek().text + "'");
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  bool is_symbol(const Token& t, char c) const {
    return t.kind == Token::Kind::symbol && t.text[0] == c;
  }
  void expect(char c) {
    if (!is_symbol(peek(), c)) parse_error(peek().pos, std::string("expected '") + c + "'");
    next();
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    while (is_symbol(peek(), '+') || is_symbol(peek(), '-')) {
      const Op op = next().text[0] == '+' ? Op::add : Op::sub;
      lhs = expr::make_binary(op, lhs, parse_term());
    }
    return lhs;
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    while (is_symbol(peek(), '*') || is_symbol(peek(), '/')) {
      const Op op = next().text[0] == '*' ? Op::mul : Op::div;
      lhs = expr::make_binary(op, lhs, parse_unary());
    }
    return lhs;
  }

  Expr parse_unary() {
    if (is_symbol(peek(), '-')) {
      // "-<number>" not followed by '^' is a negative literal.
      if (peek(1).kind == Token::Kind::number && !is_symbol(peek(2), '^')) {
        next();
        return expr::make_constant(-next().number);
      }
      next();
      return expr::make_unary(Op::neg, parse_unary());
    }
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    while (is_symbol(peek(), '^')) {
      next();
      bool negative = false;
      if (is_symbol(peek(), '-')) {
        next();
        negative = true;
      }
      const Token& t = peek();
      if (t.kind != Token::Kind::number || t.number != std::floor(t.number) ||
          t.text.find_first_of(".eE") != std::string::npos || std::abs(t.number) > 1e6) {
        parse_error(t.pos, "exponent must be an integer literal");
      }
      next();
      const int k = static_cast<int>(t.number);
      base = expr::make_pow(base, negative ? -k : k);
    }
    return base;
  }

  Expr parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Token::Kind::number: next(); return expr::make_constant(t.number);
      case Token::Kind::symbol:
        if (is_symbol(t, '(')) {
          next();
          Expr e = parse_expr();
          expect(')');
          return e;
        }
        parse_error(t.pos, "unexpected '" + t.text + "'");
      case Token::Kind::end: parse_error(t.pos, "unexpected end of input");
      case Token::Kind::ident: break;
    }
    next();
    const std::string& id = t.text;
    if (id == "i") return expr::make_constant(Complex(0.0, 1.0));
    if (id == "x") return expr::make_variable(Variable::x());
    if (id == "y") return expr::make_variable(Variable::y());
    if (id == "xi") {
      if (!sig_.has_param) throw Error(ErrorKind::undeclared_variable, "parameter 'xi' is not declared");
      return expr::make_variable(Variable::xi());
    }
    if (id == "sin" || id == "cos" || id == "exp") {
      const Op op = id == "sin" ? Op::sin : (id == "cos" ? Op::cos : Op::exp);
      expect('(');
      Expr arg = parse_expr();
      expect(')');
      return expr::make_unary(op, arg);
    }
    if (id.size() > 1 && id[0] == 'v' &&
        std::all_of(id.begin() + 1, id.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      const int k = std::stoi(id.substr(1));
      if (k < 1 || k > sig_.n) {
        throw Error(ErrorKind::undeclared_variable,
                    "variable '" + id + "' outside declared arity n = " + std::to_string(sig_.n));
      }
      return expr::make_variable(Variable::v(k));
    }
    if (std::find(sig_.externals.begin(), sig_.externals.end(), id) != sig_.externals.end()) {
      if (is_symbol(peek(), '(')) {
        next();
        const Token& arg = peek();
        if (arg.kind != Token::Kind::ident || arg.text != "x")
          parse_error(arg.pos, "external reference '" + id + "' takes the argument x");
        next();
        expect(')');
      }
      return expr::make_external(id);
    }
    throw Error(ErrorKind::undeclared_variable,
                "undeclared identifier '" + id + "' at position " + std::to_string(t.pos));
  }

  std::vector<Token> tokens_;
  const Signature& sig_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text, const Signature& signature) {
  if (signature.n < 0) throw Error(ErrorKind::invalid_argument, "arity n must be nonnegative");
  auto tokens = tokenize(text);
  if (tokens.size() == 1) parse_error(0, "empty expression");
  return Parser(std::move(tokens), signature).parse_all();
}

// ---------------------------------------------------------------------------
// Printing

namespace {

int precedence(const Expr& e) {
  switch (e->op) {
    case Op::add:
    case Op::sub: return 1;
    case Op::mul:
    case Op::div: return 2;
    case Op::neg: return 3;
    case Op::pow: return 4;
    case Op::constant: return e->value.imag() != 0.0 && e->value != Complex(0.0, 1.0) ? 1
                              : (e->value.real() < 0.0 || std::signbit(e->value.real())) ? 3
                                                                                      : 5;
    default: return 5;
  }
}

std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

void print_to(std::ostream& os, const Expr& e);

void print_wrapped(std::ostream& os, const Expr& e, bool wrap) {
  if (wrap) os << '(';
  print_to(os, e);
  if (wrap) os << ')';
}

void print_to(std::ostream& os, const Expr& e) {
  switch (e->op) {
    case Op::constant:
      if (e->value == Complex(0.0, 1.0)) {
        os << 'i';
      } else if (e->value.imag() == 0.0) {
        os << format_real(e->value.real());
      } else {
        os << format_real(e->value.real()) << '+' << format_real(e->value.imag()) << "*i";
      }
      return;
    case Op::variable: os << to_string(e->var); return;
    case Op::external: os << e->name << "(x)"; return;
    case Op::add:
    case Op::sub:
    case Op::mul:
    case Op::div: {
      const int p = precedence(e);
      print_wrapped(os, e->lhs, precedence(e->lhs) < p);
      const char sym = e->op == Op::add ? '+' : e->op == Op::sub ? '-' : e->op == Op::mul ? '*' : '/';
      if (p == 1) {
        os << ' ' << sym << ' ';
      } else {
        os << sym;
      }
      print_wrapped(os, e->rhs, precedence(e->rhs) <= p);
      return;
    }
    case Op::neg: {
      os << '-';
      // A bare constant operand would re-parse as a negative literal.
      print_wrapped(os, e->lhs, precedence(e->lhs) < 3 || e->lhs->op == Op::constant);
      return;
    }
    case Op::pow:
      print_wrapped(os, e->lhs, precedence(e->lhs) <= 4);
      os << '^' << e->exponent;
      return;
    case Op::sin:
    case Op::cos:
    case Op::exp:
      os << (e->op == Op::sin ? "sin(" : e->op == Op::cos ? "cos(" : "exp(");
      print_to(os, e->lhs);
      os << ')';
      return;
  }
}

}  // namespace

std::string print(const Expr& e) {
  std::ostringstream os;
  print_to(os, e);
  return os.str();
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a == b) return true;
  if (!a || !b || a->op != b->op) return false;
  switch (a->op) {
    case Op::constant: return a->value == b->value;
    case Op::variable: return a->var == b->var;
    case Op::external: return a->name == b->name;
    case Op::pow: return a->exponent == b->exponent && structurally_equal(a->lhs, b->lhs);
    case Op::neg:
    case Op::sin:
    case Op::cos:
    case Op::exp: return structurally_equal(a->lhs, b->lhs);
    default: return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
  }
}

bool contains_external(const Expr& e) {
  if (!e) return false;
  if (e->op == Op::external) return true;
  return contains_external(e->lhs) || contains_external(e->rhs);
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

Complex int_pow(Complex base, int exponent) {
  const bool invert = exponent < 0;
  unsigned n = static_cast<unsigned>(invert ? -static_cast<long>(exponent) : exponent);
  Complex result = 1.0;
  Complex factor = base;
  while (n > 0) {
    if (n & 1u) result *= factor;
    n >>= 1u;
    if (n > 0) factor *= factor;
  }
  if (invert) {
    if (result == Complex(0.0)) throw Error(ErrorKind::division_by_zero, "negative power of zero");
    return 1.0 / result;
  }
  return result;
}

}  // namespace

Complex eval_expr(const Expr& e, const ArgVector& u, const EpsilonVector& eps,
                  const BindingTable& bindings) {
  switch (e->op) {
    case Op::constant: return e->value;
    case Op::variable:
      switch (e->var.kind) {
        case Variable::Kind::x: return u.x;
        case Variable::Kind::y: return u.y;
        case Variable::Kind::v: {
          const auto k = static_cast<std::size_t>(e->var.index);
          if (k < 1 || k > u.v.size()) {
            throw Error(ErrorKind::invalid_argument,
                        "argument vector has no slot " + to_string(e->var));
          }
          return u.v[k - 1];
        }
        case Variable::Kind::xi:
          if (!u.param) throw Error(ErrorKind::invalid_argument, "parameter xi not supplied");
          return *u.param;
      }
      break;
    case Op::external: {
      const auto it = bindings.find(e->name);
      if (it == bindings.end() || !it->second.fn) {
        throw Error(ErrorKind::unbound_reference, "external reference '" + e->name + "' is unbound");
      }
      return it->second.fn(u.x, eps);
    }
    case Op::add: return eval_expr(e->lhs, u, eps, bindings) + eval_expr(e->rhs, u, eps, bindings);
    case Op::sub: return eval_expr(e->lhs, u, eps, bindings) - eval_expr(e->rhs, u, eps, bindings);
    case Op::mul: return eval_expr(e->lhs, u, eps, bindings) * eval_expr(e->rhs, u, eps, bindings);
    case Op::div: {
      const Complex den = eval_expr(e->rhs, u, eps, bindings);
      if (den == Complex(0.0)) throw Error(ErrorKind::division_by_zero, "division by zero");
      return eval_expr(e->lhs, u, eps, bindings) / den;
    }
    case Op::pow: return int_pow(eval_expr(e->lhs, u, eps, bindings), e->exponent);
    case Op::neg: return -eval_expr(e->lhs, u, eps, bindings);
    case Op::sin: return std::sin(eval_expr(e->lhs, u, eps, bindings));
    case Op::cos: return std::cos(eval_expr(e->lhs, u, eps, bindings));
    case Op::exp: return std::exp(eval_expr(e->lhs, u, eps, bindings));
  }
  throw Error(ErrorKind::invalid_argument, "malformed expression node");
}

// ---------------------------------------------------------------------------
// Differentiation

Expr diff_expr(const Expr& e, const Variable& var) {
  using namespace expr;
  switch (e->op) {
    case Op::constant: return make_constant(0.0);
    case Op::variable: return make_constant(e->var == var ? 1.0 : 0.0);
    case Op::external:
      if (var.kind == Variable::Kind::x) {
        throw Error(ErrorKind::invalid_argument,
                    "external reference '" + e->name + "' has no symbolic x-derivative");
      }
      return make_constant(0.0);
    case Op::add: return add(diff_expr(e->lhs, var), diff_expr(e->rhs, var));
    case Op::sub: return sub(diff_expr(e->lhs, var), diff_expr(e->rhs, var));
    case Op::mul:
      return add(mul(diff_expr(e->lhs, var), e->rhs), mul(e->lhs, diff_expr(e->rhs, var)));
    case Op::div: {
      Expr num = sub(mul(diff_expr(e->lhs, var), e->rhs), mul(e->lhs, diff_expr(e->rhs, var)));
      return div(num, pow(e->rhs, 2));
    }
    case Op::pow:
      return mul(mul(make_constant(static_cast<double>(e->exponent)), pow(e->lhs, e->exponent - 1)),
                 diff_expr(e->lhs, var));
    case Op::neg: return neg(diff_expr(e->lhs, var));
    case Op::sin: return mul(make_unary(Op::cos, e->lhs), diff_expr(e->lhs, var));
    case Op::cos: return neg(mul(make_unary(Op::sin, e->lhs), diff_expr(e->lhs, var)));
    case Op::exp: return mul(e, diff_expr(e->lhs, var));
  }
  throw Error(ErrorKind::invalid_argument, "malformed expression node");
}

}  // namespace scalevar
