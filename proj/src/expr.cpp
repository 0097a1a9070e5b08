#include "bour/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <system_error>

#include "bour/error.hpp"

namespace bour {

using Kind = ExprNode::Kind;

namespace {

constexpr double kDivisionFloor = 1e-14;

ExprPtr make_leaf(Kind kind, double value = 0.0) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->value = value;
  return n;
}

ExprPtr make_node(Kind kind, ExprPtr a, ExprPtr b = nullptr, int exponent = 0) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  n->exponent = exponent;
  return n;
}

ExprPtr make_constant(double v) {
  if (v < 0.0) return make_node(Kind::negate, make_leaf(Kind::constant, -v));
  return make_leaf(Kind::constant, v);
}

// ---------------------------------------------------------------- parser

class Parser {
 public:
  Parser(std::string_view text, std::string_view var) : text_(text), var_(var) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail(Errc::syntax, "unexpected character");
    return e;
  }

 private:
  [[noreturn]] void fail(Errc code, const std::string& what) const {
    throw ParseError(code, pos_, what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(Errc::syntax, std::string("expected '") + c + "'");
  }

  ExprPtr expr() {
    ExprPtr e = term();
    for (;;) {
      if (accept('+')) {
        e = make_node(Kind::add, e, term());
      } else if (accept('-')) {
        e = make_node(Kind::sub, e, term());
      } else {
        return e;
      }
    }
  }

  ExprPtr term() {
    ExprPtr e = unary();
    for (;;) {
      if (accept('*')) {
        e = make_node(Kind::mul, e, unary());
      } else if (accept('/')) {
        e = make_node(Kind::div, e, unary());
      } else {
        return e;
      }
    }
  }

  ExprPtr unary() {
    if (accept('-')) return make_node(Kind::negate, unary());
    if (accept('+')) return unary();
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (!accept('^')) return base;
    int n = 0;
    if (accept('(')) {
      n = signed_integer();
      expect(')');
    } else {
      n = signed_integer();
    }
    return make_node(Kind::pow, base, nullptr, n);
  }

  int signed_integer() {
    int sign = 1;
    if (accept('-')) {
      sign = -1;
    } else {
      accept('+');
    }
    skip_ws();
    const std::size_t at = pos_;
    if (!(pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                                  text_[pos_] == '.'))) {
      fail(Errc::non_integer_exponent, "exponent must be an integer literal");
    }
    const double v = number();
    if (v != std::floor(v) || v > 1e6) {
      pos_ = at;
      fail(Errc::non_integer_exponent, "exponent must be an integer literal");
    }
    return sign * static_cast<int>(v);
  }

  double number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t nd = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      nd += digits();
    }
    if (nd == 0) {
      pos_ = start;
      fail(Errc::syntax, "malformed number");
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      const std::size_t save = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = save;
    }
    double v = 0.0;
    auto res = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (res.ec != std::errc() || res.ptr != text_.data() + pos_) {
      pos_ = start;
      fail(Errc::syntax, "malformed number");
    }
    return v;
  }

  ExprPtr primary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      ExprPtr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return make_leaf(Kind::constant, number());
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view id = text_.substr(start, pos_ - start);
      if (id == var_) return make_leaf(Kind::variable);
      Kind k;
      if (id == "sin") {
        k = Kind::sin;
      } else if (id == "cos") {
        k = Kind::cos;
      } else if (id == "sqrt") {
        k = Kind::sqrt;
      } else if (id == "exp") {
        k = Kind::exp;
      } else {
        pos_ = start;
        fail(Errc::unknown_identifier, "unknown identifier '" + std::string(id) + "'");
      }
      expect('(');
      ExprPtr arg = expr();
      expect(')');
      return make_node(k, arg);
    }
    if (c == '\0') fail(Errc::syntax, "unexpected end of input");
    fail(Errc::syntax, std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::string_view var_;
  std::size_t pos_ = 0;
};

// -------------------------------------------------------------- printer

int precedence(const ExprNode& n) {
  switch (n.kind) {
    case Kind::add:
    case Kind::sub: return 1;
    case Kind::mul:
    case Kind::div: return 2;
    case Kind::negate: return 3;
    case Kind::pow: return 4;
    default: return 5;
  }
}

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void print(const ExprNode& n, std::string_view var, std::string& out) {
  auto child = [&](const ExprNode& c, bool parens) {
    if (parens) out += '(';
    print(c, var, out);
    if (parens) out += ')';
  };
  switch (n.kind) {
    case Kind::constant:
      out += format_number(n.value);
      return;
    case Kind::variable:
      out += var;
      return;
    case Kind::negate:
      out += '-';
      child(*n.lhs, precedence(*n.lhs) < 3);
      return;
    case Kind::sin:
    case Kind::cos:
    case Kind::sqrt:
    case Kind::exp: {
      static const char* names[] = {"sin", "cos", "sqrt", "exp"};
      out += names[static_cast<int>(n.kind) - static_cast<int>(Kind::sin)];
      child(*n.lhs, true);
      return;
    }
    case Kind::pow:
      child(*n.lhs, precedence(*n.lhs) < 5);
      out += '^';
      out += std::to_string(n.exponent);
      return;
    default: {
      const int p = precedence(n);
      child(*n.lhs, precedence(*n.lhs) < p);
      switch (n.kind) {
        case Kind::add: out += " + "; break;
        case Kind::sub: out += " - "; break;
        case Kind::mul: out += '*'; break;
        default: out += '/'; break;
      }
      child(*n.rhs, precedence(*n.rhs) <= p);
      return;
    }
  }
}

// ------------------------------------------------------------ evaluation

double lift(double v, double) { return v; }
Jet lift(double v, const Jet& x) { return Jet::constant(x.base(), x.order(), v); }

double checked_div(double a, double b) {
  if (std::abs(b) < kDivisionFloor) throw Error(Errc::domain, "division by zero");
  return a / b;
}
Jet checked_div(const Jet& a, const Jet& b) { return a / b; }

double checked_sqrt(double a) {
  if (a < 0.0) throw Error(Errc::domain, "sqrt of a negative number");
  return std::sqrt(a);
}
Jet checked_sqrt(const Jet& a) { return sqrt(a); }

double int_pow(double a, int n) {
  if (n < 0) return checked_div(1.0, int_pow(a, -n));
  double r = 1.0;
  while (n > 0) {
    if (n & 1) r *= a;
    n >>= 1;
    if (n > 0) a *= a;
  }
  return r;
}
Jet int_pow(const Jet& a, int n) { return pow(a, n); }

template <class T>
T eval(const ExprNode& n, const T& x) {
  using std::cos;
  using std::exp;
  using std::sin;
  switch (n.kind) {
    case Kind::constant: return lift(n.value, x);
    case Kind::variable: return x;
    case Kind::negate: return -eval(*n.lhs, x);
    case Kind::sin: return sin(eval(*n.lhs, x));
    case Kind::cos: return cos(eval(*n.lhs, x));
    case Kind::sqrt: return checked_sqrt(eval(*n.lhs, x));
    case Kind::exp: return exp(eval(*n.lhs, x));
    case Kind::add: return eval(*n.lhs, x) + eval(*n.rhs, x);
    case Kind::sub: return eval(*n.lhs, x) - eval(*n.rhs, x);
    case Kind::mul: return eval(*n.lhs, x) * eval(*n.rhs, x);
    case Kind::div: return checked_div(eval(*n.lhs, x), eval(*n.rhs, x));
    case Kind::pow: return int_pow(eval(*n.lhs, x), n.exponent);
  }
  throw Error(Errc::invalid_argument, "corrupt expression node");
}

SmoothFn from_tree(ExprPtr root, const std::string& var) {
  std::string text = print_expr(*root, var);
  return SmoothFn(std::move(root), std::move(text), var);
}

const std::string& common_variable(const SmoothFn& a, const SmoothFn& b) {
  if (a.variable() != b.variable()) {
    throw Error(Errc::invalid_argument, "functions use different variables");
  }
  return a.variable();
}

SmoothFn binary(Kind k, const SmoothFn& a, const SmoothFn& b) {
  return from_tree(make_node(k, a.root_ptr(), b.root_ptr()), common_variable(a, b));
}

SmoothFn unary_fn(Kind k, const SmoothFn& a) {
  return from_tree(make_node(k, a.root_ptr()), a.variable());
}

}  // namespace

SmoothFn::SmoothFn() : root_(make_leaf(Kind::constant, 0.0)), source_("0"), variable_("s") {}

SmoothFn::SmoothFn(ExprPtr root, std::string source_text, std::string variable)
    : root_(std::move(root)), source_(std::move(source_text)), variable_(std::move(variable)) {
  if (!root_) throw Error(Errc::invalid_argument, "null expression");
}

SmoothFn SmoothFn::parse(std::string_view text, std::string_view variable) {
  Parser p(text, variable);
  return SmoothFn(p.parse(), std::string(text), std::string(variable));
}

SmoothFn SmoothFn::constant(double v, std::string variable) {
  return from_tree(make_constant(v), variable);
}

SmoothFn SmoothFn::identity(std::string variable) {
  return SmoothFn(make_leaf(Kind::variable), variable, variable);
}

double SmoothFn::operator()(double x) const { return eval(*root_, x); }

Jet SmoothFn::jet(double base, int order) const {
  return eval(*root_, Jet::variable(base, order));
}

std::string SmoothFn::to_string() const { return print_expr(*root_, variable_); }

SmoothFn parse_expr(std::string_view text, std::string_view variable) {
  return SmoothFn::parse(text, variable);
}

Jet jet_eval(const SmoothFn& f, double base, int order) { return f.jet(base, order); }

std::string print_expr(const ExprNode& node, std::string_view variable) {
  std::string out;
  print(node, variable, out);
  return out;
}

bool structurally_equal(const ExprNode& a, const ExprNode& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Kind::constant: return a.value == b.value;
    case Kind::variable: return true;
    case Kind::pow: return a.exponent == b.exponent && structurally_equal(*a.lhs, *b.lhs);
    case Kind::add:
    case Kind::sub:
    case Kind::mul:
    case Kind::div:
      return structurally_equal(*a.lhs, *b.lhs) && structurally_equal(*a.rhs, *b.rhs);
    default: return structurally_equal(*a.lhs, *b.lhs);
  }
}

bool structurally_equal(const SmoothFn& a, const SmoothFn& b) {
  return structurally_equal(a.root(), b.root());
}

SmoothFn operator+(const SmoothFn& a, const SmoothFn& b) { return binary(Kind::add, a, b); }
SmoothFn operator-(const SmoothFn& a, const SmoothFn& b) { return binary(Kind::sub, a, b); }
SmoothFn operator*(const SmoothFn& a, const SmoothFn& b) { return binary(Kind::mul, a, b); }
SmoothFn operator/(const SmoothFn& a, const SmoothFn& b) { return binary(Kind::div, a, b); }
SmoothFn operator-(const SmoothFn& a) { return unary_fn(Kind::negate, a); }
SmoothFn sin(const SmoothFn& a) { return unary_fn(Kind::sin, a); }
SmoothFn cos(const SmoothFn& a) { return unary_fn(Kind::cos, a); }
SmoothFn sqrt(const SmoothFn& a) { return unary_fn(Kind::sqrt, a); }
SmoothFn exp(const SmoothFn& a) { return unary_fn(Kind::exp, a); }

SmoothFn pow(const SmoothFn& a, int n) {
  return from_tree(make_node(Kind::pow, a.root_ptr(), nullptr, n), a.variable());
}

}  // namespace bour
