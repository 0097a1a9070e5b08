#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "bour/jet.hpp"

namespace bour {

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Kind { constant, variable, negate, sin, cos, sqrt, exp, add, sub, mul, div, pow };

  Kind kind = Kind::constant;
  double value = 0.0;  // constant
  int exponent = 0;    // pow
  ExprPtr lhs;         // operand of unary nodes, left of binary nodes
  ExprPtr rhs;
};

// A smooth function of one real variable given by an expression tree.
class SmoothFn {
 public:
  SmoothFn();
  SmoothFn(ExprPtr root, std::string source_text, std::string variable = "s");

  static SmoothFn parse(std::string_view text, std::string_view variable = "s");
  static SmoothFn constant(double v, std::string variable = "s");
  static SmoothFn identity(std::string variable = "s");

  double operator()(double x) const;
  Jet jet(double base, int order) const;

  const ExprNode& root() const { return *root_; }
  const ExprPtr& root_ptr() const { return root_; }
  const std::string& source_text() const { return source_; }
  const std::string& variable() const { return variable_; }
  std::string to_string() const;

 private:
  ExprPtr root_;
  std::string source_;
  std::string variable_;
};

SmoothFn parse_expr(std::string_view text, std::string_view variable = "s");
Jet jet_eval(const SmoothFn& f, double base, int order);
std::string print_expr(const ExprNode& node, std::string_view variable = "s");
bool structurally_equal(const ExprNode& a, const ExprNode& b);
bool structurally_equal(const SmoothFn& a, const SmoothFn& b);

// Tree builders; the printed source text is regenerated from the tree.
SmoothFn operator+(const SmoothFn& a, const SmoothFn& b);
SmoothFn operator-(const SmoothFn& a, const SmoothFn& b);
SmoothFn operator*(const SmoothFn& a, const SmoothFn& b);
SmoothFn operator/(const SmoothFn& a, const SmoothFn& b);
SmoothFn operator-(const SmoothFn& a);
SmoothFn pow(const SmoothFn& a, int n);
SmoothFn sin(const SmoothFn& a);
SmoothFn cos(const SmoothFn& a);
SmoothFn sqrt(const SmoothFn& a);
SmoothFn exp(const SmoothFn& a);

}  // namespace bour
