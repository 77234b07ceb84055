#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "gqm/jet.hpp"

namespace gqm {

/// Immutable expression tree in one variable over the elementary set of the
/// jet module. Nodes are shared; copying an Expr is cheap.
///
/// Text form is prefix notation with parentheses:
///   x, 2.5, (add a b ...), (sub a b), (mul a b ...), (div a b), (neg a),
///   (exp a), (log a), (sin a), (cos a), (sinh a), (cosh a), (sqrt a),
///   (pow r a), (abspow r a)
/// where pow/abspow take a numeric exponent r.
class Expr {
 public:
  enum class Op { constant, var, add, sub, mul, div, neg, unary };

  Expr();  // the variable x

  static Expr var();
  static Expr constant(double value);
  static Expr unary(Elementary fn, Expr arg, double param = 0.0);
  static Expr parse(std::string_view text);

  std::string to_string() const;

  double operator()(double x) const;
  Jet jet(double x, int order) const;

  Expr derivative() const;
  /// this∘inner: every occurrence of x is replaced by inner.
  Expr substitute(const Expr& inner) const;

  Op op() const;
  bool is_constant() const { return op() == Op::constant; }
  double constant_value() const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Expr operator*(double s, const Expr& a);
Expr operator+(double s, const Expr& a);
Expr operator*(const Expr& a, double s);
Expr operator+(const Expr& a, double s);
Expr operator-(const Expr& a, double s);

Expr exp(const Expr& a);
Expr log(const Expr& a);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr sinh(const Expr& a);
Expr cosh(const Expr& a);
Expr sqrt(const Expr& a);
Expr pow(const Expr& a, double r);
Expr abs_pow(const Expr& a, double r);

}  // namespace gqm
