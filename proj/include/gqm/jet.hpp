#pragma once

#include <array>
#include <span>

namespace gqm {

inline constexpr int kMaxOrder = 8;

/// Truncated Taylor expansion of a scalar function about a fixed point.
///
/// Coefficient k holds h^(k)(x0)/k!; only the prefix 0..order() is
/// meaningful. Binary operations truncate to the smaller operand order, so
/// an order never grows through arithmetic. Raw derivatives are produced by
/// derivative(k) on demand.
class Jet {
 public:
  using Coeffs = std::array<double, kMaxOrder + 1>;

  Jet() = default;

  static Jet constant(double value, int order = kMaxOrder);
  /// The identity function expanded about x0.
  static Jet variable(double x0, int order = kMaxOrder);
  static Jet from_coeffs(std::span<const double> taylor, int order);
  /// Builds a jet from raw derivatives h(x0), h'(x0), ..., h^(order)(x0).
  static Jet from_derivatives(std::span<const double> derivs, int order);

  int order() const noexcept { return order_; }
  double value() const noexcept { return c_[0]; }
  double operator[](int k) const noexcept { return c_[k]; }
  double& operator[](int k) noexcept { return c_[k]; }
  const Coeffs& coeffs() const noexcept { return c_; }

  /// h^(k)(x0) = k! * coeff[k].
  double derivative(int k) const;
  /// Jet of h' about the same point; one order is consumed.
  Jet derivative() const;
  Jet truncated(int order) const;

  Jet operator-() const;
  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);
  Jet& operator*=(const Jet& rhs);
  Jet& operator/=(const Jet& rhs);
  Jet& operator*=(double s);
  Jet& operator+=(double s);

 private:
  Coeffs c_{};
  int order_ = 0;
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);
Jet operator+(Jet a, double s);
Jet operator+(double s, Jet a);
Jet operator-(Jet a, double s);
Jet operator-(double s, const Jet& a);
Jet operator*(Jet a, double s);
Jet operator*(double s, Jet a);
Jet operator/(Jet a, double s);
Jet operator/(double s, const Jet& a);

/// Outer functions accepted by compose(). pow and abs_pow take the exponent
/// as parameter; abs_pow is |u|^r.
enum class Elementary { exp, log, pow, sin, cos, sinh, cosh, sqrt, abs_pow };

/// Taylor coefficients of outer∘inner. The outer function is expanded about
/// inner.value() and the series is substituted with the zero-constant part of
/// inner (polynomial Faà di Bruno). Throws DomainError outside the domain of
/// the outer function.
Jet compose(Elementary outer, const Jet& inner, double param = 0.0);

Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet pow(const Jet& a, double r);
Jet sqrt(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet sinh(const Jet& a);
Jet cosh(const Jet& a);
Jet abs_pow(const Jet& a, double r);

}  // namespace gqm
