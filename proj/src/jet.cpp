#include "gqm/jet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gqm/error.hpp"

namespace gqm {

namespace {

constexpr double kZeroLeading = 1e-300;

void check_order(int order) {
  if (order < 0 || order > kMaxOrder) {
    throw Error(Errc::order_exceeds_class,
                "jet order " + std::to_string(order) + " outside 0.." +
                    std::to_string(kMaxOrder));
  }
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

bool is_integer(double r) { return std::isfinite(r) && r == std::floor(r); }

// Taylor coefficients of s -> s^r about s0.
Jet::Coeffs power_series(double s0, double r, int n) {
  Jet::Coeffs out{};
  if (s0 == 0.0) {
    if (!(is_integer(r) && r >= 0.0)) {
      throw Error(Errc::domain_error, "non-integer power at zero");
    }
    const int ri = static_cast<int>(r);
    double binom = 1.0;
    for (int k = 0; k <= n; ++k) {
      if (k == ri) out[k] = binom;
      binom *= (r - k) / (k + 1);
    }
    return out;
  }
  if (s0 < 0.0 && !is_integer(r)) {
    throw Error(Errc::domain_error, "non-integer power of a negative value");
  }
  double binom = 1.0;
  for (int k = 0; k <= n; ++k) {
    out[k] = binom * std::pow(s0, r - k);
    binom *= (r - k) / (k + 1);
  }
  return out;
}

Jet::Coeffs outer_series(Elementary outer, double s0, double param, int n) {
  Jet::Coeffs out{};
  switch (outer) {
    case Elementary::exp: {
      const double e = std::exp(s0);
      for (int k = 0; k <= n; ++k) out[k] = e / factorial(k);
      return out;
    }
    case Elementary::log: {
      if (!(s0 > 0.0)) throw Error(Errc::domain_error, "log of nonpositive value");
      out[0] = std::log(s0);
      double inv = 1.0;
      for (int k = 1; k <= n; ++k) {
        inv /= s0;
        out[k] = ((k % 2 == 1) ? 1.0 : -1.0) * inv / k;
      }
      return out;
    }
    case Elementary::pow:
      return power_series(s0, param, n);
    case Elementary::sqrt:
      if (s0 < 0.0) throw Error(Errc::domain_error, "sqrt of negative value");
      return power_series(s0, 0.5, n);
    case Elementary::abs_pow:
      if (s0 == 0.0 && !(is_integer(param) && param >= 0.0 &&
                         static_cast<long>(param) % 2 == 0)) {
        throw Error(Errc::domain_error, "|u|^r is not smooth at zero");
      }
      if (s0 < 0.0) {
        // |u|^r = (-u)^r near a negative point.
        auto c = power_series(-s0, param, n);
        for (int k = 1; k <= n; k += 2) c[k] = -c[k];
        return c;
      }
      return power_series(s0, param, n);
    case Elementary::sin:
    case Elementary::cos: {
      const double s = std::sin(s0);
      const double c = std::cos(s0);
      // derivative cycles: sin -> cos -> -sin -> -cos
      const std::array<double, 4> cyc = outer == Elementary::sin
                                            ? std::array<double, 4>{s, c, -s, -c}
                                            : std::array<double, 4>{c, -s, -c, s};
      for (int k = 0; k <= n; ++k) out[k] = cyc[k % 4] / factorial(k);
      return out;
    }
    case Elementary::sinh:
    case Elementary::cosh: {
      const double s = std::sinh(s0);
      const double c = std::cosh(s0);
      const bool even_is_sinh = outer == Elementary::sinh;
      for (int k = 0; k <= n; ++k) {
        const bool even = k % 2 == 0;
        out[k] = ((even == even_is_sinh) ? s : c) / factorial(k);
      }
      return out;
    }
  }
  return out;
}

}  // namespace

Jet Jet::constant(double value, int order) {
  check_order(order);
  Jet j;
  j.order_ = order;
  j.c_[0] = value;
  return j;
}

Jet Jet::variable(double x0, int order) {
  Jet j = constant(x0, order);
  if (order >= 1) j.c_[1] = 1.0;
  return j;
}

Jet Jet::from_coeffs(std::span<const double> taylor, int order) {
  check_order(order);
  Jet j;
  j.order_ = order;
  const auto n = std::min<std::size_t>(taylor.size(), order + 1);
  std::copy_n(taylor.begin(), n, j.c_.begin());
  return j;
}

Jet Jet::from_derivatives(std::span<const double> derivs, int order) {
  check_order(order);
  Jet j;
  j.order_ = order;
  const auto n = std::min<std::size_t>(derivs.size(), order + 1);
  for (std::size_t k = 0; k < n; ++k) j.c_[k] = derivs[k] / factorial(static_cast<int>(k));
  return j;
}

double Jet::derivative(int k) const {
  if (k < 0 || k > order_) {
    throw Error(Errc::order_exceeds_class,
                "derivative " + std::to_string(k) + " of an order-" +
                    std::to_string(order_) + " jet");
  }
  return factorial(k) * c_[k];
}

Jet Jet::derivative() const {
  if (order_ < 1) {
    throw Error(Errc::order_exceeds_class, "cannot differentiate an order-0 jet");
  }
  Jet d;
  d.order_ = order_ - 1;
  for (int k = 0; k < order_; ++k) d.c_[k] = (k + 1) * c_[k + 1];
  return d;
}

Jet Jet::truncated(int order) const {
  Jet t = *this;
  t.order_ = std::min(order_, order);
  for (int k = t.order_ + 1; k <= kMaxOrder; ++k) t.c_[k] = 0.0;
  return t;
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

Jet& Jet::operator+=(const Jet& rhs) {
  order_ = std::min(order_, rhs.order_);
  for (int k = 0; k <= order_; ++k) c_[k] += rhs.c_[k];
  for (int k = order_ + 1; k <= kMaxOrder; ++k) c_[k] = 0.0;
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  order_ = std::min(order_, rhs.order_);
  for (int k = 0; k <= order_; ++k) c_[k] -= rhs.c_[k];
  for (int k = order_ + 1; k <= kMaxOrder; ++k) c_[k] = 0.0;
  return *this;
}

Jet& Jet::operator*=(const Jet& rhs) {
  *this = *this * rhs;
  return *this;
}

Jet& Jet::operator/=(const Jet& rhs) {
  *this = *this / rhs;
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (auto& v : c_) v *= s;
  return *this;
}

Jet& Jet::operator+=(double s) {
  c_[0] += s;
  return *this;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }

Jet operator*(const Jet& a, const Jet& b) {
  const int n = std::min(a.order(), b.order());
  Jet::Coeffs c{};
  for (int k = 0; k <= n; ++k) {
    double s = 0.0;
    for (int i = 0; i <= k; ++i) s += a[i] * b[k - i];
    c[k] = s;
  }
  return Jet::from_coeffs(c, n);
}

Jet operator/(const Jet& a, const Jet& b) {
  if (std::abs(b[0]) < kZeroLeading) {
    throw Error(Errc::division_by_zero_jet, "leading coefficient of divisor vanishes");
  }
  const int n = std::min(a.order(), b.order());
  Jet::Coeffs q{};
  for (int k = 0; k <= n; ++k) {
    double s = a[k];
    for (int j = 1; j <= k; ++j) s -= b[j] * q[k - j];
    q[k] = s / b[0];
  }
  return Jet::from_coeffs(q, n);
}

Jet operator+(Jet a, double s) { return a += s; }
Jet operator+(double s, Jet a) { return a += s; }
Jet operator-(Jet a, double s) { return a += -s; }
Jet operator-(double s, const Jet& a) { return (-a) + s; }
Jet operator*(Jet a, double s) { return a *= s; }
Jet operator*(double s, Jet a) { return a *= s; }
Jet operator/(Jet a, double s) { return a *= 1.0 / s; }
Jet operator/(double s, const Jet& a) { return Jet::constant(s, a.order()) / a; }

Jet compose(Elementary outer, const Jet& inner, double param) {
  const int n = inner.order();
  const auto series = outer_series(outer, inner.value(), param, n);
  Jet h = inner;
  h[0] = 0.0;
  // Horner in the shifted inner series: sum_k series[k] * h^k.
  Jet acc = Jet::constant(series[n], n);
  for (int k = n - 1; k >= 0; --k) {
    acc = acc * h;
    acc[0] += series[k];
  }
  return acc;
}

Jet exp(const Jet& a) { return compose(Elementary::exp, a); }
Jet log(const Jet& a) { return compose(Elementary::log, a); }
Jet pow(const Jet& a, double r) { return compose(Elementary::pow, a, r); }
Jet sqrt(const Jet& a) { return compose(Elementary::sqrt, a); }
Jet sin(const Jet& a) { return compose(Elementary::sin, a); }
Jet cos(const Jet& a) { return compose(Elementary::cos, a); }
Jet sinh(const Jet& a) { return compose(Elementary::sinh, a); }
Jet cosh(const Jet& a) { return compose(Elementary::cosh, a); }
Jet abs_pow(const Jet& a, double r) { return compose(Elementary::abs_pow, a, r); }

}  // namespace gqm
