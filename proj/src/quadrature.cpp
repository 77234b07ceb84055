#include "gqm/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace gqm {

namespace {

GaussRule build_rule() {
  GaussRule rule{};
  constexpr int n = kGaussOrder;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-17) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

double adapt(const std::function<double(double)>& fn, double a, double b, double whole,
             double abs_tol, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = gauss16(fn, a, mid);
  const double right = gauss16(fn, mid, b);
  if (depth <= 0 || std::abs(left + right - whole) <= abs_tol) return left + right;
  return adapt(fn, a, mid, left, 0.5 * abs_tol, depth - 1) +
         adapt(fn, mid, b, right, 0.5 * abs_tol, depth - 1);
}

}  // namespace

const GaussRule& gauss_legendre16() {
  static const GaussRule rule = build_rule();
  return rule;
}

double gauss16(const std::function<double(double)>& fn, double a, double b) {
  const auto& rule = gauss_legendre16();
  const double half = 0.5 * (b - a);
  const double centre = 0.5 * (a + b);
  double sum = 0.0;
  for (int i = 0; i < kGaussOrder; ++i) sum += rule.weights[i] * fn(centre + half * rule.nodes[i]);
  return half * sum;
}

double integrate(const std::function<double(double)>& fn, double a, double b, double abs_tol,
                 int max_depth) {
  if (a == b) return 0.0;
  return adapt(fn, a, b, gauss16(fn, a, b), abs_tol, max_depth);
}

}  // namespace gqm
