#pragma once

#include <array>
#include <functional>

namespace gqm {

inline constexpr int kGaussOrder = 16;

struct GaussRule {
  std::array<double, kGaussOrder> nodes;    // on [-1, 1]
  std::array<double, kGaussOrder> weights;
};

/// The 16-point Gauss–Legendre rule, computed once by Newton iteration on P_16.
const GaussRule& gauss_legendre16();

/// Single application of the 16-point rule on [a, b].
double gauss16(const std::function<double(double)>& fn, double a, double b);

/// Adaptive Gauss–Legendre: the 16-point panel is accepted when it agrees with
/// the sum over its two halves to abs_tol; otherwise both halves recurse.
double integrate(const std::function<double(double)>& fn, double a, double b,
                 double abs_tol = 1e-12, int max_depth = 30);

}  // namespace gqm
