#pragma once

#include <functional>

namespace gqm {

inline constexpr double kRootTol = 1e-13;

/// Solves fn(z) = target for a continuous strictly monotone fn on [lo, hi]
/// with a Brent-style bisection/secant/inverse-quadratic hybrid. The bracket
/// is never left. A target outside [fn(lo), fn(hi)] by no more than rounding
/// noise resolves to the nearer endpoint; anything further away throws
/// BracketFailure. lo == hi returns lo.
double solve_monotone(const std::function<double(double)>& fn, double target, double lo,
                      double hi, double tol = kRootTol);

}  // namespace gqm
