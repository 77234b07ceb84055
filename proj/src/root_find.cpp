#include "gqm/root_find.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "gqm/error.hpp"

namespace gqm {

double solve_monotone(const std::function<double(double)>& fn, double target, double lo,
                      double hi, double tol) {
  if (lo > hi) std::swap(lo, hi);
  if (lo == hi) return lo;
  double a = lo;
  double b = hi;
  double fa = fn(a) - target;
  double fb = fn(b) - target;
  if (!std::isfinite(fa) || !std::isfinite(fb)) {
    throw Error(Errc::bracket_failure, "non-finite values at the bracket ends");
  }
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double scale = std::max({std::abs(target), std::abs(fa + target), std::abs(fb + target),
                                   std::numeric_limits<double>::min()});
    if (std::min(std::abs(fa), std::abs(fb)) <= 256.0 * eps * scale) {
      return std::abs(fa) < std::abs(fb) ? a : b;
    }
    throw Error(Errc::bracket_failure, "target " + std::to_string(target) +
                                           " not bracketed on [" + std::to_string(lo) + ", " +
                                           std::to_string(hi) + "]");
  }

  constexpr double eps = std::numeric_limits<double>::epsilon();
  double c = a;
  double fc = fa;
  double d = b - a;
  double e = d;
  for (int iter = 0; iter < 200; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p;
      double q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol1 ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = fn(b) - target;
  }
  return b;
}

}  // namespace gqm
