#include "gqm/mean.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gqm/error.hpp"
#include "gqm/root_find.hpp"

namespace gqm {

namespace {

void require_positive(double x, double y) {
  if (!(x > 0.0 && y > 0.0)) {
    throw Error(Errc::non_positive_argument,
                "arguments must be positive, got " + std::to_string(x) + ", " + std::to_string(y));
  }
}

void require_in(const Interval& domain, double x, double y) {
  if (!domain.contains(x) || !domain.contains(y)) {
    throw Error(Errc::out_of_domain, "arguments " + std::to_string(x) + ", " + std::to_string(y) +
                                         " outside (" + std::to_string(domain.lo) + ", " +
                                         std::to_string(domain.hi) + ")");
  }
}

// Homogeneous means are evaluated as hi * M(1, e^L) with L = ln(lo/hi) <= 0.
struct Scaled {
  double hi;
  double lo;
  double L;
};

Scaled scale(double x, double y) {
  const double hi = std::max(x, y);
  const double lo = std::min(x, y);
  return {hi, lo, std::log(lo) - std::log(hi)};
}

// Any mean agrees with (x + y)/2 up to O((x - y)^2).
bool near_diagonal(const Scaled& s) { return -s.L < kBranchTol; }

// lam(z) = ln(expm1(z) / z) and its derivatives; Bernoulli series near z = 0.
double lam(double z) {
  if (std::abs(z) < 1e-3) return z * (0.5 + z * (1.0 / 24.0 - z * z / 2880.0));
  return std::log(std::expm1(z) / z);
}

double lam_over_z(double z) {
  if (std::abs(z) < 1e-3) return 0.5 + z * (1.0 / 24.0 - z * z / 2880.0);
  return std::log(std::expm1(z) / z) / z;
}

double dlam(double z) {
  if (std::abs(z) < 1e-2) {
    const double z2 = z * z;
    return 0.5 + z * (1.0 / 12.0 + z2 * (-1.0 / 720.0 + z2 / 30240.0));
  }
  return -1.0 / std::expm1(-z) - 1.0 / z;
}

double d3lam(double z) {
  if (std::abs(z) < 0.1) {
    const double z2 = z * z;
    return z * (-1.0 / 120.0 + z2 * (1.0 / 1512.0 - z2 / 28800.0));
  }
  const double q = -1.0 / std::expm1(-z);
  return (q - q * q) * (1.0 - 2.0 * q) - 2.0 / (z * z * z);
}

}  // namespace

double eval_power(double a, double x, double y) {
  require_positive(x, y);
  if (x == y) return x;
  const Scaled s = scale(x, y);
  if (near_diagonal(s)) return 0.5 * (x + y);
  if (std::abs(a) < kBranchTol) return std::sqrt(x) * std::sqrt(y);
  if (std::abs(a) >= 1e-3) {
    const double xa = std::pow(x, a);
    const double ya = std::pow(y, a);
    const double mid = 0.5 * (xa + ya);
    if (std::isnormal(xa) && std::isnormal(ya) && std::isnormal(mid) && std::isfinite(mid)) {
      return std::pow(mid, 1.0 / a);
    }
  }
  if (a > 0.0) return s.hi * std::exp(std::log1p(0.5 * std::expm1(a * s.L)) / a);
  // scaled by the smaller argument
  return s.lo * std::exp(std::log1p(0.5 * std::expm1(-a * s.L)) / a);
}

double eval_gini(double a, double b, double x, double y) {
  require_positive(x, y);
  if (x == y) return x;
  const Scaled s = scale(x, y);
  if (near_diagonal(s)) return 0.5 * (x + y);
  if (a < b) std::swap(a, b);
  const double L = s.L;
  if (a - b < kBranchTol) {
    const double c = 0.5 * (a + b);
    const double ec = std::exp(c * L);
    return s.hi * std::exp(ec * L / (1.0 + ec));
  }
  const double eb = std::exp(b * L);
  const double log_ratio = std::log1p(eb * std::expm1((a - b) * L) / (1.0 + eb));
  return s.hi * std::exp(log_ratio / (a - b));
}

double eval_stolarsky(double a, double b, double x, double y) {
  require_positive(x, y);
  if (x == y) return x;
  const Scaled s = scale(x, y);
  if (near_diagonal(s)) return 0.5 * (x + y);
  if (a < b) std::swap(a, b);
  const double L = s.L;
  const bool a0 = std::abs(a) < kBranchTol;
  const bool b0 = std::abs(b) < kBranchTol;
  const bool same = a - b < kBranchTol;
  if ((a0 && b0) || (same && (a0 || b0))) return std::sqrt(x) * std::sqrt(y);
  // ln S(1, e^L) is the divided difference of lam over aL, bL, times L
  const double delta = (a - b) * L;
  if (std::abs(delta) < 1e-3) {
    const double z = 0.5 * (a + b) * L;
    return s.hi * std::exp(L * (dlam(z) + d3lam(z) * delta * delta / 24.0));
  }
  if (a0 || b0) return s.hi * std::exp(L * lam_over_z(a0 ? b * L : a * L));
  return s.hi * std::exp((lam(a * L) - lam(b * L)) / (a - b));
}

double eval_quasiarithmetic(const Expr& phi, double x, double y, std::optional<Interval> domain) {
  if (domain) require_in(*domain, x, y);
  return eval_quasiarithmetic([&](double t) { return phi(t); }, x, y);
}

double eval_quasiarithmetic(const std::function<double(double)>& phi, double x, double y) {
  if (x == y) return x;
  return solve_monotone(phi, 0.5 * (phi(x) + phi(y)), x, y);
}

double eval_generalized(const GeneratorPair& pair, const Measure& m, double x, double y) {
  require_in(pair.domain(), x, y);
  if (x == y) return x;
  const Expr& f = pair.f();
  const Expr& g = pair.g();
  const double F = segment_integral(m, [&](double t) { return f(t); }, x, y);
  const double G = segment_integral(m, [&](double t) { return g(t); }, x, y);
  const double target = F / G;
  const double z = solve_monotone([&](double t) { return pair.ratio(t); }, target, x, y);
  // Newton polish on f/g, derivative W^{1,0} / g^2
  const Jet fj = f.jet(z, 1);
  const Jet gj = g.jet(z, 1);
  const double slope = (fj[1] * gj[0] - fj[0] * gj[1]) / (gj[0] * gj[0]);
  const double polished = z - (fj[0] / gj[0] - target) / slope;
  if (std::isfinite(polished) && polished >= std::min(x, y) && polished <= std::max(x, y)) {
    return polished;
  }
  return z;
}

double eval_bajraktarevic(const GeneratorPair& pair, double x, double y) {
  static const Measure endpoints({{0.0, 0.5}, {1.0, 0.5}}, {});
  return eval_generalized(pair, endpoints, x, y);
}

GeneratorPair cauchy_derivative_pair(const CauchySources& src) {
  return GeneratorPair(src.f.derivative(), src.g.derivative(), src.domain, kMaxOrder,
                       "cauchy(" + src.f.to_string() + "," + src.g.to_string() + ")");
}

double eval_cauchy(const CauchySources& src, double x, double y) {
  require_in(src.domain, x, y);
  if (x == y) return x;
  const GeneratorPair derived =
      GeneratorPair::unvalidated(src.f.derivative(), src.g.derivative(), src.domain);
  // near the diagonal: integral form under the Lebesgue measure
  if (std::abs(x - y) < 1e-2 * std::max({1.0, std::abs(x), std::abs(y)})) {
    static const Measure lebesgue = Measure::uniform();
    return eval_generalized(derived, lebesgue, x, y);
  }
  const double q = (src.f(x) - src.f(y)) / (src.g(x) - src.g(y));
  return solve_monotone([&](double z) { return derived.ratio(z); }, q, x, y);
}

double evaluate(const MeanSpec& spec, double x, double y) {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, spec::Power>) {
          return eval_power(s.a, x, y);
        } else if constexpr (std::is_same_v<T, spec::Gini>) {
          return eval_gini(s.a, s.b, x, y);
        } else if constexpr (std::is_same_v<T, spec::Stolarsky>) {
          return eval_stolarsky(s.a, s.b, x, y);
        } else if constexpr (std::is_same_v<T, spec::Quasiarithmetic>) {
          return eval_quasiarithmetic(s.phi, x, y, s.domain);
        } else if constexpr (std::is_same_v<T, spec::Bajraktarevic>) {
          return eval_bajraktarevic(s.pair, x, y);
        } else if constexpr (std::is_same_v<T, spec::Cauchy>) {
          return eval_cauchy(s.sources, x, y);
        } else {
          return eval_generalized(s.pair, s.measure, x, y);
        }
      },
      spec);
}

Interval spec_domain(const MeanSpec& spec) {
  return std::visit(
      [](const auto& s) -> Interval {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, spec::Quasiarithmetic>) {
          return s.domain;
        } else if constexpr (std::is_same_v<T, spec::Bajraktarevic> ||
                             std::is_same_v<T, spec::Generalized>) {
          return s.pair.domain();
        } else if constexpr (std::is_same_v<T, spec::Cauchy>) {
          return s.sources.domain;
        } else {
          return {0.0, std::numeric_limits<double>::infinity()};
        }
      },
      spec);
}

}  // namespace gqm
