#include "gqm/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gqm/error.hpp"

namespace gqm {

namespace {

void require_in_domain(const GeneratorPair& pair, double x) {
  if (!pair.domain().contains(x)) {
    throw Error(Errc::out_of_domain, "point " + std::to_string(x) + " outside (" +
                                         std::to_string(pair.domain().lo) + ", " +
                                         std::to_string(pair.domain().hi) + ")");
  }
}

void require_order(const GeneratorPair& pair, int needed) {
  if (needed > pair.class_order()) {
    throw Error(Errc::order_exceeds_class, "derivative order " + std::to_string(needed) +
                                               " exceeds class order " +
                                               std::to_string(pair.class_order()));
  }
}

// Jet of the k-th derivative, keeping `order` further Taylor terms.
Jet derived(const Jet& base, int k) {
  Jet j = base;
  for (int i = 0; i < k; ++i) j = j.derivative();
  return j;
}

bool all_finite(const Jet& j) {
  for (int k = 0; k <= j.order(); ++k) {
    if (!std::isfinite(j[k])) return false;
  }
  return true;
}

}  // namespace

GeneratorPair::GeneratorPair(Expr f, Expr g, Interval domain, int class_order, std::string label)
    : GeneratorPair(std::move(f), std::move(g), domain, class_order, std::move(label), true) {}

GeneratorPair::GeneratorPair(Expr f, Expr g, Interval domain, int class_order, std::string label,
                             bool check)
    : f_(std::move(f)),
      g_(std::move(g)),
      domain_(domain),
      class_order_(class_order),
      label_(std::move(label)) {
  if (!(domain_.lo < domain_.hi) || !std::isfinite(domain_.lo) || !std::isfinite(domain_.hi)) {
    throw Error(Errc::domain_error, "domain must be a finite interval with lo < hi");
  }
  if (class_order_ < 0 || class_order_ > kMaxOrder) {
    throw Error(Errc::order_exceeds_class, "class order must lie in 0..8");
  }
  if (check) validate();
}

GeneratorPair GeneratorPair::unvalidated(Expr f, Expr g, Interval domain, int class_order,
                                         std::string label) {
  return GeneratorPair(std::move(f), std::move(g), domain, class_order, std::move(label), false);
}

void GeneratorPair::validate() const {
  int sign = 0;
  for (double x : chebyshev_grid(domain_, kValidationPoints)) {
    const Jet fj = f_.jet(x, class_order_);
    const Jet gj = g_.jet(x, class_order_);
    if (!all_finite(fj) || !all_finite(gj)) {
      throw Error(Errc::degenerate_pair, "non-finite derivatives at x=" + std::to_string(x));
    }
    if (!(gj.value() > 0.0)) {
      throw Error(Errc::degenerate_pair, "g is not positive at x=" + std::to_string(x));
    }
    if (class_order_ >= 1) {
      const double w = fj[1] * gj[0] - fj[0] * gj[1];
      if (!(std::abs(w) > kMinWronskian)) {
        throw Error(Errc::degenerate_pair, "f'g - fg' vanishes near x=" + std::to_string(x));
      }
      const int s = w > 0.0 ? 1 : -1;
      if (sign != 0 && s != sign) {
        throw Error(Errc::degenerate_pair, "f'g - fg' changes sign near x=" + std::to_string(x));
      }
      sign = s;
    }
  }
}

std::pair<Jet, Jet> GeneratorPair::jets(double x, int order) const {
  require_in_domain(*this, x);
  require_order(*this, order);
  return {f_.jet(x, order), g_.jet(x, order)};
}

double wronskian(const GeneratorPair& pair, int i, int j, double x) {
  return wronskian_jet(pair, i, j, x, 0).value();
}

Jet wronskian_jet(const GeneratorPair& pair, int i, int j, double x, int order) {
  const int top = std::max(i, j) + order;
  require_order(pair, top);
  const auto [fj, gj] = pair.jets(x, top);
  const Jet fi = derived(fj, i).truncated(order);
  const Jet gi = derived(gj, i).truncated(order);
  const Jet fjj = derived(fj, j).truncated(order);
  const Jet gjj = derived(gj, j).truncated(order);
  return fi * gjj - gi * fjj;
}

PhiPsi phi_psi_jets(const GeneratorPair& pair, double x, int order) {
  require_order(pair, order + 2);
  const auto [f0, g0] = pair.jets(x, order + 2);
  const Jet f1 = f0.derivative();
  const Jet g1 = g0.derivative();
  const Jet f2 = f1.derivative();
  const Jet g2 = g1.derivative();
  const Jet w10 = f1 * g0 - f0 * g1;
  const Jet w20 = f2 * g0 - f0 * g2;
  const Jet w21 = f2 * g1 - g2 * f1;
  return {w20 / w10, -(w21 / w10)};
}

Expr sine_type(double a) {
  const Expr x = Expr::var();
  if (a < 0.0) return sin(std::sqrt(-a) * x);
  if (a == 0.0) return x;
  return sinh(std::sqrt(a) * x);
}

Expr cosine_type(double a) {
  const Expr x = Expr::var();
  if (a < 0.0) return cos(std::sqrt(-a) * x);
  if (a == 0.0) return Expr::constant(1.0);
  return cosh(std::sqrt(a) * x);
}

GeneratorPair builtin_pair(const PairFamily& fam) {
  const Expr x = Expr::var();
  return std::visit(
      [&](const auto& v) -> GeneratorPair {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, family::Power>) {
          if (v.a == v.b) {
            throw Error(Errc::degenerate_pair, "power pair needs a != b; use log-power");
          }
          if (v.domain.lo < 0.0) throw Error(Errc::domain_error, "power pairs live on (0, inf)");
          return GeneratorPair(pow(x, v.a), pow(x, v.b), v.domain, kMaxOrder,
                               "power(" + std::to_string(v.a) + "," + std::to_string(v.b) + ")");
        } else if constexpr (std::is_same_v<T, family::LogPower>) {
          if (v.domain.lo < 0.0) throw Error(Errc::domain_error, "log-power pairs live on (0, inf)");
          return GeneratorPair(pow(x, v.a) * log(x), pow(x, v.a), v.domain, kMaxOrder,
                               "log-power(" + std::to_string(v.a) + ")");
        } else if constexpr (std::is_same_v<T, family::Trig>) {
          Expr f = sine_type(v.a).substitute(v.phi);
          Expr g = cosine_type(v.a).substitute(v.phi);
          if (v.scale_by_phi_prime) {
            const Expr dphi = v.phi.derivative();
            f = dphi * f;
            g = dphi * g;
          }
          return GeneratorPair(f, g, v.domain, kMaxOrder,
                               "trig(" + std::to_string(v.a) + "," + v.phi.to_string() +
                                   (v.scale_by_phi_prime ? ",scaled)" : ")"));
        } else if constexpr (std::is_same_v<T, family::Quasiarithmetic>) {
          return GeneratorPair(v.phi, Expr::constant(1.0), v.domain, kMaxOrder,
                               "quasiarithmetic(" + v.phi.to_string() + ")");
        } else if constexpr (std::is_same_v<T, family::CauchyDerived>) {
          return GeneratorPair(v.f.derivative(), v.g.derivative(), v.domain, kMaxOrder,
                               "cauchy-derived(" + v.f.to_string() + "," + v.g.to_string() + ")");
        } else {
          return GeneratorPair(v.f, v.g, v.domain, kMaxOrder,
                               "custom(" + v.f.to_string() + "," + v.g.to_string() + ")");
        }
      },
      fam);
}

GeneratorPair equivalent_transform(const GeneratorPair& pair, double a, double b, double c,
                                   double d) {
  if (std::abs(a * d - b * c) < 1e-14) {
    throw Error(Errc::singular_matrix, "ad - bc vanishes");
  }
  const Expr h = a * pair.f() + b * pair.g();
  const Expr k = c * pair.f() + d * pair.g();
  return GeneratorPair::unvalidated(h, k, pair.domain(), pair.class_order(),
                                    pair.label().empty() ? std::string{} : pair.label() + "~");
}

bool are_equivalent(const GeneratorPair& p1, const GeneratorPair& p2,
                    std::span<const double> grid, double tol) {
  for (double x : grid) {
    const PhiPsi a = phi_psi_jets(p1, x, 0);
    const PhiPsi b = phi_psi_jets(p2, x, 0);
    const double sphi = std::max({1.0, std::abs(a.phi.value()), std::abs(b.phi.value())});
    const double spsi = std::max({1.0, std::abs(a.psi.value()), std::abs(b.psi.value())});
    if (std::abs(a.phi.value() - b.phi.value()) > tol * sphi) return false;
    if (std::abs(a.psi.value() - b.psi.value()) > tol * spsi) return false;
  }
  return true;
}

std::vector<double> chebyshev_grid(const Interval& domain, int n) {
  std::vector<double> pts(n);
  for (int k = 0; k < n; ++k) {
    const double c = std::cos(std::numbers::pi * (n - k - 0.5) / n);
    pts[k] = domain.midpoint() + 0.5 * domain.width() * c;
  }
  return pts;
}

}  // namespace gqm
