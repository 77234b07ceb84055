#include "gqm/diagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gqm/error.hpp"
#include "gqm/mean.hpp"

namespace gqm {

namespace {

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

bool jets_close(const Jet& a, const Jet& b, double tol) {
  const int order = std::min(a.order(), b.order());
  for (int k = 0; k <= order; ++k) {
    const double scale = std::max({1.0, std::abs(a[k]), std::abs(b[k])});
    if (!(std::abs(a[k] - b[k]) <= tol * scale)) return false;
  }
  return true;
}

void require_symmetric(const Measure& m) {
  if (!is_symmetric(m)) {
    throw Error(Errc::asymmetric_measure, "measure is not symmetric about 1/2");
  }
}

}  // namespace

RecursionTable recursion_table(const GeneratorPair& pair, double x) {
  const PhiPsi pp = phi_psi_jets(pair, x, kMaxOrder - 2);
  RecursionTable t;
  t.x = x;
  t.Phi = pp.phi;
  t.Psi = pp.psi;
  t.phi[0] = Jet::constant(0.0, kMaxOrder);
  t.psi[0] = Jet::constant(1.0, kMaxOrder);
  t.phi[1] = Jet::constant(1.0, kMaxOrder - 1);
  t.psi[1] = Jet::constant(0.0, kMaxOrder - 1);
  for (int i = 1; i < kMaxOrder; ++i) {
    t.phi[i + 1] = t.phi[i].derivative() + t.phi[i] * t.Phi + t.psi[i];
    t.psi[i + 1] = t.phi[i] * t.Psi + t.psi[i].derivative();
  }
  return t;
}

bool drec_check(const RecursionTable& t, double tol) {
  for (int i = 0; i <= 4; ++i) {
    const Jet d1phi = t.phi[i].derivative();
    const Jet d2phi = d1phi.derivative();
    const Jet d1psi = t.psi[i].derivative();
    const Jet d2psi = d1psi.derivative();
    const Jet phi_rhs = d2phi + 2.0 * d1phi * t.Phi + t.phi[i] * t.phi[3] + 2.0 * d1psi +
                        t.psi[i] * t.Phi;
    const Jet psi_rhs = 2.0 * d1phi * t.Psi + t.phi[i] * t.psi[3] + d2psi + t.psi[i] * t.Psi;
    if (!jets_close(t.phi[i + 2], phi_rhs, tol)) return false;
    if (!jets_close(t.psi[i + 2], psi_rhs, tol)) return false;
  }
  return true;
}

bool drec_check(const GeneratorPair& pair, double x, double tol) {
  return drec_check(recursion_table(pair, x), tol);
}

double bell_incomplete(int n, int k, std::span<const double> xs) {
  if (n < 0 || k < 0 || n > kMaxOrder || k > n) {
    throw Error(Errc::unsupported_index, "Bell index (" + std::to_string(n) + "," +
                                             std::to_string(k) + ") outside 0 <= k <= n <= 8");
  }
  if (n == 0 && k == 0) return 1.0;
  if (n == 0 || k == 0) return 0.0;
  double sum = 0.0;
  for (int j = 1; j <= n - k + 1; ++j) {
    const double xj = j < static_cast<int>(xs.size()) ? xs[j] : 0.0;
    if (xj == 0.0) continue;
    sum += binomial(n - 1, j - 1) * xj * bell_incomplete(n - j, k - 1, xs);
  }
  return sum;
}

double bell_closed_form(int n, int k, std::span<const double> xs) {
  if (n < 2 || n > kMaxOrder || n % 2 != 0 || k < 1 || k > n) {
    throw Error(Errc::unsupported_index, "no closed form for B_{" + std::to_string(n) + "," +
                                             std::to_string(k) + "}");
  }
  auto x = [&](int j) { return j < static_cast<int>(xs.size()) ? xs[j] : 0.0; };
  // every block has even size, so more than n/2 blocks is impossible
  if (k > n / 2) return 0.0;
  if (k == 1) return x(n);
  const double x2 = x(2);
  const double x4 = x(4);
  const double x6 = x(6);
  switch (n * 10 + k) {
    case 42: return 3.0 * x2 * x2;
    case 62: return 15.0 * x2 * x4;
    case 63: return 15.0 * x2 * x2 * x2;
    case 82: return 28.0 * x2 * x6 + 35.0 * x4 * x4;
    case 83: return 210.0 * x2 * x2 * x4;
    case 84: return 105.0 * x2 * x2 * x2 * x2;
    default: break;
  }
  throw Error(Errc::unsupported_index, "no closed form for this Bell index");
}

DiagonalDerivatives diagonal_derivatives(const GeneratorPair& pair, const Measure& m, double x) {
  require_symmetric(m);
  const RecursionTable t = recursion_table(pair, x);
  const MomentVector mv = moments(m);
  const double m2 = mv.central[2];
  const double m4 = mv.central[4];
  const double m6 = mv.central[6];
  const double m8 = mv.central[8];
  const double p2 = t.phi[2].value();
  const double p3 = t.phi[3].value();
  const double p4 = t.phi[4].value();
  const double p6 = t.phi[6].value();
  const double p8 = t.phi[8].value();
  const double q2 = t.psi[2].value();
  const double q3 = t.psi[3].value();
  const double q4 = t.psi[4].value();
  const double q6 = t.psi[6].value();
  const double p2s = p2 * p2;

  DiagonalDerivatives d;
  d.d2 = m2 * p2;
  d.d4 = m4 * p4 - 3.0 * m2 * m2 * (p2s * p2 + 2.0 * q2 * p2);
  d.d6 = m6 * p6 - 15.0 * m4 * m2 * (p4 * (p2s + q2) + p2 * q4) -
         15.0 * m2 * m2 * m2 * p2 * (p3 * p2s - 3.0 * (p2s + q2) * (p2s + 2.0 * q2));
  const double m2_4 = m2 * m2 * m2 * m2;
  d.d8 = m8 * p8 - 28.0 * m6 * m2 * (p6 * (p2s + q2) + p2 * q6) -
         35.0 * m4 * m4 * (p4 * p4 * p2 + 2.0 * p4 * q4) +
         210.0 * m4 * m2 * m2 *
             (p4 * (3.0 * p2s * p2s + p2s * (7.0 * q2 - p3) + 2.0 * q2 * q2) +
              2.0 * p2 * q4 * (p2s + 2.0 * q2)) -
         105.0 * m2_4 *
             (p4 * p2s * p2s + 15.0 * p2s * p2s * p2s * p2 +
              2.0 * p2s * p2 * (5.0 * p2s + 6.0 * q2) * (6.0 * q2 - p3) +
              4.0 * p2 * (6.0 * q2 * q2 * q2 - p2s * p2 * q3));
  return d;
}

std::array<double, kMaxOrder + 1> implicit_series_all(const GeneratorPair& pair, const Measure& m,
                                                      double x) {
  const auto [fj, gj] = pair.jets(x, kMaxOrder);
  std::array<double, kMaxOrder + 1> fd{};
  std::array<double, kMaxOrder + 1> gd{};
  for (int k = 0; k <= kMaxOrder; ++k) {
    fd[k] = fj.derivative(k);
    gd[k] = gj.derivative(k);
  }
  const auto nu = m.moments_about(0.5);
  const double w10 = fd[1] * gd[0] - fd[0] * gd[1];

  std::array<double, kMaxOrder + 1> md{};
  md[0] = x;
  for (int n = 1; n <= kMaxOrder; ++n) {
    md[n] = 0.0;  // the unknown; its i = 0 contribution is isolated below
    // (F∘m_x)^(N)(0) for N = 0..n
    std::array<double, kMaxOrder + 1> cf{};
    std::array<double, kMaxOrder + 1> cg{};
    cf[0] = fd[0];
    cg[0] = gd[0];
    for (int N = 1; N <= n; ++N) {
      for (int k = 1; k <= N; ++k) {
        const double b = bell_incomplete(N, k, md);
        cf[N] += fd[k] * b;
        cg[N] += gd[k] * b;
      }
    }
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) {
      if (nu[i] == 0.0) continue;
      sum += binomial(n, i) * nu[i] * (fd[i] * cg[n - i] - gd[i] * cf[n - i]);
    }
    // det[F, F'] m^(n) + sum = 0 with det[F, F'] = -W^{1,0}
    md[n] = sum / w10;
  }
  return md;
}

DiagonalDerivatives implicit_series_oracle(const GeneratorPair& pair, const Measure& m, double x) {
  require_symmetric(m);
  const auto md = implicit_series_all(pair, m, x);
  return {md[2], md[4], md[6], md[8]};
}

FiniteDifferenceResult finite_difference_check(const GeneratorPair& pair, const Measure& m,
                                               double x, std::span<const int> orders) {
  bool want2 = false;
  bool want4 = false;
  for (int o : orders) {
    if (o == 2) {
      want2 = true;
    } else if (o == 4) {
      want4 = true;
    } else {
      throw Error(Errc::unsupported_index, "finite differences only for orders 2 and 4");
    }
  }
  const double h = 1e-2 * pair.domain().width();
  const double steps[] = {4.0 * h, 2.0 * h, h};
  // the 4th-order stencil reaches u = 2s, i.e. arguments x +- s
  const double reach = want4 ? steps[0] : 0.5 * steps[0];
  if (!pair.domain().contains(x - reach) || !pair.domain().contains(x + reach)) {
    throw Error(Errc::stencil_out_of_domain,
                "stencil around x=" + std::to_string(x) + " leaves the domain");
  }
  const DiagonalDerivatives exact = diagonal_derivatives(pair, m, x);
  auto slice = [&](double u) { return eval_generalized(pair, m, x + 0.5 * u, x - 0.5 * u); };

  auto richardson = [](std::array<double, 3> t) {
    for (int j = 1; j < 3; ++j) {
      const double f = std::pow(4.0, j) - 1.0;
      for (int k = 2; k >= j; --k) t[k] = t[k] + (t[k] - t[k - 1]) / f;
    }
    return t[2];
  };

  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  FiniteDifferenceResult r{h, nan, nan, nan, nan};
  if (want2) {
    std::array<double, 3> t{};
    for (int k = 0; k < 3; ++k) {
      const double s = steps[k];
      t[k] = (slice(s) - 2.0 * x + slice(-s)) / (s * s);
    }
    r.fd_d2 = richardson(t);
    r.residual_d2 = std::abs(r.fd_d2 - exact.d2);
  }
  if (want4) {
    std::array<double, 3> t{};
    for (int k = 0; k < 3; ++k) {
      const double s = steps[k];
      t[k] = (slice(2.0 * s) - 4.0 * slice(s) + 6.0 * x - 4.0 * slice(-s) + slice(-2.0 * s)) /
             (s * s * s * s);
    }
    r.fd_d4 = richardson(t);
    r.residual_d4 = std::abs(r.fd_d4 - exact.d4);
  }
  return r;
}

}  // namespace gqm
