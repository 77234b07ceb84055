#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gqm/diagonal.hpp"
#include "gqm/error.hpp"
#include "gqm/generator.hpp"
#include "support.hpp"

using namespace gqm;
using gqm::testing::close_rel;
using gqm::testing::uniform;

namespace {

const Expr x = Expr::var();

GeneratorPair sinh_cosh() { return builtin_pair(family::Custom{sinh(x), cosh(x), {-2.0, 2.0}}); }

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::config_error;
}

}  // namespace

TEST(Generator, WronskianExamples) {
  const auto sc = sinh_cosh();
  for (double t : {-1.5, 0.0, 0.7}) {
    EXPECT_NEAR(wronskian(sc, 1, 0, t), 1.0, 1e-14);
    for (int k = 0; k <= 8; ++k) EXPECT_EQ(wronskian(sc, k, k, t), 0.0);
  }
  const auto sq = builtin_pair(family::Custom{x * x, x, {0.5, 4.0}});
  EXPECT_DOUBLE_EQ(wronskian(sq, 1, 0, 2.0), 4.0);
  EXPECT_DOUBLE_EQ(wronskian(sq, 0, 1, 2.0), -4.0);
}

TEST(Generator, WronskianErrors) {
  const auto low = GeneratorPair(sinh(x), cosh(x), {-1.0, 1.0}, 2);
  EXPECT_EQ(code_of([&] { (void)wronskian(low, 3, 0, 0.0); }), Errc::order_exceeds_class);
  EXPECT_EQ(code_of([&] { (void)wronskian(low, 1, 0, 1.5); }), Errc::out_of_domain);
  EXPECT_EQ(code_of([&] { (void)phi_psi_jets(low, 0.0, 1); }), Errc::order_exceeds_class);
}

TEST(Generator, PhiPsiExamples) {
  const PhiPsi sc = phi_psi_jets(sinh_cosh(), 0.0, 4);
  EXPECT_NEAR(sc.phi.value(), 0.0, 1e-15);
  EXPECT_NEAR(sc.psi.value(), 1.0, 1e-15);
  for (int k = 1; k <= 4; ++k) {
    EXPECT_NEAR(sc.phi[k], 0.0, 1e-14);
    EXPECT_NEAR(sc.psi[k], 0.0, 1e-14);
  }
  const auto lg = builtin_pair(family::Quasiarithmetic{log(x), {0.5, 4.0}});
  const PhiPsi l = phi_psi_jets(lg, 2.0, 3);
  EXPECT_DOUBLE_EQ(l.phi.value(), -0.5);
  for (int k = 0; k <= 3; ++k) EXPECT_EQ(l.psi[k], 0.0);
}

TEST(Generator, QuasiarithmeticPairsHaveZeroPsi) {
  const std::vector<Expr> phis = {log(x), x * x, exp(0.3 * x), pow(x, -1.5), sqrt(x) + x};
  for (const auto& phi : phis) {
    const auto pair = builtin_pair(family::Quasiarithmetic{phi, {0.5, 3.0}});
    const Expr ratio = phi.derivative().derivative() / phi.derivative();
    for (double t : {0.7, 1.3, 2.6}) {
      const PhiPsi pp = phi_psi_jets(pair, t, 6);
      const Jet expected = ratio.jet(t, 6);
      for (int k = 0; k <= 6; ++k) {
        EXPECT_EQ(pp.psi[k], 0.0);
        EXPECT_NEAR(pp.phi[k], expected[k], 1e-11 * std::max(1.0, std::abs(expected[k])))
            << phi.to_string() << " k=" << k;
      }
    }
  }
}

TEST(Generator, BuiltinFamilies) {
  const auto pw = builtin_pair(family::Power{2.0, 1.0, {0.5, 10.0}});
  EXPECT_DOUBLE_EQ(pw.f()(3.0), 9.0);
  EXPECT_DOUBLE_EQ(pw.g()(3.0), 3.0);
  EXPECT_EQ(pw.class_order(), 8);

  const auto t0 = builtin_pair(family::Trig{0.0, x, false, {0.1, 2.0}});
  EXPECT_DOUBLE_EQ(t0.f()(1.7), 1.7);
  EXPECT_DOUBLE_EQ(t0.g()(1.7), 1.0);

  const auto tm = builtin_pair(family::Trig{-1.0, x, false, {0.0, std::numbers::pi / 2}});
  EXPECT_DOUBLE_EQ(tm.f()(0.4), std::sin(0.4));
  EXPECT_DOUBLE_EQ(tm.g()(0.4), std::cos(0.4));

  const auto tp = builtin_pair(family::Trig{4.0, x, false, {-1.0, 1.0}});
  EXPECT_NEAR(tp.f()(0.3), std::sinh(0.6), 1e-15);

  const auto scaled = builtin_pair(family::Trig{0.0, log(x), true, {0.5, 4.0}});
  EXPECT_NEAR(scaled.f()(2.0), std::log(2.0) / 2.0, 1e-15);
  EXPECT_NEAR(scaled.g()(2.0), 0.5, 1e-15);

  const auto lp = builtin_pair(family::LogPower{1.0, {0.5, 4.0}});
  EXPECT_NEAR(lp.f()(2.0), 2.0 * std::log(2.0), 1e-15);

  const auto cd = builtin_pair(family::CauchyDerived{pow(x, 3.0), pow(x, 2.0), {0.5, 4.0}});
  EXPECT_NEAR(cd.f()(2.0), 12.0, 1e-14);
  EXPECT_NEAR(cd.g()(2.0), 4.0, 1e-14);
}

TEST(Generator, DegeneratePairsAreRejected) {
  EXPECT_EQ(code_of([] { (void)builtin_pair(family::Power{1.0, 1.0}); }), Errc::degenerate_pair);
  // g changes sign
  EXPECT_EQ(code_of([] { (void)builtin_pair(family::Custom{x, cos(x), {0.0, 3.0}}); }),
            Errc::degenerate_pair);
  // proportional functions
  EXPECT_EQ(code_of([] { (void)builtin_pair(family::Custom{2.0 * exp(x), exp(x), {0.0, 1.0}}); }),
            Errc::degenerate_pair);
  // the Wronskian of (x^3, 1) vanishes at 0
  EXPECT_EQ(code_of([] { (void)builtin_pair(family::Quasiarithmetic{pow(x, 3.0), {-1.0, 1.0}}); }),
            Errc::degenerate_pair);
}

TEST(Generator, EquivalentTransformExamples) {
  const auto sc = sinh_cosh();
  const auto same = equivalent_transform(sc, 1, 0, 0, 1);
  const auto ex = equivalent_transform(sc, 1, 1, -1, 1);
  const auto twice = equivalent_transform(sc, 2, 0, 0, 2);
  for (double t : {-1.0, 0.2, 1.4}) {
    EXPECT_DOUBLE_EQ(same.f()(t), sc.f()(t));
    EXPECT_NEAR(ex.f()(t), std::exp(t), 1e-14);
    EXPECT_NEAR(ex.g()(t), std::exp(-t), 1e-14);
    const PhiPsi a = phi_psi_jets(sc, t, 0);
    const PhiPsi b = phi_psi_jets(twice, t, 0);
    EXPECT_NEAR(a.phi.value(), b.phi.value(), 1e-14);
    EXPECT_NEAR(a.psi.value(), b.psi.value(), 1e-14);
  }
  EXPECT_EQ(code_of([&] { (void)equivalent_transform(sc, 1, 2, 2, 4); }), Errc::singular_matrix);
}

TEST(Generator, AreEquivalentExamples) {
  const auto sc = sinh_cosh();
  const auto grid = chebyshev_grid(sc.domain(), 32);
  EXPECT_TRUE(are_equivalent(sc, equivalent_transform(sc, 2, 1, 1, 1), grid, 1e-10));
  EXPECT_TRUE(are_equivalent(sc, sc, grid, 0.0));
  const auto lin = builtin_pair(family::Custom{x, Expr::constant(1.0), {-2.0, 2.0}});
  EXPECT_FALSE(are_equivalent(sc, lin, grid, 1e-6));
}

TEST(Generator, ChebyshevGridIsInterior) {
  const Interval d{0.5, 4.0};
  const auto g = chebyshev_grid(d, 64);
  ASSERT_EQ(g.size(), 64u);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_TRUE(d.contains(g[i]));
    if (i > 0) EXPECT_LT(g[i - 1], g[i]);
  }
}

TEST(GeneratorProperty, EquivalenceUnderRandomMatrices) {
  for (const auto& pair : gqm::testing::sample_pairs()) {
    const auto grid = chebyshev_grid(pair.domain(), 16);
    for (int trial = 0; trial < 20; ++trial) {
      double a, b, c, d;
      do {
        a = uniform(-3, 3);
        b = uniform(-3, 3);
        c = uniform(-3, 3);
        d = uniform(-3, 3);
      } while (std::abs(a * d - b * c) < 0.1);
      const auto t = equivalent_transform(pair, a, b, c, d);
      // k may vanish somewhere; Phi and Psi only need W^{1,0} != 0
      EXPECT_TRUE(are_equivalent(pair, t, grid, 1e-8)) << pair.label();
    }
  }
}

TEST(GeneratorProperty, WronskiansFromRecursion) {
  for (const auto& pair : gqm::testing::sample_pairs()) {
    for (int trial = 0; trial < 5; ++trial) {
      const double t = uniform(pair.domain().lo + 0.05, pair.domain().hi - 0.05);
      const RecursionTable tab = recursion_table(pair, t);
      const double w10 = wronskian(pair, 1, 0, t);
      for (int i = 0; i <= 4; ++i) {
        for (int j = 0; j <= 4; ++j) {
          const double lhs = wronskian(pair, i, j, t);
          const double rhs = (tab.phi[i].value() * tab.psi[j].value() -
                              tab.phi[j].value() * tab.psi[i].value()) * w10;
          EXPECT_TRUE(close_rel(lhs, rhs, 1e-9, 1e-12))
              << pair.label() << " i=" << i << " j=" << j << ": " << lhs << " vs " << rhs;
        }
      }
    }
  }
}

TEST(GeneratorProperty, PowerWeightIdentities) {
  for (const auto& pair : gqm::testing::sample_pairs()) {
    for (int trial = 0; trial < 5; ++trial) {
      const double t = uniform(pair.domain().lo + 0.05, pair.domain().hi - 0.05);
      const double p = uniform(0.2, 3.0);
      const Jet W = wronskian_jet(pair, 1, 0, t, 5);
      const Jet V = abs_pow(W, -p);
      const Jet Phi = -(V.derivative() / V);
      double v[6], f[5];
      for (int k = 0; k <= 5; ++k) v[k] = V.derivative(k);
      for (int k = 0; k <= 4; ++k) f[k] = Phi.derivative(k);
      const double F = f[0], F1 = f[1], F2 = f[2], F3 = f[3], F4 = f[4];
      const double expected[] = {
          -v[0] * F,
          v[0] * (F * F - F1),
          v[0] * (-F * F * F + 3 * F1 * F - F2),
          v[0] * (F * F * F * F - 6 * F1 * F * F + 4 * F2 * F + 3 * F1 * F1 - F3),
          v[0] * (-std::pow(F, 5) + 10 * F1 * F * F * F - 15 * F1 * F1 * F - 10 * F2 * F * F +
                  10 * F2 * F1 + 5 * F3 * F - F4),
      };
      for (int k = 1; k <= 5; ++k) {
        EXPECT_TRUE(close_rel(v[k], expected[k - 1], 1e-8, 1e-12))
            << pair.label() << " order " << k << ": " << v[k] << " vs " << expected[k - 1];
      }
    }
  }
}
