#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <vector>

#include "gqm/diagonal.hpp"
#include "gqm/error.hpp"
#include "gqm/mean.hpp"
#include "support.hpp"

using namespace gqm;
using gqm::testing::close_rel;
using gqm::testing::endpoints;
using gqm::testing::sample_pairs;
using gqm::testing::uniform;

namespace {

const Expr x = Expr::var();

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::config_error;
}

GeneratorPair log_pair() { return builtin_pair(family::Quasiarithmetic{log(x), {0.5, 4.0}}); }
GeneratorPair id_pair() { return builtin_pair(family::Quasiarithmetic{x, {0.5, 4.0}}); }

// Taylor data of u -> sqrt(1 - u^2/4), the geometric mean slice at x = 1.
std::array<double, 4> geometric_slice_derivatives() {
  Jet u = Jet::variable(0.0, 8);
  Jet s = sqrt(1.0 - u * u * 0.25);
  return {s.derivative(2), s.derivative(4), s.derivative(6), s.derivative(8)};
}

}  // namespace

TEST(Recursion, InitialDataAndFirstSteps) {
  for (const auto& pair : sample_pairs()) {
    const double x0 = pair.domain().midpoint();
    const RecursionTable t = recursion_table(pair, x0);
    EXPECT_EQ(t.phi[0].value(), 0.0);
    EXPECT_EQ(t.psi[0].value(), 1.0);
    EXPECT_EQ(t.phi[1].value(), 1.0);
    EXPECT_EQ(t.psi[1].value(), 0.0);
    EXPECT_NEAR(t.phi[2].value(), t.Phi.value(), 1e-14 * std::max(1.0, std::abs(t.Phi.value())));
    EXPECT_NEAR(t.psi[2].value(), t.Psi.value(), 1e-14 * std::max(1.0, std::abs(t.Psi.value())));
    const double phi3 = t.Phi.derivative(1) + t.Phi.value() * t.Phi.value() + t.Psi.value();
    const double psi3 = t.Phi.value() * t.Psi.value() + t.Psi.derivative(1);
    EXPECT_TRUE(close_rel(t.phi[3].value(), phi3, 1e-12, 1e-12)) << pair.label();
    EXPECT_TRUE(close_rel(t.psi[3].value(), psi3, 1e-12, 1e-12)) << pair.label();
    for (int i = 0; i <= kMaxOrder; ++i) {
      EXPECT_EQ(t.phi[i].order(), kMaxOrder - i) << "phi order at " << i;
    }
  }
}

TEST(Recursion, LogPairHandValue) {
  const RecursionTable t = recursion_table(log_pair(), 1.0);
  EXPECT_NEAR(t.Phi.value(), -1.0, 1e-15);
  EXPECT_NEAR(t.phi[4].value(), -6.0, 1e-13);
  for (int i = 0; i <= kMaxOrder; ++i) EXPECT_NEAR(t.psi[i].value(), i == 0 ? 1.0 : 0.0, 1e-14);
}

TEST(Recursion, ArithmeticPairIsTrivial) {
  const RecursionTable t = recursion_table(id_pair(), 2.0);
  for (int i = 2; i <= kMaxOrder; ++i) EXPECT_EQ(t.phi[i].value(), 0.0);
  for (int i = 1; i <= kMaxOrder; ++i) EXPECT_EQ(t.psi[i].value(), 0.0);
}

TEST(Recursion, NeedsClassEight) {
  const auto low = GeneratorPair(log(x), Expr::constant(1.0), {0.5, 4.0}, 6);
  EXPECT_EQ(code_of([&] { (void)recursion_table(low, 1.0); }), Errc::order_exceeds_class);
}

TEST(Recursion, TwoStepIdentityHolds) {
  EXPECT_TRUE(drec_check(log_pair(), 2.0, 1e-9));
  for (const auto& pair : sample_pairs()) {
    for (double x0 : chebyshev_grid(pair.domain(), 5)) {
      EXPECT_TRUE(drec_check(pair, x0, 1e-9)) << pair.label() << " at " << x0;
    }
  }
}

TEST(Recursion, CorruptedTableFailsTwoStepIdentity) {
  RecursionTable t = recursion_table(log_pair(), 2.0);
  ASSERT_TRUE(drec_check(t, 1e-9));
  t.psi[2][0] += 0.1;
  EXPECT_FALSE(drec_check(t, 1e-9));
}

TEST(Recursion, ReproducesWronskians) {
  for (const auto& pair : sample_pairs()) {
    const double x0 = uniform(pair.domain().lo + 0.05, pair.domain().hi - 0.05);
    const RecursionTable t = recursion_table(pair, x0);
    const double w10 = wronskian(pair, 1, 0, x0);
    for (int i = 0; i <= 4; ++i) {
      for (int j = 0; j <= 4; ++j) {
        const double expect =
            (t.phi[i].value() * t.psi[j].value() - t.phi[j].value() * t.psi[i].value()) * w10;
        EXPECT_TRUE(close_rel(wronskian(pair, i, j, x0), expect, 1e-9, 1e-12))
            << pair.label() << " W^{" << i << "," << j << "}";
      }
    }
  }
}

TEST(Bell, ClosedFormExamples) {
  std::array<double, 9> xs{};
  xs[2] = 2.0;
  EXPECT_EQ(bell_closed_form(4, 2, xs), 12.0);
  EXPECT_EQ(bell_incomplete(4, 2, xs), 12.0);
  xs[2] = 1.0;
  EXPECT_EQ(bell_closed_form(8, 4, xs), 105.0);
  xs[4] = 3.0;
  xs[6] = 5.0;
  EXPECT_EQ(bell_closed_form(8, 2, xs), 28.0 * 5.0 + 35.0 * 9.0);
  EXPECT_EQ(bell_closed_form(6, 1, xs), 5.0);
  EXPECT_EQ(code_of([&] { (void)bell_closed_form(5, 2, xs); }), Errc::unsupported_index);
  EXPECT_EQ(code_of([&] { (void)bell_closed_form(10, 2, xs); }), Errc::unsupported_index);
}

TEST(Bell, RecursionMatchesClosedForms) {
  const std::array<std::pair<int, int>, 11> listed = {
      {{2, 1}, {4, 1}, {4, 2}, {6, 1}, {6, 2}, {6, 3}, {8, 1}, {8, 2}, {8, 3}, {8, 4}, {2, 2}}};
  for (int trial = 0; trial < 50; ++trial) {
    std::array<double, 9> xs{};
    for (int j = 2; j <= 8; j += 2) xs[j] = uniform(-3.0, 3.0);
    for (const auto& [n, k] : listed) {
      const double closed = bell_closed_form(n, k, xs);
      const double rec = bell_incomplete(n, k, xs);
      EXPECT_TRUE(close_rel(closed, rec, 1e-12, 1e-12)) << "B_" << n << "," << k;
    }
  }
}

TEST(Bell, GeneralRecursionSmallCases) {
  std::array<double, 9> xs{};
  for (int j = 1; j <= 8; ++j) xs[j] = 0.5 * j;
  EXPECT_EQ(bell_incomplete(0, 0, xs), 1.0);
  EXPECT_EQ(bell_incomplete(3, 0, xs), 0.0);
  EXPECT_DOUBLE_EQ(bell_incomplete(3, 2, xs), 3.0 * xs[1] * xs[2]);
  EXPECT_DOUBLE_EQ(bell_incomplete(4, 4, xs), std::pow(xs[1], 4));
  EXPECT_DOUBLE_EQ(bell_incomplete(4, 2, xs), 4.0 * xs[1] * xs[3] + 3.0 * xs[2] * xs[2]);
}

TEST(Diagonal, GeometricMeanSlice) {
  const auto exact = geometric_slice_derivatives();
  EXPECT_DOUBLE_EQ(exact[0], -0.25);
  EXPECT_DOUBLE_EQ(exact[1], -3.0 / 16.0);
  const auto closed = diagonal_derivatives(log_pair(), endpoints(), 1.0);
  const auto oracle = implicit_series_oracle(log_pair(), endpoints(), 1.0);
  for (int i = 0; i < 4; ++i) {
    EXPECT_TRUE(close_rel(closed[i], exact[i], 1e-10, 1e-12)) << "order " << 2 * i + 2;
    EXPECT_TRUE(close_rel(oracle[i], exact[i], 1e-10, 1e-12)) << "order " << 2 * i + 2;
  }
}

TEST(Diagonal, ArithmeticPairHasFlatSlice) {
  const Measure ms[] = {endpoints(), Measure::uniform(), mn_measure(0.3, MnKind::two_atoms)};
  for (const auto& m : ms) {
    const auto d = diagonal_derivatives(id_pair(), m, 1.7);
    const auto o = implicit_series_oracle(id_pair(), m, 1.7);
    for (int i = 0; i < 4; ++i) {
      EXPECT_EQ(d[i], 0.0);
      EXPECT_EQ(o[i], 0.0);
    }
  }
}

TEST(Diagonal, LogPairUnderLebesgue) {
  EXPECT_NEAR(diagonal_derivatives(log_pair(), Measure::uniform(), 1.0).d2, -1.0 / 12.0, 1e-14);
}

TEST(Diagonal, AsymmetricMeasureRejected) {
  const Measure skew({{0.0, 0.3}, {1.0, 0.7}}, {});
  EXPECT_EQ(code_of([&] { (void)diagonal_derivatives(log_pair(), skew, 1.0); }),
            Errc::asymmetric_measure);
  EXPECT_EQ(code_of([&] { (void)implicit_series_oracle(log_pair(), skew, 1.0); }),
            Errc::asymmetric_measure);
  // the full expansion still runs and exposes a non-zero first derivative
  const auto all = implicit_series_all(log_pair(), skew, 1.0);
  EXPECT_EQ(all[0], 1.0);
  EXPECT_GT(std::abs(all[1]), 0.1);
}

TEST(Diagonal, SymmetricMeasuresHaveVanishingOddDerivatives) {
  const auto pairs = sample_pairs();
  for (const auto& m : {endpoints(), Measure::uniform(), mn_measure(0.25, MnKind::truncated_uniform)}) {
    for (const auto& pair : pairs) {
      const auto all = implicit_series_all(pair, m, pair.domain().midpoint());
      for (int n = 1; n <= kMaxOrder; n += 2) {
        EXPECT_NEAR(all[n], 0.0, 1e-10 * std::max(1.0, std::abs(all[n - 1]))) << pair.label();
      }
    }
  }
}

TEST(DiagonalProperty, ClosedFormsMatchImplicitSeries) {
  const Measure ms[] = {endpoints(), Measure::uniform(), mn_measure(0.25, MnKind::two_atoms),
                        mn_measure(0.25, MnKind::truncated_uniform),
                        Measure::mixture({{0.4, Measure::uniform()},
                                          {0.3, Measure::dirac(0.1)},
                                          {0.3, Measure::dirac(0.9)}})};
  int combos = 0;
  for (const auto& pair : sample_pairs()) {
    for (const auto& m : ms) {
      for (double x0 : chebyshev_grid(pair.domain(), 3)) {
        const auto d = diagonal_derivatives(pair, m, x0);
        const auto o = implicit_series_oracle(pair, m, x0);
        for (int i = 0; i < 4; ++i) {
          EXPECT_TRUE(close_rel(d[i], o[i], 1e-8, 1e-12))
              << pair.label() << " x=" << x0 << " order " << 2 * i + 2 << ": " << d[i]
              << " vs " << o[i];
        }
        ++combos;
      }
    }
  }
  EXPECT_GE(combos, 15);
}

TEST(FiniteDifference, Examples) {
  const std::array<int, 2> both = {2, 4};
  const auto lg = finite_difference_check(log_pair(), endpoints(), 1.0, both);
  EXPECT_LE(lg.residual_d2, 1e-7);
  EXPECT_LE(lg.residual_d4, 1e-6);
  const auto id = finite_difference_check(id_pair(), endpoints(), 1.0, both);
  EXPECT_LE(id.residual_d2, 1e-11);
  const auto sc = builtin_pair(family::Custom{sinh(x), cosh(x), {0.2, 2.5}});
  const auto r = finite_difference_check(sc, endpoints(), 0.5, both);
  EXPECT_NEAR(diagonal_derivatives(sc, endpoints(), 0.5).d2, 0.0, 1e-14);
  EXPECT_LE(r.residual_d2, 1e-6);
}

TEST(FiniteDifference, OnlyRequestedOrders) {
  const std::array<int, 1> two = {2};
  const auto r = finite_difference_check(log_pair(), endpoints(), 1.0, two);
  EXPECT_TRUE(std::isnan(r.fd_d4));
  EXPECT_FALSE(std::isnan(r.fd_d2));
}

TEST(FiniteDifference, StencilMustFitInDomain) {
  const std::array<int, 2> both = {2, 4};
  EXPECT_EQ(code_of([&] { (void)finite_difference_check(log_pair(), endpoints(), 0.51, both); }),
            Errc::stencil_out_of_domain);
}

TEST(DiagonalProperty, SliceIsEven) {
  const Measure ms[] = {endpoints(), Measure::uniform(), mn_measure(0.1, MnKind::truncated_uniform)};
  for (const auto& pair : sample_pairs()) {
    const Interval d = pair.domain();
    for (const auto& m : ms) {
      for (int trial = 0; trial < 5; ++trial) {
        const double x0 = uniform(d.lo + 0.3 * d.width(), d.hi - 0.3 * d.width());
        const double u = uniform(0.0, 0.5 * d.width());
        const double a = eval_generalized(pair, m, x0 + u / 2, x0 - u / 2);
        const double b = eval_generalized(pair, m, x0 - u / 2, x0 + u / 2);
        EXPECT_NEAR(a, b, 1e-12 * std::abs(a)) << pair.label();
      }
    }
  }
}

TEST(DiagonalProperty, EqualMeansHaveEqualDiagonalDerivatives) {
  // Cauchy mean of (x^3, x^1.5) equals the power mean of order 1.5, which is
  // also the endpoint-measure mean of (x^1.5, 1).
  const Interval d{0.5, 4.0};
  const auto cauchy = builtin_pair(family::CauchyDerived{pow(x, 3.0), pow(x, 1.5), d});
  const auto power = builtin_pair(family::Power{1.5, 0.0, d});
  for (double x0 : {0.9, 1.6, 2.5}) {
    double worst = 0.0;
    for (double u : {-0.2, -0.1, -0.01, 0.01, 0.1, 0.2}) {
      const double a = eval_generalized(cauchy, Measure::uniform(), x0 + u / 2, x0 - u / 2);
      const double b = eval_generalized(power, endpoints(), x0 + u / 2, x0 - u / 2);
      worst = std::max(worst, std::abs(a - b));
    }
    ASSERT_LE(worst, 1e-12);
    const auto dc = diagonal_derivatives(cauchy, Measure::uniform(), x0);
    const auto dp = diagonal_derivatives(power, endpoints(), x0);
    for (int i = 0; i < 4; ++i) EXPECT_TRUE(close_rel(dc[i], dp[i], 1e-8, 1e-12)) << x0 << " " << i;
  }
  // and equivalent pairs under one measure
  for (const auto& pair : sample_pairs()) {
    const auto t = equivalent_transform(pair, 2.0, 1.0, 0.0, 1.0);
    const double x0 = pair.domain().midpoint();
    const auto a = diagonal_derivatives(pair, Measure::uniform(), x0);
    const auto b = diagonal_derivatives(t, Measure::uniform(), x0);
    for (int i = 0; i < 4; ++i) EXPECT_TRUE(close_rel(a[i], b[i], 1e-8, 1e-12)) << pair.label();
  }
}
