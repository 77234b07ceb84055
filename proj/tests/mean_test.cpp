#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gqm/error.hpp"
#include "gqm/mean.hpp"
#include "gqm/root_find.hpp"
#include "support.hpp"

using namespace gqm;
using gqm::testing::endpoints;
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

}  // namespace

TEST(RootFind, SolvesMonotoneEquations) {
  auto cube = [](double z) { return z * z * z; };
  EXPECT_NEAR(solve_monotone(cube, 8.0, 0.0, 5.0), 2.0, 1e-13);
  EXPECT_NEAR(solve_monotone([](double z) { return -std::exp(z); }, -2.0, 0.0, 3.0),
              std::log(2.0), 1e-13);
  EXPECT_EQ(solve_monotone(cube, 1.0, 1.5, 1.5), 1.5);
  EXPECT_DOUBLE_EQ(solve_monotone(cube, 27.0, 3.0, 1.0), 3.0);
  EXPECT_EQ(code_of([&] { (void)solve_monotone(cube, 200.0, 0.0, 5.0); }), Errc::bracket_failure);
}

TEST(Mean, PowerExamples) {
  EXPECT_DOUBLE_EQ(eval_power(2, 1, 7), 5.0);
  EXPECT_DOUBLE_EQ(eval_power(0, 1, 4), 2.0);
  EXPECT_NEAR(eval_power(-1, 2, 6), 3.0, 1e-15);
  EXPECT_EQ(code_of([] { (void)eval_power(1, -1, 2); }), Errc::non_positive_argument);
  EXPECT_EQ(code_of([] { (void)eval_power(1, 0, 2); }), Errc::non_positive_argument);
}

TEST(Mean, GiniExamples) {
  EXPECT_NEAR(eval_gini(2, 1, 1, 3), 2.5, 1e-15);
  EXPECT_NEAR(eval_gini(2, 0, 1, 7), 5.0, 1e-14);
  EXPECT_NEAR(eval_gini(1, 1, 1, 2), std::pow(2.0, 2.0 / 3.0), 1e-15);
  EXPECT_EQ(code_of([] { (void)eval_gini(1, 2, 0, 2); }), Errc::non_positive_argument);
}

TEST(Mean, StolarskyExamples) {
  EXPECT_NEAR(eval_stolarsky(2, 1, 2, 6), 4.0, 1e-14);
  EXPECT_NEAR(eval_stolarsky(1, 0, 1, std::numbers::e), std::numbers::e - 1, 1e-15);
  EXPECT_NEAR(eval_stolarsky(3, -3, 1, 4), 2.0, 1e-15);
  // a = b branch at a = 1 is the identric mean
  const double identric = std::exp(-1.0) * std::pow(std::pow(4.0, 4.0) / 1.0, 1.0 / 3.0);
  EXPECT_NEAR(eval_stolarsky(1, 1, 1, 4), identric, 1e-14);
  EXPECT_NEAR(eval_stolarsky(0, 0, 2, 8), 4.0, 1e-15);
  EXPECT_EQ(eval_stolarsky(1.3, 0.2, 2.5, 2.5), 2.5);
}

TEST(Mean, QuasiarithmeticExamples) {
  EXPECT_NEAR(eval_quasiarithmetic(log(x), 4, 9), 6.0, 1e-13);
  EXPECT_NEAR(eval_quasiarithmetic(x, 4, 9), 6.5, 1e-13);
  EXPECT_NEAR(eval_quasiarithmetic(x * x, 1, 7, Interval{0.0, 100.0}), 5.0, 1e-13);
  EXPECT_EQ(code_of([] { (void)eval_quasiarithmetic(log(x), 0.5, 9, Interval{1.0, 10.0}); }),
            Errc::out_of_domain);
}

TEST(Mean, GeneralizedExamples) {
  const auto lin = builtin_pair(family::Quasiarithmetic{x, {0.1, 10.0}});
  EXPECT_NEAR(eval_generalized(lin, endpoints(), 2, 4), 3.0, 1e-13);
  EXPECT_NEAR(eval_generalized(lin, Measure::uniform(), 2, 4), 3.0, 1e-13);
  const auto sq = builtin_pair(family::Power{2, 1, {0.5, 10.0}});
  EXPECT_NEAR(eval_generalized(sq, endpoints(), 1, 3), 2.5, 1e-13);
  EXPECT_NEAR(eval_generalized(sq, endpoints(), 1, 3), eval_gini(2, 1, 1, 3), 1e-13);
  EXPECT_EQ(code_of([&] { (void)eval_generalized(lin, endpoints(), 0.05, 3); }),
            Errc::out_of_domain);
}

TEST(Mean, BajraktarevicAndCauchyExamples) {
  const auto sc = builtin_pair(family::Custom{sinh(x), cosh(x), {0.0, 4.0}});
  EXPECT_NEAR(eval_bajraktarevic(sc, 1, 3), 2.0, 1e-13);
  const CauchySources cubic{pow(x, 3.0), pow(x, 2.0), {0.5, 4.0}};
  EXPECT_NEAR(eval_cauchy(cubic, 1, 2), 14.0 / 9.0, 1e-13);
  const CauchySources sq_lin{x * x, x, {0.5, 10.0}};
  EXPECT_NEAR(eval_cauchy(sq_lin, 4, 9), 6.5, 1e-13);
  EXPECT_EQ(eval_cauchy(sq_lin, 3, 3), 3.0);
  // both branches of the Cauchy evaluator agree with the integral form
  const auto derived = cauchy_derivative_pair(cubic);
  for (double y : {1.001, 1.5, 3.0}) {
    EXPECT_NEAR(eval_cauchy(cubic, 1.0, y), eval_generalized(derived, Measure::uniform(), 1.0, y),
                1e-13);
  }
}

TEST(Mean, EvaluateDispatches) {
  const MeanSpec specs[] = {spec::Power{2}, spec::Gini{2, 1}, spec::Stolarsky{2, 1},
                            spec::Quasiarithmetic{x * x, {0.1, 10}}};
  EXPECT_DOUBLE_EQ(evaluate(specs[0], 1, 7), 5.0);
  EXPECT_NEAR(evaluate(specs[1], 1, 3), 2.5, 1e-15);
  EXPECT_NEAR(evaluate(specs[2], 2, 6), 4.0, 1e-14);
  EXPECT_NEAR(evaluate(specs[3], 1, 7), 5.0, 1e-13);
}

TEST(MeanProperty, ClosedFormIdentities) {
  for (double a : {-2.5, -1.0, -0.3, 0.0, 0.4, 1.0, 2.0, 3.0}) {
    for (double xv : {0.3, 1.0, 2.2, 7.0}) {
      for (double yv : {0.5, 1.7, 4.0}) {
        const double h = eval_power(a, xv, yv);
        EXPECT_NEAR(eval_gini(a, 0, xv, yv), h, 1e-12 * h);
        EXPECT_NEAR(eval_gini(0, a, xv, yv), h, 1e-12 * h);
        EXPECT_NEAR(eval_stolarsky(2 * a, a, xv, yv), h, 1e-12 * h);
        EXPECT_NEAR(eval_stolarsky(a, -a, xv, yv), eval_power(0, xv, yv), 1e-12 * h);
        EXPECT_NEAR(eval_gini(a, -a, xv, yv), eval_power(0, xv, yv), 1e-12 * h);
      }
    }
  }
}

TEST(MeanProperty, StolarskyBranchContinuity) {
  for (int trial = 0; trial < 200; ++trial) {
    const double a = uniform(-3, 3);
    const double xv = uniform(0.1, 10);
    const double yv = uniform(0.1, 10);
    EXPECT_LE(std::abs(eval_stolarsky(a, a + 1e-9, xv, yv) - eval_stolarsky(a, a, xv, yv)), 1e-6);
    EXPECT_LE(std::abs(eval_stolarsky(a, 1e-9, xv, yv) - eval_stolarsky(a, 0, xv, yv)), 1e-6);
    EXPECT_LE(std::abs(eval_gini(a, a + 1e-9, xv, yv) - eval_gini(a, a, xv, yv)), 1e-6);
    EXPECT_LE(std::abs(eval_power(1e-9, xv, yv) - eval_power(0, xv, yv)), 1e-6);
  }
}

TEST(MeanProperty, InternalitySymmetryReflexivity) {
  const auto lg = builtin_pair(family::Quasiarithmetic{log(x), {0.1, 10.0}});
  const auto sc = builtin_pair(family::Custom{sinh(x), cosh(x), {0.1, 10.0}});
  const auto lp = builtin_pair(family::LogPower{0.5, {0.1, 10.0}});
  const Measure mix = Measure::mixture({{0.5, Measure::uniform()},
                                        {0.25, Measure::dirac(0.2)},
                                        {0.25, Measure::dirac(0.8)}});
  std::vector<std::pair<std::string, std::function<double(double, double)>>> means = {
      {"power", [](double u, double v) { return eval_power(-1.3, u, v); }},
      {"gini", [](double u, double v) { return eval_gini(2.1, -0.7, u, v); }},
      {"gini-diag", [](double u, double v) { return eval_gini(1.4, 1.4, u, v); }},
      {"stolarsky", [](double u, double v) { return eval_stolarsky(-1.1, 2.6, u, v); }},
      {"stolarsky-log", [](double u, double v) { return eval_stolarsky(1.7, 0, u, v); }},
      {"stolarsky-diag", [](double u, double v) { return eval_stolarsky(-0.8, -0.8, u, v); }},
      {"quasiarithmetic", [](double u, double v) { return eval_quasiarithmetic(exp(x), u, v); }},
      {"bajraktarevic", [&](double u, double v) { return eval_bajraktarevic(sc, u, v); }},
      {"cauchy",
       [](double u, double v) { return eval_cauchy({pow(x, 3.0), log(x), {0.1, 10.0}}, u, v); }},
      {"generalized-lebesgue",
       [&](double u, double v) { return eval_generalized(lg, Measure::uniform(), u, v); }},
      {"generalized-mixture", [&](double u, double v) { return eval_generalized(lp, mix, u, v); }},
  };
  for (const auto& [name, mean] : means) {
    const int n = name.rfind("generalized", 0) == 0 || name == "bajraktarevic" ? 1000 : 10000;
    for (int trial = 0; trial < n; ++trial) {
      const double u = uniform(0.15, 9.5);
      const double v = uniform(0.15, 9.5);
      const double m = mean(u, v);
      EXPECT_GE(m, std::min(u, v)) << name;
      EXPECT_LE(m, std::max(u, v)) << name;
      if (trial % 10 == 0) {
        EXPECT_NEAR(mean(v, u), m, 1e-12 * m) << name;
        EXPECT_NEAR(mean(u, u), u, 1e-13 * u) << name;
      }
    }
  }
}

TEST(MeanProperty, EquivalentPairsGiveTheSameMean) {
  const Measure measures[] = {endpoints(), Measure::uniform(), mn_measure(0.25, MnKind::two_atoms)};
  for (const auto& pair : gqm::testing::sample_pairs()) {
    const Interval d = pair.domain();
    for (int trial = 0; trial < 10; ++trial) {
      // a mixing matrix that keeps k = c f + d g positive: small c, d > 0
      double fmax = 0.0;
      for (double t : chebyshev_grid(d, 33)) fmax = std::max(fmax, std::abs(pair.f()(t) / pair.g()(t)));
      const double dd = uniform(0.5, 2.0);
      const double cc = uniform(-0.5, 0.5) * dd / (fmax + 1.0);
      const double aa = uniform(-2.0, 2.0);
      double bb = uniform(-2.0, 2.0);
      if (std::abs(aa * dd - bb * cc) < 0.1) bb += 1.0;
      const auto t = equivalent_transform(pair, aa, bb, cc, dd);
      t.validate();
      for (const auto& m : measures) {
        const double u = uniform(d.lo, d.hi);
        const double v = uniform(d.lo, d.hi);
        EXPECT_NEAR(eval_generalized(pair, m, u, v), eval_generalized(t, m, u, v), 1e-11)
            << pair.label();
      }
    }
  }
}

TEST(MeanProperty, FamilyIdentitiesOnGrid) {
  // B_{f,1} = A_f, C_{phi^2, phi} = A_phi, M with endpoints = B, M of derivatives with Lebesgue = C
  const Interval d{0.5, 4.0};
  const Expr phis[] = {log(x), x * x, exp(x), sqrt(x)};
  for (const auto& phi : phis) {
    const auto qa = builtin_pair(family::Quasiarithmetic{phi, d});
    const CauchySources src{phi * phi, phi, d};
    for (int i = 0; i < 9; ++i) {
      for (int j = 0; j < 9; ++j) {
        const double u = 0.6 + 0.4 * i;
        const double v = 0.6 + 0.4 * j;
        const double a = eval_quasiarithmetic(phi, u, v);
        EXPECT_NEAR(eval_bajraktarevic(qa, u, v), a, 1e-11);
        EXPECT_NEAR(eval_cauchy(src, u, v), a, 1e-11) << phi.to_string();
      }
    }
  }
  const auto sc = builtin_pair(family::Custom{sinh(x), cosh(x), d});
  const CauchySources src{pow(x, 3.0), x, d};
  const auto derived = cauchy_derivative_pair(src);
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 9; ++j) {
      const double u = 0.6 + 0.4 * i;
      const double v = 0.6 + 0.4 * j;
      EXPECT_NEAR(eval_generalized(sc, endpoints(), u, v), eval_bajraktarevic(sc, u, v), 1e-11);
      EXPECT_NEAR(eval_generalized(derived, Measure::uniform(), u, v), eval_cauchy(src, u, v),
                  1e-11);
    }
  }
}
