#pragma once

#include <functional>
#include <optional>
#include <variant>

#include "gqm/expr.hpp"
#include "gqm/generator.hpp"
#include "gqm/interval.hpp"
#include "gqm/measure.hpp"

namespace gqm {

/// Parameter differences, parameters and |ln x - ln y| below this switch to
/// the limit branches of the Gini and Stolarsky formulas.
inline constexpr double kBranchTol = 1e-12;

double eval_power(double a, double x, double y);
double eval_gini(double a, double b, double x, double y);
double eval_stolarsky(double a, double b, double x, double y);

/// phi^{-1}((phi(x) + phi(y)) / 2) for strictly monotone phi.
double eval_quasiarithmetic(const Expr& phi, double x, double y,
                            std::optional<Interval> domain = std::nullopt);
double eval_quasiarithmetic(const std::function<double(double)>& phi, double x, double y);

/// (f/g)^{-1}(int f(tx + (1-t)y) dmu / int g(tx + (1-t)y) dmu).
double eval_generalized(const GeneratorPair& pair, const Measure& m, double x, double y);
double eval_bajraktarevic(const GeneratorPair& pair, double x, double y);

/// Sources (f, g) of a Cauchy mean: the mean inverts f'/g' at the difference
/// quotient (f(x) - f(y)) / (g(x) - g(y)). Needs g' > 0 on the domain.
struct CauchySources {
  Expr f;
  Expr g;
  Interval domain{0.1, 10.0};
};

/// The validated pair (f', g').
GeneratorPair cauchy_derivative_pair(const CauchySources& src);
double eval_cauchy(const CauchySources& src, double x, double y);

namespace spec {

struct Power {
  double a = 1.0;
};
struct Gini {
  double a = 1.0;
  double b = 0.0;
};
struct Stolarsky {
  double a = 2.0;
  double b = 1.0;
};
struct Quasiarithmetic {
  Expr phi;
  Interval domain{0.1, 10.0};
};
struct Bajraktarevic {
  GeneratorPair pair;
};
struct Cauchy {
  CauchySources sources;
};
struct Generalized {
  GeneratorPair pair;
  Measure measure;
};

}  // namespace spec

using MeanSpec = std::variant<spec::Power, spec::Gini, spec::Stolarsky, spec::Quasiarithmetic,
                              spec::Bajraktarevic, spec::Cauchy, spec::Generalized>;

double evaluate(const MeanSpec& spec, double x, double y);

/// Domain on which a spec may be evaluated; power-type families use (0, inf).
Interval spec_domain(const MeanSpec& spec);

}  // namespace gqm
