#pragma once

#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gqm/expr.hpp"
#include "gqm/interval.hpp"
#include "gqm/jet.hpp"

namespace gqm {

inline constexpr int kValidationPoints = 257;
inline constexpr double kMinWronskian = 1e-10;

/// Generating pair (f, g) on an open interval. A validated pair has g > 0,
/// W^{1,0} = f'g - fg' bounded away from zero with a constant sign, and
/// finite jets up to class_order at kValidationPoints Chebyshev nodes.
/// Validation is sampled; it cannot prove the conditions on the whole
/// interval.
class GeneratorPair {
 public:
  GeneratorPair(Expr f, Expr g, Interval domain, int class_order = kMaxOrder,
                std::string label = {});

  /// Skips validation; call validate() before relying on the class invariants.
  static GeneratorPair unvalidated(Expr f, Expr g, Interval domain, int class_order = kMaxOrder,
                                   std::string label = {});

  /// Throws DegeneratePair (or DomainError from evaluation) on failure.
  void validate() const;

  const Expr& f() const noexcept { return f_; }
  const Expr& g() const noexcept { return g_; }
  const Interval& domain() const noexcept { return domain_; }
  int class_order() const noexcept { return class_order_; }
  const std::string& label() const noexcept { return label_; }

  /// f/g, the function inverted by every generator-based mean.
  double ratio(double x) const { return f_(x) / g_(x); }
  std::pair<Jet, Jet> jets(double x, int order) const;

 private:
  GeneratorPair(Expr f, Expr g, Interval domain, int class_order, std::string label, bool check);

  Expr f_;
  Expr g_;
  Interval domain_;
  int class_order_;
  std::string label_;
};

/// f^(i) g^(j) - g^(i) f^(j) at x.
double wronskian(const GeneratorPair& pair, int i, int j, double x);
/// The same determinant as a jet of the given order about x.
Jet wronskian_jet(const GeneratorPair& pair, int i, int j, double x, int order);

struct PhiPsi {
  Jet phi;  // W^{2,0} / W^{1,0}
  Jet psi;  // -W^{2,1} / W^{1,0}
};

PhiPsi phi_psi_jets(const GeneratorPair& pair, double x, int order);

/// Sine and cosine type solutions of h'' = a h.
Expr sine_type(double a);
Expr cosine_type(double a);

namespace family {

/// (x^a, x^b); needs a != b.
struct Power {
  double a = 1.0;
  double b = 0.0;
  Interval domain{0.1, 10.0};
};

/// (x^a log x, x^a), the diagonal Gini generators.
struct LogPower {
  double a = 0.0;
  Interval domain{0.1, 10.0};
};

/// (S_a∘phi, C_a∘phi), or (phi' S_a∘phi, phi' C_a∘phi) when scaled.
struct Trig {
  double a = 0.0;
  Expr phi;
  bool scale_by_phi_prime = false;
  Interval domain{-1.0, 1.0};
};

/// (phi, 1).
struct Quasiarithmetic {
  Expr phi;
  Interval domain{0.1, 10.0};
};

/// (f', g') built from the Cauchy sources (f, g).
struct CauchyDerived {
  Expr f;
  Expr g;
  Interval domain{0.1, 10.0};
};

struct Custom {
  Expr f;
  Expr g;
  Interval domain{0.1, 10.0};
};

}  // namespace family

using PairFamily = std::variant<family::Power, family::LogPower, family::Trig,
                                family::Quasiarithmetic, family::CauchyDerived, family::Custom>;

/// Validated pair of class 8 for one of the builtin families.
GeneratorPair builtin_pair(const PairFamily& fam);

/// (h, k) = (a f + b g, c f + d g). The result is not validated: positivity of
/// k on the domain is the caller's responsibility.
GeneratorPair equivalent_transform(const GeneratorPair& pair, double a, double b, double c,
                                   double d);

/// Phi and Psi agree at every grid point within
/// tol * max(1, |value|).
bool are_equivalent(const GeneratorPair& p1, const GeneratorPair& p2,
                    std::span<const double> grid, double tol);

/// n Chebyshev nodes of the first kind mapped into the interval (all interior).
std::vector<double> chebyshev_grid(const Interval& domain, int n);

}  // namespace gqm
