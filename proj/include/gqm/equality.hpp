#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gqm/expr.hpp"
#include "gqm/generator.hpp"
#include "gqm/mean.hpp"
#include "gqm/measure.hpp"

namespace gqm {

using Point2 = std::pair<double, double>;

/// n x n uniform grid on the central 80% sub-square of domain^2, followed by
/// n points just off the diagonal (offset 1e-3 of the width).
std::vector<Point2> square_grid(const Interval& domain, int n = 17);
/// Only the off-diagonal points of square_grid.
std::vector<Point2> near_diagonal_grid(const Interval& domain, int n = 17);

struct GridComparison {
  bool equal = false;
  double max_residual = 0.0;
  Point2 worst{};
};

/// Evaluates both means at every grid point; equal iff max |M1 - M2| <= tol.
GridComparison means_equal_grid(const MeanSpec& spec1, const MeanSpec& spec2,
                                std::span<const Point2> grid, double tol);

enum class Verdict { equal, not_equal, inconclusive };
std::string to_string(Verdict v);

struct ConditionRecord {
  std::string id;  // e.g. "psi-iv" or "cross-vii"
  bool checked = true;
  bool holds = false;
  double residual = 0.0;
  std::map<std::string, double> constants;
  std::string note;
};

struct EqualityReport {
  std::string label;
  Verdict verdict = Verdict::inconclusive;
  std::vector<ConditionRecord> conditions;

  /// Throws std::out_of_range for an unknown id.
  const ConditionRecord& condition(const std::string& id) const;
  bool holds(const std::string& id) const { return condition(id).holds; }
};

/// (max - min) / max(|mean|, 1); the measure of "constant on the grid".
double relative_spread(std::span<const double> values);
inline constexpr double kConstancyTol = 1e-6;

struct CheckOptions {
  int function_points = 64;  // Chebyshev nodes for pointwise conditions
  int mean_points = 17;      // mean grid is mean_points x mean_points
  double function_tol = 1e-8;
  double mean_tol = 1e-10;
};

/// Conditions (i)-(v) for two pairs sharing Psi under one symmetric measure
/// with mu_2 != 0: (i) means equal on the square grid, (ii) near the
/// diagonal, (iii) equal second diagonal derivatives, (iv) equal Phi,
/// (v) equivalent pairs. A sixth record "psi-chain" holds iff all five agree.
/// Throws HypothesisViolated when the Psi's differ or mu_2 = 0.
EqualityReport check_shared_psi(const GeneratorPair& pair1, const GeneratorPair& pair2,
                                const Measure& m, const CheckOptions& opts = {});

struct EqualityWitness {
  std::vector<double> xs;
  std::vector<double> V;    // |W^{1,0}_{f,g}|^{-p}
  std::vector<double> Phi;  // -V'/V = p Phi_{f,g}
  std::vector<double> B;
  double c = 0.0;
  double c_spread = 0.0;
  double phi_residual = 0.0;  // max |q Phi_{h,k} - p Phi_{f,g}|, relative
  // filled by check_cross_measure
  double a_const = 0.0;
  double b_const = 0.0;
  double eta = 0.0;
};

/// Pointwise inversion of
///   Psi_{f,g} = (B + c) / (6 p^<2> V) - (p - 2)(Phi' - Phi^2) / (6 p^2),
///   Psi_{h,k} = (B - c) / (6 q^<2> V) - (q - 2)(Phi' - Phi^2) / (6 q^2).
/// Throws PhiMismatch when q Phi_{h,k} and p Phi_{f,g} differ by more than tol.
EqualityWitness extract_witness(const GeneratorPair& pair_f, const GeneratorPair& pair_h, double p,
                                double q, std::span<const double> grid, double tol = 1e-8);

struct QuadraticRelation {
  double alpha = 0.0, beta = 0.0, gamma = 0.0;  // alpha f^2 + beta fg + gamma g^2 = 1
  double delta = 0.0, epsilon = 0.0, zeta = 0.0;  // delta h^2 + eps hk + zeta k^2 = W_hk^{2/3}
  double rho = 0.0;  // eta^{1/3}
  double residual_fg = 0.0;
  double residual_hk = 0.0;
};

/// Least-squares fit of both quadratic relations on the grid. Throws
/// SingularFit when the monomials are numerically dependent.
QuadraticRelation fit_quadratic_relations(const GeneratorPair& pair_f, const GeneratorPair& pair_h,
                                          std::span<const double> grid);

/// Known generator of the common quasiarithmetic mean: the pairs should be
/// equivalent to (S_a∘phi, C_a∘phi) and (phi' S_b∘phi, phi' C_b∘phi).
struct QuasiarithmeticHint {
  Expr phi;
  double a = 0.0;
  double b = 0.0;
};

/// Bajraktarević mean of pair_f (measure (delta_0 + delta_1)/2) against the
/// generalized mean of pair_h under the Lebesgue measure. Records cross-i ... cross-ix
/// plus cross-witness; cross-ix is only checked when a hint is given.
EqualityReport check_cross_measure(const GeneratorPair& pair_f, const GeneratorPair& pair_h,
                                   const CheckOptions& opts = {},
                                   const std::optional<QuasiarithmeticHint>& hint = std::nullopt);

struct DemoInstance {
  std::string name;
  Expr phi;
  double a = 0.0;
  double b = 0.0;
  Interval domain;
};

/// (id, 1, 0) on (0, 2); (id, -1, -1) on (0.1, pi/2 - 0.1); (log, 0, 0) on (0.5, 4).
std::vector<DemoInstance> default_demo_suite();

/// Builds (S_a∘phi, C_a∘phi) and (phi' S_b∘phi, phi' C_b∘phi) and certifies
/// each instance with check_cross_measure.
std::vector<EqualityReport> intersection_demo(std::span<const DemoInstance> suite,
                                              const CheckOptions& opts = {});

/// Power-mean index of a Gini or Stolarsky parameter pair, if it has one:
/// Gini (t,0), (0,t) -> t and (s,-s) -> 0; Stolarsky (2t,t), (t,2t) -> t and
/// (s,-s) -> 0.
std::optional<double> gini_power_index(double a, double b, double tol = 1e-9);
std::optional<double> stolarsky_power_index(double a, double b, double tol = 1e-9);

struct ScanHit {
  double a = 0.0, b = 0.0;  // Gini parameters
  double c = 0.0, d = 0.0;  // Stolarsky parameters
  double max_residual = 0.0;
  bool consistent = false;  // both sides are the same power mean
  double index = 0.0;       // that power, when consistent
};

struct ScanResult {
  std::vector<ScanHit> hits;
  std::size_t tested = 0;
  std::size_t anomalous = 0;
};

/// Uniform parameter grid: n values from lo to hi, paired as n x n.
std::vector<Point2> parameter_grid(double lo, double hi, int n);
std::vector<Point2> default_scan_panel();

/// Flags every (Gini, Stolarsky) combination whose maximum difference over
/// the panel is below tol. Hits are reported in input order (Gini major).
ScanResult gini_stolarsky_scan(std::span<const Point2> gini_params,
                               std::span<const Point2> stolarsky_params,
                               std::span<const Point2> panel, double tol);

}  // namespace gqm
