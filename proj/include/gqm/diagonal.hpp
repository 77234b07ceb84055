#pragma once

#include <array>
#include <span>
#include <vector>

#include "gqm/generator.hpp"
#include "gqm/jet.hpp"
#include "gqm/measure.hpp"

namespace gqm {

/// phi_i, psi_i (i = 0..8) at a point. phi_0 = 0, psi_0 = 1 and
///   phi_{i+1} = phi_i' + phi_i Phi + psi_i,   psi_{i+1} = phi_i Psi + psi_i'.
/// Each step costs one derivative, so phi[i] and psi[i] carry jets of order
/// 8 - i (order 8 for i = 0).
struct RecursionTable {
  double x = 0.0;
  Jet Phi;
  Jet Psi;
  std::array<Jet, kMaxOrder + 1> phi;
  std::array<Jet, kMaxOrder + 1> psi;
};

RecursionTable recursion_table(const GeneratorPair& pair, double x);

/// Checks the two-step identities
///   phi_{i+2} = phi_i'' + 2 phi_i' Phi + phi_i phi_3 + 2 psi_i' + psi_i Phi,
///   psi_{i+2} = 2 phi_i' Psi + phi_i psi_3 + psi_i'' + psi_i Psi
/// for i = 0..4 on every jet coefficient they share, relative to max(1, |lhs|).
bool drec_check(const RecursionTable& table, double tol);
bool drec_check(const GeneratorPair& pair, double x, double tol);

/// Incomplete Bell polynomial B_{n,k}(x_1, ..., x_{n-k+1}) by the recursion
///   B_{n,k} = sum_{j=1}^{n-k+1} C(n-1, j-1) x_j B_{n-j,k-1}.
/// xs[j] holds x_j; xs[0] is ignored. Needs 0 <= k <= n <= 8.
double bell_incomplete(int n, int k, std::span<const double> xs);

/// Closed forms for even n <= 8 with vanishing odd arguments, e.g.
/// B_{8,2} = 28 x_2 x_6 + 35 x_4^2. Throws UnsupportedIndex outside that table.
double bell_closed_form(int n, int k, std::span<const double> xs);

/// Even derivatives of m_x(u) = M(x + u/2, x - u/2) at u = 0; the odd ones
/// vanish for symmetric measures.
struct DiagonalDerivatives {
  double d2 = 0.0;
  double d4 = 0.0;
  double d6 = 0.0;
  double d8 = 0.0;

  double operator[](int i) const {
    const double v[] = {d2, d4, d6, d8};
    return v[i];
  }
};

/// Closed forms in the central moments mu_2..mu_8 and the recursion table.
/// Throws AsymmetricMeasure unless is_symmetric(m).
DiagonalDerivatives diagonal_derivatives(const GeneratorPair& pair, const Measure& m, double x);

/// Independent path: expands det[int F(x + (t - 1/2) u) dmu, F(m_x(u))] = 0
/// in u with F = (f, g) and Faà di Bruno for F∘m_x, solving for one
/// derivative of m_x at a time from raw derivatives of f and g.
DiagonalDerivatives implicit_series_oracle(const GeneratorPair& pair, const Measure& m, double x);

/// All derivatives m_x^(n)(0), n = 0..8, from the same expansion. Odd entries
/// are kept so asymmetric inputs can be inspected.
std::array<double, kMaxOrder + 1> implicit_series_all(const GeneratorPair& pair, const Measure& m,
                                                      double x);

struct FiniteDifferenceResult {
  double step = 0.0;     // smallest half-width used for the slice argument u
  double fd_d2 = 0.0;    // NaN when not requested
  double fd_d4 = 0.0;
  double residual_d2 = 0.0;
  double residual_d4 = 0.0;
};

/// Richardson-extrapolated central differences of u -> M(x + u/2, x - u/2)
/// compared against diagonal_derivatives. Orders must be a subset of {2, 4}.
/// The base step is 1e-2 of the domain width; throws StencilOutOfDomain when
/// the widest stencil leaves the domain.
FiniteDifferenceResult finite_difference_check(const GeneratorPair& pair, const Measure& m,
                                               double x, std::span<const int> orders);

}  // namespace gqm
