#pragma once

#include <array>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "gqm/interval.hpp"

namespace gqm {

struct Atom {
  double t = 0.0;  // position in [0, 1]
  double w = 0.0;  // positive mass
};

/// Absolutely continuous part on [lo, hi]: density sum_j poly[j] * t^j.
struct DensityPiece {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<double> poly;
};

/// Borel probability measure on [0, 1] made of finitely many atoms plus a
/// piecewise-polynomial density. Validated on construction: unit total mass
/// (1e-12), atoms inside [0, 1] and pairwise distinct, density nonnegative at
/// Chebyshev sample points of every piece.
class Measure {
 public:
  Measure(std::vector<Atom> atoms, std::vector<DensityPiece> density);

  static Measure dirac(double t);
  /// Lebesgue measure on [0, 1].
  static Measure uniform();
  /// Convex combination sum_i weight_i * measure_i (weights must sum to 1).
  static Measure mixture(const std::vector<std::pair<double, Measure>>& parts);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  const std::vector<DensityPiece>& density() const noexcept { return density_; }

  double total_mass() const;
  /// Exact value of int (t - centre)^k dmu(t) for k = 0..8.
  std::array<double, 9> moments_about(double centre) const;

 private:
  std::vector<Atom> atoms_;
  std::vector<DensityPiece> density_;
};

/// raw[k] = int t^k dmu, central[k] = int (t - raw[1])^k dmu.
/// Entries above max_order are NaN.
struct MomentVector {
  std::array<double, 9> raw{};
  std::array<double, 9> central{};
  int max_order = 8;
};

MomentVector moments(const Measure& m);

inline constexpr double kSymmetryTol = 1e-11;

bool is_symmetric(const Measure& m, double tol = kSymmetryTol);

/// Shape parameters of the symmetric moment family pi(ell, p).
struct PiParams {
  double ell = 0.0;
  double p = 0.0;
};

/// p^<n> = prod_{i<n} p / (1 + i p).
double modified_power(double p, int n);

/// Moments of pi(ell, p): odd central moments vanish, the even ones are
/// (2n)!/n! ell^n p^<n>, the mean is 1/2. Only the necessary conditions
/// 0 < ell <= 1/16, 0 < p <= 2 are enforced; existence of a measure with
/// these moments is not decided.
MomentVector pi_moments(PiParams params, int max_order = 8);

enum class MnKind { two_atoms, truncated_uniform };

/// (delta_tau + delta_{1-tau})/2, or the normalized Lebesgue measure on
/// [tau, 1 - tau].
Measure mn_measure(double tau, MnKind kind);

/// int h(t x + (1 - t) y) dmu(t). Atoms are summed exactly; density pieces
/// use adaptive 16-point Gauss–Legendre to 1e-12 absolute.
double segment_integral(const Measure& m, const std::function<double(double)>& h, double x,
                        double y, std::optional<Interval> domain = std::nullopt);

}  // namespace gqm
