#include "gqm/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gqm/error.hpp"
#include "gqm/quadrature.hpp"

namespace gqm {

namespace {

constexpr double kMassTol = 1e-12;
constexpr int kDensitySamples = 33;

double horner(const std::vector<double>& poly, double t) {
  double acc = 0.0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * t + *it;
  return acc;
}

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

// Coefficients of p(s + centre) in powers of s.
std::vector<double> shifted(const std::vector<double>& poly, double centre) {
  const int n = static_cast<int>(poly.size());
  std::vector<double> out(n, 0.0);
  for (int j = 0; j < n; ++j) {
    double cp = 1.0;  // centre^(j - i) built from i = j downwards
    for (int i = j; i >= 0; --i) {
      out[i] += poly[j] * binomial(j, i) * cp;
      cp *= centre;
    }
  }
  return out;
}

void validate(const std::vector<Atom>& atoms, const std::vector<DensityPiece>& density) {
  double mass = 0.0;
  for (const auto& a : atoms) {
    if (!(a.t >= 0.0 && a.t <= 1.0)) {
      throw Error(Errc::invalid_measure, "atom position " + std::to_string(a.t) + " outside [0,1]");
    }
    if (!(a.w > 0.0)) throw Error(Errc::invalid_measure, "atom weight must be positive");
    mass += a.w;
  }
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      if (atoms[i].t == atoms[j].t) throw Error(Errc::invalid_measure, "duplicate atom position");
    }
  }
  for (const auto& piece : density) {
    if (!(piece.lo >= 0.0 && piece.hi <= 1.0 && piece.lo < piece.hi)) {
      throw Error(Errc::invalid_measure, "density piece must satisfy 0 <= lo < hi <= 1");
    }
    for (int k = 0; k < kDensitySamples; ++k) {
      const double c = std::cos(std::numbers::pi * (k + 0.5) / kDensitySamples);
      const double t = 0.5 * (piece.lo + piece.hi) + 0.5 * (piece.hi - piece.lo) * c;
      if (horner(piece.poly, t) < 0.0) {
        throw Error(Errc::invalid_measure, "density negative at t=" + std::to_string(t));
      }
    }
    for (std::size_t j = 0; j < piece.poly.size(); ++j) {
      mass += piece.poly[j] * (std::pow(piece.hi, j + 1.0) - std::pow(piece.lo, j + 1.0)) / (j + 1.0);
    }
  }
  if (std::abs(mass - 1.0) > kMassTol) {
    throw Error(Errc::invalid_measure, "total mass " + std::to_string(mass) + " differs from 1");
  }
}

}  // namespace

Measure::Measure(std::vector<Atom> atoms, std::vector<DensityPiece> density)
    : atoms_(std::move(atoms)), density_(std::move(density)) {
  validate(atoms_, density_);
}

Measure Measure::dirac(double t) { return Measure({{t, 1.0}}, {}); }

Measure Measure::uniform() { return Measure({}, {{0.0, 1.0, {1.0}}}); }

Measure Measure::mixture(const std::vector<std::pair<double, Measure>>& parts) {
  std::vector<Atom> atoms;
  std::vector<DensityPiece> density;
  for (const auto& [weight, m] : parts) {
    for (const auto& a : m.atoms()) {
      auto it = std::find_if(atoms.begin(), atoms.end(), [&](const Atom& b) { return b.t == a.t; });
      if (it != atoms.end()) {
        it->w += weight * a.w;
      } else {
        atoms.push_back({a.t, weight * a.w});
      }
    }
    for (const auto& piece : m.density()) {
      DensityPiece scaled = piece;
      for (auto& c : scaled.poly) c *= weight;
      density.push_back(std::move(scaled));
    }
  }
  return Measure(std::move(atoms), std::move(density));
}

double Measure::total_mass() const { return moments_about(0.0)[0]; }

std::array<double, 9> Measure::moments_about(double centre) const {
  std::array<double, 9> out{};
  for (const auto& a : atoms_) {
    double s = 1.0;
    for (int k = 0; k <= 8; ++k) {
      out[k] += a.w * s;
      s *= a.t - centre;
    }
  }
  for (const auto& piece : density_) {
    const auto b = shifted(piece.poly, centre);
    const double lo = piece.lo - centre;
    const double hi = piece.hi - centre;
    for (int k = 0; k <= 8; ++k) {
      double sum = 0.0;
      for (std::size_t i = 0; i < b.size(); ++i) {
        const double e = k + static_cast<double>(i) + 1.0;
        sum += b[i] * (std::pow(hi, e) - std::pow(lo, e)) / e;
      }
      out[k] += sum;
    }
  }
  return out;
}

MomentVector moments(const Measure& m) {
  MomentVector mv;
  mv.raw = m.moments_about(0.0);
  mv.central = m.moments_about(mv.raw[1]);
  mv.raw[0] = 1.0;
  mv.central[0] = 1.0;
  mv.central[1] = 0.0;
  return mv;
}

bool is_symmetric(const Measure& m, double tol) {
  const auto mv = moments(m);
  if (std::abs(mv.raw[1] - 0.5) > tol) return false;
  for (int k = 3; k <= 7; k += 2) {
    if (std::abs(mv.central[k]) > tol) return false;
  }
  return true;
}

double modified_power(double p, int n) {
  double v = 1.0;
  for (int i = 0; i < n; ++i) v *= p / (1.0 + i * p);
  return v;
}

MomentVector pi_moments(PiParams params, int max_order) {
  if (!(params.ell > 0.0 && params.ell <= 1.0 / 16.0 && params.p > 0.0 && params.p <= 2.0)) {
    throw Error(Errc::params_outside_pi, "need 0 < ell <= 1/16 and 0 < p <= 2, got ell=" +
                                             std::to_string(params.ell) +
                                             " p=" + std::to_string(params.p));
  }
  if (max_order < 0 || max_order > 8) {
    throw Error(Errc::unsupported_index, "moment order must be in 0..8");
  }
  MomentVector mv;
  mv.max_order = max_order;
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  mv.raw.fill(nan);
  mv.central.fill(nan);
  double fact_ratio = 1.0;  // (2n)!/n!
  double ell_n = 1.0;
  for (int k = 0; k <= max_order; ++k) {
    if (k % 2 == 1) {
      mv.central[k] = 0.0;
      continue;
    }
    const int n = k / 2;
    if (n > 0) {
      fact_ratio *= (2.0 * n) * (2.0 * n - 1.0) / n;
      ell_n *= params.ell;
    }
    mv.central[k] = fact_ratio * ell_n * modified_power(params.p, n);
  }
  mv.central[0] = 1.0;
  // raw moments from the central ones about the mean 1/2
  for (int k = 0; k <= max_order; ++k) {
    double s = 0.0;
    for (int i = 0; i <= k; ++i) s += binomial(k, i) * mv.central[i] * std::pow(0.5, k - i);
    mv.raw[k] = s;
  }
  return mv;
}

Measure mn_measure(double tau, MnKind kind) {
  if (!(tau >= 0.0 && tau < 0.5)) {
    throw Error(Errc::invalid_tau, "tau must lie in [0, 1/2), got " + std::to_string(tau));
  }
  if (kind == MnKind::two_atoms) return Measure({{tau, 0.5}, {1.0 - tau, 0.5}}, {});
  return Measure({}, {{tau, 1.0 - tau, {1.0 / (1.0 - 2.0 * tau)}}});
}

double segment_integral(const Measure& m, const std::function<double(double)>& h, double x,
                        double y, std::optional<Interval> domain) {
  if (domain && !(domain->contains(x) && domain->contains(y))) {
    throw Error(Errc::domain_error, "segment [" + std::to_string(std::min(x, y)) + ", " +
                                        std::to_string(std::max(x, y)) + "] leaves the domain");
  }
  double total = 0.0;
  for (const auto& a : m.atoms()) total += a.w * h(a.t * x + (1.0 - a.t) * y);
  for (const auto& piece : m.density()) {
    total += integrate([&](double t) { return horner(piece.poly, t) * h(t * x + (1.0 - t) * y); },
                       piece.lo, piece.hi, 1e-12);
  }
  return total;
}

}  // namespace gqm
