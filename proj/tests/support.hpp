#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "gqm/expr.hpp"
#include "gqm/generator.hpp"
#include "gqm/measure.hpp"

namespace gqm::testing {

inline constexpr std::uint64_t kSeed = 0x5eed1234;

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(kSeed);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline bool close_rel(double a, double b, double rel, double abs_floor = 0.0) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)) + abs_floor;
}

inline Measure endpoints() { return Measure({{0.0, 0.5}, {1.0, 0.5}}, {}); }

/// A mix of generator pairs of class 8 on positive domains, used by
/// property tests that need "some valid pair".
inline std::vector<GeneratorPair> sample_pairs() {
  const Expr x = Expr::var();
  return {
      builtin_pair(family::Custom{sinh(x), cosh(x), {0.2, 2.5}}),
      builtin_pair(family::Power{2.0, 1.0, {0.5, 4.0}}),
      builtin_pair(family::Power{-0.5, 1.5, {0.5, 4.0}}),
      builtin_pair(family::LogPower{0.7, {0.5, 4.0}}),
      builtin_pair(family::Quasiarithmetic{log(x), {0.5, 4.0}}),
      builtin_pair(family::Trig{1.0, x, false, {0.2, 2.0}}),
      builtin_pair(family::Trig{-1.0, x, false, {0.2, 1.3}}),
      builtin_pair(family::Custom{exp(2.0 * x), exp(x) + x * x + 1.0, {0.2, 1.8}}),
  };
}

}  // namespace gqm::testing
