#include "gqm/equality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "gqm/diagonal.hpp"
#include "gqm/error.hpp"
#include "gqm/quadrature.hpp"

namespace gqm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Interval common_domain(const GeneratorPair& p1, const GeneratorPair& p2) {
  const Interval d{std::max(p1.domain().lo, p2.domain().lo),
                   std::min(p1.domain().hi, p2.domain().hi)};
  if (!(d.lo < d.hi)) throw Error(Errc::domain_error, "pairs have disjoint domains");
  return d;
}

double rel_diff(double a, double b) {
  const double r = std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
  return std::isnan(r) ? kInf : r;
}

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

const Measure& endpoint_measure() {
  static const Measure m({{0.0, 0.5}, {1.0, 0.5}}, {});
  return m;
}

const Measure& lebesgue() {
  static const Measure m = Measure::uniform();
  return m;
}

ConditionRecord grid_record(std::string id, const GridComparison& g, double tol) {
  ConditionRecord r;
  r.id = std::move(id);
  r.holds = g.equal;
  r.residual = g.max_residual;
  r.note = "max |difference| over the grid, tol " + std::to_string(tol);
  return r;
}

Verdict verdict_from(const std::vector<ConditionRecord>& recs, const std::string& direct) {
  bool all = true;
  bool direct_holds = false;
  for (const auto& r : recs) {
    if (!r.checked) continue;
    if (r.id == direct) direct_holds = r.holds;
    all = all && r.holds;
  }
  if (!direct_holds) return Verdict::not_equal;
  return all ? Verdict::equal : Verdict::inconclusive;
}

}  // namespace

std::vector<Point2> square_grid(const Interval& domain, int n) {
  std::vector<Point2> pts;
  const double lo = domain.lo + 0.1 * domain.width();
  const double step = 0.8 * domain.width() / (n - 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) pts.emplace_back(lo + i * step, lo + j * step);
  }
  const auto near = near_diagonal_grid(domain, n);
  pts.insert(pts.end(), near.begin(), near.end());
  return pts;
}

std::vector<Point2> near_diagonal_grid(const Interval& domain, int n) {
  std::vector<Point2> pts;
  const double lo = domain.lo + 0.1 * domain.width();
  const double step = 0.8 * domain.width() / (n - 1);
  const double off = 1e-3 * domain.width();
  for (int i = 0; i < n; ++i) {
    const double x = lo + i * step;
    pts.emplace_back(x, i % 2 == 0 ? x + off : x - off);
  }
  return pts;
}

GridComparison means_equal_grid(const MeanSpec& spec1, const MeanSpec& spec2,
                                std::span<const Point2> grid, double tol) {
  GridComparison out;
  for (const auto& [x, y] : grid) {
    double r = std::abs(evaluate(spec1, x, y) - evaluate(spec2, x, y));
    if (std::isnan(r)) r = kInf;
    if (r > out.max_residual) {
      out.max_residual = r;
      out.worst = {x, y};
    }
  }
  out.equal = out.max_residual <= tol;
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::equal: return "equal";
    case Verdict::not_equal: return "not-equal";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

const ConditionRecord& EqualityReport::condition(const std::string& id) const {
  for (const auto& r : conditions) {
    if (r.id == id) return r;
  }
  throw std::out_of_range("no condition " + id);
}

double relative_spread(std::span<const double> values) {
  if (values.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double s = (*hi - *lo) / std::max(std::abs(mean_of(values)), 1.0);
  return std::isnan(s) ? kInf : s;
}

EqualityReport check_shared_psi(const GeneratorPair& pair1, const GeneratorPair& pair2,
                                const Measure& m, const CheckOptions& opts) {
  if (!is_symmetric(m)) {
    throw Error(Errc::hypothesis_violated, "measure must be symmetric");
  }
  const double mu2 = moments(m).central[2];
  if (!(mu2 > 1e-15)) throw Error(Errc::hypothesis_violated, "second central moment vanishes");
  const Interval dom = common_domain(pair1, pair2);
  const auto xs = chebyshev_grid(dom, opts.function_points);

  double psi_res = 0.0;
  double phi_res = 0.0;
  double d2_res = 0.0;
  for (double x : xs) {
    const PhiPsi a = phi_psi_jets(pair1, x, 0);
    const PhiPsi b = phi_psi_jets(pair2, x, 0);
    psi_res = std::max(psi_res, rel_diff(a.psi.value(), b.psi.value()));
    phi_res = std::max(phi_res, rel_diff(a.phi.value(), b.phi.value()));
    d2_res = std::max(d2_res, rel_diff(diagonal_derivatives(pair1, m, x).d2,
                                       diagonal_derivatives(pair2, m, x).d2));
  }
  if (psi_res > opts.function_tol) {
    throw Error(Errc::hypothesis_violated,
                "Psi of the two pairs differs (max relative gap " + std::to_string(psi_res) + ")");
  }

  EqualityReport rep;
  rep.label = pair1.label() + " vs " + pair2.label();
  const MeanSpec s1 = spec::Generalized{pair1, m};
  const MeanSpec s2 = spec::Generalized{pair2, m};
  const auto full = square_grid(dom, opts.mean_points);
  const auto near = near_diagonal_grid(dom, opts.mean_points);
  rep.conditions.push_back(
      grid_record("psi-i", means_equal_grid(s1, s2, full, opts.mean_tol), opts.mean_tol));
  rep.conditions.push_back(
      grid_record("psi-ii", means_equal_grid(s1, s2, near, opts.mean_tol), opts.mean_tol));
  rep.conditions.push_back({"psi-iii", true, d2_res <= opts.function_tol, d2_res, {},
                            "second diagonal derivatives, relative"});
  rep.conditions.push_back(
      {"psi-iv", true, phi_res <= opts.function_tol, phi_res, {}, "Phi, relative"});
  rep.conditions.push_back({"psi-v", true, are_equivalent(pair1, pair2, xs, opts.function_tol),
                            phi_res, {}, "Phi and Psi agree on the function grid"});
  bool first = rep.conditions.front().holds;
  bool agree = true;
  for (const auto& r : rep.conditions) agree = agree && r.holds == first;
  rep.conditions.push_back(
      {"psi-chain", true, agree, 0.0, {}, "all five conditions agree"});
  rep.verdict = !agree ? Verdict::inconclusive : (first ? Verdict::equal : Verdict::not_equal);
  return rep;
}

EqualityWitness extract_witness(const GeneratorPair& pair_f, const GeneratorPair& pair_h, double p,
                                double q, std::span<const double> grid, double tol) {
  EqualityWitness w;
  const double p2 = modified_power(p, 2);
  const double q2 = modified_power(q, 2);
  std::vector<double> cs;
  for (double x : grid) {
    const PhiPsi f = phi_psi_jets(pair_f, x, 1);
    const PhiPsi h = phi_psi_jets(pair_h, x, 0);
    const double V = std::pow(std::abs(wronskian(pair_f, 1, 0, x)), -p);
    const double Phi = p * f.phi.value();
    const double dPhi = p * f.phi.derivative(1);
    w.phi_residual = std::max(w.phi_residual, rel_diff(q * h.phi.value(), Phi));
    const double core = dPhi - Phi * Phi;
    const double b_plus_c = 6.0 * p2 * V * (f.psi.value() + (p - 2.0) * core / (6.0 * p * p));
    const double b_minus_c = 6.0 * q2 * V * (h.psi.value() + (q - 2.0) * core / (6.0 * q * q));
    w.xs.push_back(x);
    w.V.push_back(V);
    w.Phi.push_back(Phi);
    w.B.push_back(0.5 * (b_plus_c + b_minus_c));
    cs.push_back(0.5 * (b_plus_c - b_minus_c));
  }
  if (w.phi_residual > tol) {
    throw Error(Errc::phi_mismatch, "q Phi_{h,k} differs from p Phi_{f,g} (relative gap " +
                                        std::to_string(w.phi_residual) + ")");
  }
  w.c = mean_of(cs);
  w.c_spread = relative_spread(cs);
  return w;
}

namespace {

// Least squares for a tall n x 3 system by modified Gram-Schmidt on unit
// columns; returns coefficients or throws SingularFit.
std::array<double, 3> lsq3(const std::vector<std::array<double, 3>>& A,
                           const std::vector<double>& b) {
  const std::size_t n = A.size();
  std::array<std::vector<double>, 3> Q;
  std::array<double, 3> norm{};
  for (int j = 0; j < 3; ++j) {
    Q[j].resize(n);
    for (std::size_t i = 0; i < n; ++i) Q[j][i] = A[i][j];
    double s = 0.0;
    for (double v : Q[j]) s += v * v;
    norm[j] = std::sqrt(s);
    if (!(norm[j] > 0.0)) throw Error(Errc::singular_fit, "zero column in quadratic fit");
    for (double& v : Q[j]) v /= norm[j];
  }
  double R[3][3] = {};
  for (int j = 0; j < 3; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int k = 0; k < j; ++k) {
        double d = 0.0;
        for (std::size_t i = 0; i < n; ++i) d += Q[k][i] * Q[j][i];
        R[k][j] += d;
        for (std::size_t i = 0; i < n; ++i) Q[j][i] -= d * Q[k][i];
      }
    }
    double s = 0.0;
    for (double v : Q[j]) s += v * v;
    R[j][j] = std::sqrt(s);
    if (R[j][j] < 1e-10) throw Error(Errc::singular_fit, "quadratic fit is rank deficient");
    for (double& v : Q[j]) v /= R[j][j];
  }
  std::array<double, 3> qb{};
  for (int j = 0; j < 3; ++j) {
    for (std::size_t i = 0; i < n; ++i) qb[j] += Q[j][i] * b[i];
  }
  std::array<double, 3> c{};
  for (int j = 2; j >= 0; --j) {
    double s = qb[j];
    for (int k = j + 1; k < 3; ++k) s -= R[j][k] * c[k];
    c[j] = s / R[j][j];
  }
  for (int j = 0; j < 3; ++j) c[j] /= norm[j];
  return c;
}

double fit_residual(const std::vector<std::array<double, 3>>& A, const std::vector<double>& b,
                    const std::array<double, 3>& c) {
  double r = 0.0;
  for (std::size_t i = 0; i < A.size(); ++i) {
    const double v = A[i][0] * c[0] + A[i][1] * c[1] + A[i][2] * c[2];
    r = std::max(r, rel_diff(v, b[i]));
  }
  return r;
}

}  // namespace

QuadraticRelation fit_quadratic_relations(const GeneratorPair& pair_f, const GeneratorPair& pair_h,
                                          std::span<const double> grid) {
  std::vector<std::array<double, 3>> Af;
  std::vector<std::array<double, 3>> Ah;
  std::vector<double> bf;
  std::vector<double> bh;
  std::vector<double> etas;
  for (double x : grid) {
    const double f = pair_f.f()(x);
    const double g = pair_f.g()(x);
    const double h = pair_h.f()(x);
    const double k = pair_h.g()(x);
    const double whk = wronskian(pair_h, 1, 0, x);
    const double wfg = wronskian(pair_f, 1, 0, x);
    Af.push_back({f * f, f * g, g * g});
    bf.push_back(1.0);
    Ah.push_back({h * h, h * k, k * k});
    const double cw = std::cbrt(whk);
    bh.push_back(cw * cw);
    etas.push_back(whk / (wfg * wfg * wfg));
  }
  QuadraticRelation rel;
  const auto cf = lsq3(Af, bf);
  const auto ch = lsq3(Ah, bh);
  rel.alpha = cf[0];
  rel.beta = cf[1];
  rel.gamma = cf[2];
  rel.delta = ch[0];
  rel.epsilon = ch[1];
  rel.zeta = ch[2];
  rel.rho = std::cbrt(mean_of(etas));
  rel.residual_fg = fit_residual(Af, bf, cf);
  rel.residual_hk = fit_residual(Ah, bh, ch);
  return rel;
}

EqualityReport check_cross_measure(const GeneratorPair& pair_f, const GeneratorPair& pair_h,
                                   const CheckOptions& opts,
                                   const std::optional<QuasiarithmeticHint>& hint) {
  const Interval dom = common_domain(pair_f, pair_h);
  const auto xs = chebyshev_grid(dom, opts.function_points);
  const Measure& mu = endpoint_measure();
  const Measure& nu = lebesgue();
  EqualityReport rep;
  rep.label = pair_f.label() + " vs " + pair_h.label();

  // (iii) diagonal derivatives of both means agree up to order 8
  {
    double res = 0.0;
    for (double x : xs) {
      const auto df = diagonal_derivatives(pair_f, mu, x);
      const auto dh = diagonal_derivatives(pair_h, nu, x);
      for (int i = 0; i < 4; ++i) res = std::max(res, rel_diff(df[i], dh[i]));
    }
    rep.conditions.push_back({"cross-iii", true, res <= opts.function_tol, res, {},
                              "diagonal derivatives of orders 2, 4, 6, 8, relative"});
  }

  // (iv) Phi_hk = 3 Phi_fg, Psi_fg = a W_fg^2, normalized Psi_hk = b W_hk^{2/3}
  std::vector<double> as;
  std::vector<double> bs;
  std::vector<double> etas;
  {
    double phi_res = 0.0;
    for (double x : xs) {
      const PhiPsi f = phi_psi_jets(pair_f, x, 0);
      const PhiPsi h = phi_psi_jets(pair_h, x, 1);
      const double wfg = wronskian(pair_f, 1, 0, x);
      const double whk = wronskian(pair_h, 1, 0, x);
      const double Phi_h = h.phi.value();
      phi_res = std::max(phi_res, rel_diff(Phi_h, 3.0 * f.phi.value()));
      as.push_back(f.psi.value() / (wfg * wfg));
      const double cw = std::cbrt(whk);
      bs.push_back((h.psi.value() - h.phi.derivative(1) / 3.0 + 2.0 * Phi_h * Phi_h / 9.0) /
                   (cw * cw));
      etas.push_back(whk / (wfg * wfg * wfg));
    }
    const double sa = relative_spread(as);
    const double sb = relative_spread(bs);
    ConditionRecord r{"cross-iv", true,
                      phi_res <= opts.function_tol && sa <= kConstancyTol && sb <= kConstancyTol,
                      std::max({phi_res, sa, sb}),
                      {{"a", mean_of(as)}, {"b", mean_of(bs)}, {"a_spread", sa}, {"b_spread", sb},
                       {"phi_residual", phi_res}},
                      "Phi_hk = 3 Phi_fg with a and b constant"};
    rep.conditions.push_back(r);
  }

  // (v) quadratic relations and W_hk = eta W_fg^3
  const QuadraticRelation rel = fit_quadratic_relations(pair_f, pair_h, xs);
  const double eta = mean_of(etas);
  {
    const double se = relative_spread(etas);
    const double res = std::max({rel.residual_fg, rel.residual_hk, se});
    rep.conditions.push_back(
        {"cross-v", true,
         rel.residual_fg <= opts.function_tol && rel.residual_hk <= opts.function_tol &&
             se <= kConstancyTol,
         res,
         {{"alpha", rel.alpha},
          {"beta", rel.beta},
          {"gamma", rel.gamma},
          {"delta", rel.delta},
          {"epsilon", rel.epsilon},
          {"zeta", rel.zeta},
          {"eta", eta},
          {"eta_spread", se}},
         "least-squares quadratic relations, relative residual"});
  }

  // (vi) derivative form of the integral representation
  {
    double res = 0.0;
    const double rho = std::cbrt(eta);
    for (double x : xs) {
      const double f = pair_f.f()(x);
      const double g = pair_f.g()(x);
      const double h = pair_h.f()(x);
      const double k = pair_h.g()(x);
      const double wfg = wronskian(pair_f, 1, 0, x);
      const double whk = wronskian(pair_h, 1, 0, x);
      const double r = f / g;
      const double s = h / k;
      const double dr = wfg / (g * g);
      const double ds = whk / (k * k);
      const double P = (rel.alpha * r + rel.beta) * r + rel.gamma;
      const double Q = (rel.delta * s + rel.epsilon) * s + rel.zeta;
      res = std::max(res, rel_diff(dr / P, wfg));
      res = std::max(res, rel_diff(ds / Q, rho * wfg));
      res = std::max(res, rel_diff(g, 1.0 / std::sqrt(P)));
      res = std::max(res, rel_diff(k, std::abs(ds) / std::sqrt(Q * Q * Q)));
    }
    rep.conditions.push_back({"cross-vi", true, res <= opts.function_tol, res, {{"rho", rho}},
                              "derivative form of the quadratic-relation integrals"});
  }

  const MeanSpec bf = spec::Generalized{pair_f, mu};
  const MeanSpec mh = spec::Generalized{pair_h, nu};
  const auto full = square_grid(dom, opts.mean_points);
  const auto near = near_diagonal_grid(dom, opts.mean_points);
  rep.conditions.insert(
      rep.conditions.begin(),
      {grid_record("cross-i", means_equal_grid(bf, mh, full, opts.mean_tol), opts.mean_tol),
       grid_record("cross-ii", means_equal_grid(bf, mh, near, opts.mean_tol), opts.mean_tol)});

  // (vii) both means are quasiarithmetic with phi = int W_fg
  {
    const double mid = dom.midpoint();
    auto w = [&](double t) { return wronskian(pair_f, 1, 0, t); };
    auto phi = [&](double z) { return integrate(w, mid, z, 1e-14); };
    double res = 0.0;
    for (const auto& [x, y] : full) {
      const double a = eval_quasiarithmetic(phi, x, y);
      res = std::max(res, std::abs(a - evaluate(bf, x, y)));
      res = std::max(res, std::abs(a - evaluate(mh, x, y)));
    }
    if (std::isnan(res)) res = kInf;
    rep.conditions.push_back({"cross-vii", true, res <= opts.mean_tol, res, {},
                              "both means against the quasiarithmetic mean of int W_fg"});
    rep.conditions.push_back({"cross-viii", true, res <= opts.mean_tol, res, {},
                              "the common mean is quasiarithmetic (from cross-vii)"});
  }

  {
    ConditionRecord r{"cross-ix", false, false, 0.0, {}, "no generator hint supplied"};
    if (hint) {
      const auto sf = GeneratorPair::unvalidated(sine_type(hint->a).substitute(hint->phi),
                                                 cosine_type(hint->a).substitute(hint->phi), dom);
      const Expr dphi = hint->phi.derivative();
      const auto sh = GeneratorPair::unvalidated(dphi * sine_type(hint->b).substitute(hint->phi),
                                                 dphi * cosine_type(hint->b).substitute(hint->phi),
                                                 dom);
      r.checked = true;
      r.holds = are_equivalent(pair_f, sf, xs, opts.function_tol) &&
                are_equivalent(pair_h, sh, xs, opts.function_tol);
      r.constants = {{"a", hint->a}, {"b", hint->b}};
      r.note = "pairs equivalent to the sine/cosine type generators of phi";
    }
    rep.conditions.push_back(r);
  }

  {
    ConditionRecord r{"cross-witness", true, false, 0.0, {}, ""};
    try {
      const EqualityWitness wit = extract_witness(pair_f, pair_h, 2.0, 2.0 / 3.0, xs,
                                                  opts.function_tol);
      r.holds = wit.c_spread <= kConstancyTol;
      r.residual = std::max(wit.phi_residual, wit.c_spread);
      r.constants = {{"c", wit.c}, {"c_spread", wit.c_spread}};
      r.note = "B and c from the two Psi equations";
    } catch (const Error& e) {
      if (e.code() != Errc::phi_mismatch) throw;
      r.residual = kInf;
      r.note = e.what();
    }
    rep.conditions.push_back(r);
  }

  rep.verdict = verdict_from(rep.conditions, "cross-i");
  return rep;
}

std::vector<DemoInstance> default_demo_suite() {
  const Expr x = Expr::var();
  return {
      {"arithmetic (phi=x, a=1, b=0)", x, 1.0, 0.0, {0.0, 2.0}},
      {"arithmetic (phi=x, a=-1, b=-1)", x, -1.0, -1.0, {0.1, std::numbers::pi / 2 - 0.1}},
      {"geometric (phi=log, a=0, b=0)", log(x), 0.0, 0.0, {0.5, 4.0}},
  };
}

std::vector<EqualityReport> intersection_demo(std::span<const DemoInstance> suite,
                                              const CheckOptions& opts) {
  std::vector<EqualityReport> out;
  for (const auto& inst : suite) {
    const auto pf = builtin_pair(family::Trig{inst.a, inst.phi, false, inst.domain});
    const auto ph = builtin_pair(family::Trig{inst.b, inst.phi, true, inst.domain});
    EqualityReport rep =
        check_cross_measure(pf, ph, opts, QuasiarithmeticHint{inst.phi, inst.a, inst.b});
    rep.label = inst.name;
    out.push_back(std::move(rep));
  }
  return out;
}

std::optional<double> gini_power_index(double a, double b, double tol) {
  if (std::abs(a + b) <= tol) return 0.0;
  if (std::abs(b) <= tol) return a;
  if (std::abs(a) <= tol) return b;
  return std::nullopt;
}

std::optional<double> stolarsky_power_index(double a, double b, double tol) {
  if (std::abs(a + b) <= tol) return 0.0;
  if (std::abs(a - 2.0 * b) <= tol) return b;
  if (std::abs(b - 2.0 * a) <= tol) return a;
  return std::nullopt;
}

std::vector<Point2> parameter_grid(double lo, double hi, int n) {
  std::vector<Point2> out;
  auto value = [&](int i) { return n == 1 ? lo : lo + (hi - lo) * i / (n - 1); };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out.emplace_back(value(i), value(j));
  }
  return out;
}

std::vector<Point2> default_scan_panel() {
  return {{0.5, 2.0}, {1.0, 3.0}, {2.0, 5.0}, {0.8, 1.3}, {3.0, 1.2}, {4.0, 9.0}};
}

ScanResult gini_stolarsky_scan(std::span<const Point2> gini_params,
                               std::span<const Point2> stolarsky_params,
                               std::span<const Point2> panel, double tol) {
  if (panel.empty()) throw Error(Errc::config_error, "scan panel is empty");
  for (const auto& [x, y] : panel) {
    if (!(x > 0.0 && y > 0.0) || x == y) {
      throw Error(Errc::config_error, "panel points need positive, distinct coordinates");
    }
  }
  const std::size_t np = panel.size();
  std::vector<double> sv(stolarsky_params.size() * np);
  for (std::size_t j = 0; j < stolarsky_params.size(); ++j) {
    for (std::size_t k = 0; k < np; ++k) {
      sv[j * np + k] = eval_stolarsky(stolarsky_params[j].first, stolarsky_params[j].second,
                                      panel[k].first, panel[k].second);
    }
  }
  ScanResult out;
  std::vector<double> gv(np);
  for (const auto& [a, b] : gini_params) {
    for (std::size_t k = 0; k < np; ++k) gv[k] = eval_gini(a, b, panel[k].first, panel[k].second);
    for (std::size_t j = 0; j < stolarsky_params.size(); ++j) {
      ++out.tested;
      double r = 0.0;
      for (std::size_t k = 0; k < np && r <= tol; ++k) r = std::max(r, std::abs(gv[k] - sv[j * np + k]));
      if (!(r <= tol)) continue;
      const auto [c, d] = stolarsky_params[j];
      ScanHit hit{a, b, c, d, r, false, 0.0};
      const auto gi = gini_power_index(a, b);
      const auto si = stolarsky_power_index(c, d);
      if (gi && si && std::abs(*gi - *si) <= 1e-9) {
        hit.consistent = true;
        hit.index = *gi;
      } else {
        ++out.anomalous;
      }
      out.hits.push_back(hit);
    }
  }
  return out;
}

}  // namespace gqm
