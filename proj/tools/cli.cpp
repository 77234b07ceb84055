#include "cli.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"

#include "gqm/diagonal.hpp"
#include "gqm/equality.hpp"
#include "gqm/error.hpp"
#include "gqm/json_io.hpp"

namespace gqm::cli {

namespace {

struct Globals {
  std::string out_path;
  bool json = false;
  double tol = 0.0;  // 0 means "use the command default"
  int grid = 0;
};

double parse_double(const std::string& s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw Error(Errc::config_error, "not a number: \"" + s + "\"");
  }
  return v;
}

std::vector<double> parse_list(const std::string& s, char sep = ',') {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(parse_double(item));
  return out;
}

Json load_json(const std::string& source) {
  std::string text = source;
  if (source.empty() || source.front() != '{') {
    std::ifstream in(source);
    if (!in) throw Error(Errc::config_error, "cannot read \"" + source + "\"");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse_error, source + ": " + e.what());
  }
}

bool is_json_source(const std::string& s) {
  return (!s.empty() && s.front() == '{') ||
         (s.size() > 5 && s.compare(s.size() - 5, 5, ".json") == 0);
}

// eval <type> [key=value | file.json ...] x y
MeanSpec spec_from_tokens(const std::vector<std::string>& tokens) {
  if (is_json_source(tokens.front())) {
    if (tokens.size() != 3) throw Error(Errc::config_error, "usage: eval <spec.json> x y");
    return mean_spec_from_json(load_json(tokens.front()));
  }
  Json j;
  j["type"] = tokens.front();
  const char* positional[] = {"pair", "measure"};
  std::size_t next = 0;
  for (std::size_t i = 1; i + 2 < tokens.size(); ++i) {
    const std::string& t = tokens[i];
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      if (next >= 2) throw Error(Errc::config_error, "unexpected argument \"" + t + "\"");
      j[positional[next++]] = load_json(t);
      continue;
    }
    const std::string key = t.substr(0, eq);
    const std::string value = t.substr(eq + 1);
    if (key == "domain") {
      j[key] = parse_list(value);
    } else if (is_json_source(value)) {
      j[key] = load_json(value);
    } else {
      try {
        j[key] = parse_double(value);
      } catch (const Error&) {
        j[key] = value;
      }
    }
  }
  return mean_spec_from_json(j);
}

int cmd_eval(const std::vector<std::string>& tokens, const Globals& g, std::ostream& out) {
  if (tokens.size() < 3) throw Error(Errc::config_error, "usage: eval <type> [params] x y");
  const MeanSpec spec = spec_from_tokens(tokens);
  const double x = parse_double(tokens[tokens.size() - 2]);
  const double y = parse_double(tokens.back());
  const double v = evaluate(spec, x, y);
  if (g.json) {
    out << Json{{"x", x}, {"y", y}, {"value", v}}.dump(2) << "\n";
  } else {
    out << format_number(v) << "\n";
  }
  return kExitOk;
}

struct MomentsArgs {
  std::string measure;
  std::string pi;
  double mn_tau = -1.0;
  std::string kind = "two-atoms";
};

int cmd_moments(const MomentsArgs& a, const Globals& g, std::ostream& out) {
  MomentVector mv;
  if (!a.pi.empty()) {
    const auto v = parse_list(a.pi);
    if (v.size() != 2) throw Error(Errc::config_error, "--pi expects ell,p");
    mv = pi_moments({v[0], v[1]});
  } else if (a.mn_tau >= 0.0 || !a.measure.empty()) {
    Measure m = a.measure.empty()
                    ? mn_measure(a.mn_tau, a.kind == "truncated-uniform" ? MnKind::truncated_uniform
                                                                         : MnKind::two_atoms)
                    : measure_from_json(load_json(a.measure));
    if (a.measure.empty() && a.kind != "two-atoms" && a.kind != "truncated-uniform") {
      throw Error(Errc::config_error, "--kind is two-atoms or truncated-uniform");
    }
    mv = moments(m);
  } else {
    throw Error(Errc::config_error, "moments needs a measure file, --pi or --mn");
  }
  if (g.json) {
    out << to_json(mv).dump(2) << "\n";
    return kExitOk;
  }
  out << "k,raw,central\n";
  for (int k = 0; k <= mv.max_order; ++k) {
    out << k << "," << format_number(mv.raw[k]) << "," << format_number(mv.central[k]) << "\n";
  }
  return kExitOk;
}

struct DiagonalArgs {
  std::string pair;
  std::string measure;
  std::vector<double> xs;
};

int cmd_diagonal(const DiagonalArgs& a, const Globals& g, std::ostream& out) {
  const GeneratorPair pair = pair_from_json(load_json(a.pair));
  const Measure m = measure_from_json(load_json(a.measure));
  const double tol = g.tol > 0.0 ? g.tol : 1e-8;
  std::vector<double> xs = a.xs;
  if (xs.empty()) xs = chebyshev_grid(pair.domain(), g.grid > 0 ? g.grid : 9);
  bool ok = true;
  Json rows = Json::array();
  if (!g.json) out << "x,d2,d4,d6,d8,oracle_residual_d2,oracle_residual_d4,oracle_residual_d6,oracle_residual_d8\n";
  for (double x : xs) {
    const auto d = diagonal_derivatives(pair, m, x);
    const auto o = implicit_series_oracle(pair, m, x);
    std::array<double, 4> res{};
    for (int i = 0; i < 4; ++i) {
      res[i] = std::abs(d[i] - o[i]);
      ok = ok && res[i] <= tol * std::abs(o[i]) + 1e-12;
    }
    if (g.json) {
      Json row = to_json(d);
      row["x"] = x;
      row["oracle_residuals"] = res;
      rows.push_back(row);
    } else {
      out << format_number(x);
      for (int i = 0; i < 4; ++i) out << "," << format_number(d[i]);
      for (double r : res) out << "," << format_number(r);
      out << "\n";
    }
  }
  if (g.json) out << rows.dump(2) << "\n";
  return ok ? kExitOk : kExitCertificationFailed;
}

struct EqualityArgs {
  std::string mode;
  std::vector<std::string> inputs;
  std::string hint_phi;
  double hint_a = 0.0;
  double hint_b = 0.0;
  std::string domain;
};

int cmd_equality(const EqualityArgs& a, const Globals& g, std::ostream& out) {
  CheckOptions opts;
  if (g.tol > 0.0) opts.mean_tol = g.tol;
  if (g.grid > 0) opts.mean_points = g.grid;
  auto need = [&](std::size_t n, const char* usage) {
    if (a.inputs.size() != n) throw Error(Errc::config_error, usage);
  };
  if (a.mode == "grid") {
    need(2, "usage: equality grid <spec1.json> <spec2.json> --domain lo,hi");
    const auto d = parse_list(a.domain);
    if (d.size() != 2) throw Error(Errc::config_error, "--domain expects lo,hi");
    const auto grid = square_grid({d[0], d[1]}, opts.mean_points);
    const auto cmp = means_equal_grid(mean_spec_from_json(load_json(a.inputs[0])),
                                      mean_spec_from_json(load_json(a.inputs[1])), grid,
                                      opts.mean_tol);
    out << Json{{"verdict", cmp.equal ? "equal" : "not-equal"},
                {"max_residual", cmp.max_residual},
                {"worst", {cmp.worst.first, cmp.worst.second}}}
               .dump(2)
        << "\n";
    return cmp.equal ? kExitOk : kExitCertificationFailed;
  }
  EqualityReport rep;
  if (a.mode == "cross") {
    need(2, "usage: equality cross <pair_f.json> <pair_h.json>");
    std::optional<QuasiarithmeticHint> hint;
    if (!a.hint_phi.empty()) hint = QuasiarithmeticHint{Expr::parse(a.hint_phi), a.hint_a, a.hint_b};
    rep = check_cross_measure(pair_from_json(load_json(a.inputs[0])),
                              pair_from_json(load_json(a.inputs[1])), opts, hint);
  } else if (a.mode == "shared-psi") {
    need(3, "usage: equality shared-psi <pair1.json> <pair2.json> <measure.json>");
    rep = check_shared_psi(pair_from_json(load_json(a.inputs[0])),
                           pair_from_json(load_json(a.inputs[1])),
                           measure_from_json(load_json(a.inputs[2])), opts);
  } else {
    throw Error(Errc::config_error, "equality mode is cross, shared-psi or grid");
  }
  out << to_json(rep).dump(2) << "\n";
  return rep.verdict == Verdict::equal ? kExitOk : kExitCertificationFailed;
}

struct ScanArgs {
  double lo = -3.0;
  double hi = 3.0;
  std::string gini;
  std::string stolarsky;
  std::string panel;
};

int cmd_scan(const ScanArgs& a, const Globals& g, std::ostream& out) {
  const int n = g.grid > 0 ? g.grid : 21;
  const double tol = g.tol > 0.0 ? g.tol : 1e-6;
  auto single = [](const std::string& s) {
    const auto v = parse_list(s);
    if (v.size() != 2) throw Error(Errc::config_error, "parameter cell expects a,b");
    return std::vector<Point2>{{v[0], v[1]}};
  };
  const auto gp = a.gini.empty() ? parameter_grid(a.lo, a.hi, n) : single(a.gini);
  const auto sp = a.stolarsky.empty() ? parameter_grid(a.lo, a.hi, n) : single(a.stolarsky);
  std::vector<Point2> panel = default_scan_panel();
  if (a.panel == "-") {
    panel.clear();
  } else if (!a.panel.empty()) {
    panel.clear();
    std::stringstream ss(a.panel);
    std::string item;
    while (std::getline(ss, item, ';')) {
      const auto v = parse_list(item, ':');
      if (v.size() != 2) throw Error(Errc::config_error, "panel points are x:y separated by ';'");
      panel.emplace_back(v[0], v[1]);
    }
  }
  const ScanResult res = gini_stolarsky_scan(gp, sp, panel, tol);
  if (g.json) {
    Json hits = Json::array();
    for (const auto& h : res.hits) {
      hits.push_back({{"a", h.a}, {"b", h.b}, {"c", h.c}, {"d", h.d},
                      {"max_residual", h.max_residual},
                      {"classification", h.consistent ? "power" : "anomalous"}});
    }
    out << Json{{"tested", res.tested}, {"anomalous", res.anomalous}, {"hits", hits}}.dump(2)
        << "\n";
  } else {
    out << "a,b,c,d,max_residual,classification\n";
    for (const auto& h : res.hits) {
      out << format_number(h.a) << "," << format_number(h.b) << "," << format_number(h.c) << ","
          << format_number(h.d) << "," << format_number(h.max_residual) << ","
          << (h.consistent ? "power" : "anomalous") << "\n";
    }
  }
  return res.anomalous == 0 ? kExitOk : kExitCertificationFailed;
}

int cmd_demo(bool negative_control, const Globals& g, std::ostream& out) {
  CheckOptions opts;
  if (g.tol > 0.0) opts.mean_tol = g.tol;
  if (g.grid > 0) opts.mean_points = g.grid;
  const auto suite = default_demo_suite();
  auto reports = intersection_demo(suite, opts);
  if (negative_control) {
    const auto pf = builtin_pair(family::Power{2.0, 1.0, {0.5, 4.0}});
    const auto ph = builtin_pair(family::Power{1.0, 0.0, {0.5, 4.0}});
    EqualityReport rep = check_cross_measure(pf, ph, opts);
    rep.label = "negative control (x^2, x) vs (x, 1)";
    reports.push_back(std::move(rep));
  }
  bool all = true;
  for (const auto& r : reports) all = all && r.verdict == Verdict::equal;
  if (g.json) {
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    out << arr.dump(2) << "\n";
  } else {
    for (const auto& r : reports) out << r.label << ": " << to_string(r.verdict) << "\n";
  }
  return all ? kExitOk : kExitCertificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-variable means: evaluation, moments, diagonal derivatives, equality checks", "gqmeans"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--out", g.out_path, "Write the result to this file instead of stdout");
  app.add_flag("--json", g.json, "Machine-readable JSON output");
  app.add_option("--tol", g.tol, "Tolerance override")->check(CLI::PositiveNumber);
  app.add_option("--grid", g.grid, "Grid size override")->check(CLI::PositiveNumber);

  std::vector<std::string> eval_tokens;
  auto* eval = app.add_subcommand("eval", "Evaluate a mean: eval <type> [key=value|file.json ...] x y");
  eval->add_option("tokens", eval_tokens)->required()->allow_extra_args();

  MomentsArgs ma;
  auto* mom = app.add_subcommand("moments", "Raw and central moments of a measure");
  mom->add_option("measure", ma.measure, "Measure JSON file");
  mom->add_option("--pi", ma.pi, "Moments of pi(ell, p), given as ell,p");
  mom->add_option("--mn", ma.mn_tau, "Symmetric measure with parameter tau");
  mom->add_option("--kind", ma.kind, "two-atoms or truncated-uniform");

  DiagonalArgs da;
  auto* diag = app.add_subcommand("diagonal", "Even diagonal derivatives with oracle residuals");
  diag->add_option("pair", da.pair)->required();
  diag->add_option("measure", da.measure)->required();
  diag->add_option("--x", da.xs, "Evaluation points (default: Chebyshev grid)");

  EqualityArgs ea;
  auto* eq = app.add_subcommand("equality", "Certify equality of two means");
  eq->add_option("mode", ea.mode, "cross, shared-psi or grid")->required();
  eq->add_option("inputs", ea.inputs)->required();
  eq->add_option("--hint-phi", ea.hint_phi, "Generator phi of the expected quasiarithmetic mean");
  eq->add_option("--hint-a", ea.hint_a);
  eq->add_option("--hint-b", ea.hint_b);
  eq->add_option("--domain", ea.domain, "lo,hi for grid mode");

  ScanArgs sa;
  auto* scan = app.add_subcommand("scan", "Gini/Stolarsky intersection scan (CSV of hits)");
  scan->add_option("--lo", sa.lo);
  scan->add_option("--hi", sa.hi);
  scan->add_option("--gini", sa.gini, "Single Gini cell a,b");
  scan->add_option("--stolarsky", sa.stolarsky, "Single Stolarsky cell c,d");
  scan->add_option("--panel", sa.panel, "Points x:y;x:y;... ('-' for none)");

  bool negative = false;
  auto* demo = app.add_subcommand("demo", "Bajraktarevic/Cauchy intersection demo");
  demo->add_flag("--negative-control", negative, "Append a pair that must not certify");

  for (auto* sub : {eval, mom, diag, eq, scan, demo}) sub->fallthrough();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  std::ostringstream buf;
  int code = kExitOk;
  try {
    if (*eval) code = cmd_eval(eval_tokens, g, buf);
    else if (*mom) code = cmd_moments(ma, g, buf);
    else if (*diag) code = cmd_diagonal(da, g, buf);
    else if (*eq) code = cmd_equality(ea, g, buf);
    else if (*scan) code = cmd_scan(sa, g, buf);
    else code = cmd_demo(negative, g, buf);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  if (g.out_path.empty()) {
    out << buf.str();
  } else {
    std::ofstream f(g.out_path);
    if (!f) {
      err << "error: cannot write " << g.out_path << "\n";
      return kExitConfigError;
    }
    f << buf.str();
  }
  return code;
}

}  // namespace gqm::cli
