#include "gqm/json_io.hpp"

#include <charconv>
#include <cmath>

#include "gqm/error.hpp"

namespace gqm {

namespace {

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(Errc::parse_error, std::string("missing field \"") + key + "\"");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse_error, std::string("field \"") + key + "\": " + e.what());
  }
}

template <class T>
T field_or(const Json& j, const char* key, T fallback) {
  return j.contains(key) ? field<T>(j, key) : fallback;
}

Interval domain_of(const Json& j, Interval fallback) {
  if (!j.contains("domain")) return fallback;
  const auto d = field<std::vector<double>>(j, "domain");
  if (d.size() != 2) throw Error(Errc::parse_error, "domain must be [lo, hi]");
  return {d[0], d[1]};
}

Expr expr_field(const Json& j, const char* key) { return Expr::parse(field<std::string>(j, key)); }

// JSON has no infinities; they are written as strings.
Json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

Measure measure_from_json(const Json& j) {
  std::vector<Atom> atoms;
  std::vector<DensityPiece> density;
  if (j.contains("atoms")) {
    for (const auto& a : j.at("atoms")) atoms.push_back({field<double>(a, "t"), field<double>(a, "w")});
  }
  if (j.contains("density")) {
    for (const auto& d : j.at("density")) {
      density.push_back({field<double>(d, "lo"), field<double>(d, "hi"),
                         field<std::vector<double>>(d, "poly")});
    }
  }
  return Measure(std::move(atoms), std::move(density));
}

Json to_json(const Measure& m) {
  Json j;
  j["atoms"] = Json::array();
  for (const auto& a : m.atoms()) j["atoms"].push_back({{"t", a.t}, {"w", a.w}});
  j["density"] = Json::array();
  for (const auto& d : m.density()) {
    j["density"].push_back({{"lo", d.lo}, {"hi", d.hi}, {"poly", d.poly}});
  }
  return j;
}

Json to_json(const MomentVector& mv) {
  Json raw = Json::array();
  Json central = Json::array();
  for (int k = 0; k <= mv.max_order; ++k) {
    raw.push_back(number(mv.raw[k]));
    central.push_back(number(mv.central[k]));
  }
  return {{"raw", raw}, {"central", central}};
}

GeneratorPair pair_from_json(const Json& j) {
  const auto fam = field<std::string>(j, "family");
  if (fam == "power") {
    return builtin_pair(family::Power{field<double>(j, "a"), field<double>(j, "b"),
                                      domain_of(j, {0.1, 10.0})});
  }
  if (fam == "log-power") {
    return builtin_pair(family::LogPower{field<double>(j, "a"), domain_of(j, {0.1, 10.0})});
  }
  if (fam == "trig") {
    const Expr phi = j.contains("phi") ? expr_field(j, "phi") : Expr::var();
    return builtin_pair(family::Trig{field<double>(j, "a"), phi, field_or<bool>(j, "scale", false),
                                     domain_of(j, {-1.0, 1.0})});
  }
  if (fam == "quasiarithmetic") {
    return builtin_pair(family::Quasiarithmetic{expr_field(j, "phi"), domain_of(j, {0.1, 10.0})});
  }
  if (fam == "cauchy-derived") {
    return builtin_pair(
        family::CauchyDerived{expr_field(j, "f"), expr_field(j, "g"), domain_of(j, {0.1, 10.0})});
  }
  if (fam == "custom") {
    return builtin_pair(
        family::Custom{expr_field(j, "f"), expr_field(j, "g"), domain_of(j, {0.1, 10.0})});
  }
  throw Error(Errc::parse_error, "unknown pair family \"" + fam + "\"");
}

MeanSpec mean_spec_from_json(const Json& j) {
  const auto type = field<std::string>(j, "type");
  if (type == "power") return spec::Power{field<double>(j, "a")};
  if (type == "gini") return spec::Gini{field<double>(j, "a"), field<double>(j, "b")};
  if (type == "stolarsky") return spec::Stolarsky{field<double>(j, "a"), field<double>(j, "b")};
  if (type == "quasiarithmetic") {
    return spec::Quasiarithmetic{expr_field(j, "phi"), domain_of(j, {0.1, 10.0})};
  }
  if (type == "bajraktarevic") return spec::Bajraktarevic{pair_from_json(field<Json>(j, "pair"))};
  if (type == "cauchy") {
    CauchySources src{expr_field(j, "f"), expr_field(j, "g"), domain_of(j, {0.1, 10.0})};
    cauchy_derivative_pair(src);  // validates g' > 0 and the Wronskian of (f', g')
    return spec::Cauchy{src};
  }
  if (type == "generalized") {
    return spec::Generalized{pair_from_json(field<Json>(j, "pair")),
                             measure_from_json(field<Json>(j, "measure"))};
  }
  throw Error(Errc::parse_error, "unknown mean type \"" + type + "\"");
}

Json to_json(const DiagonalDerivatives& d) {
  return {{"d2", number(d.d2)}, {"d4", number(d.d4)}, {"d6", number(d.d6)}, {"d8", number(d.d8)}};
}

Json to_json(const EqualityReport& r) {
  Json j;
  j["label"] = r.label;
  j["verdict"] = to_string(r.verdict);
  j["conditions"] = Json::array();
  for (const auto& c : r.conditions) {
    Json cj;
    cj["id"] = c.id;
    cj["status"] = !c.checked ? "skipped" : (c.holds ? "holds" : "fails");
    cj["residual"] = number(c.residual);
    Json consts = Json::object();
    for (const auto& [k, v] : c.constants) consts[k] = number(v);
    cj["constants"] = consts;
    cj["note"] = c.note;
    j["conditions"].push_back(cj);
  }
  return j;
}

}  // namespace gqm
