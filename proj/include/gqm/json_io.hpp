#pragma once

#include <string>

#include "json.hpp"

#include "gqm/diagonal.hpp"
#include "gqm/equality.hpp"
#include "gqm/generator.hpp"
#include "gqm/mean.hpp"
#include "gqm/measure.hpp"

namespace gqm {

using Json = nlohmann::ordered_json;

/// Shortest text with 17 significant digits, '.' as decimal separator.
std::string format_number(double v);

/// {"atoms":[{"t":..,"w":..}], "density":[{"lo":..,"hi":..,"poly":[..]}]}
Measure measure_from_json(const Json& j);
Json to_json(const Measure& m);
Json to_json(const MomentVector& mv);

/// {"family":"power","a":2,"b":1,"domain":[0.5,10]}; other families:
/// "log-power" (a), "trig" (a, phi, scale), "quasiarithmetic" (phi),
/// "cauchy-derived" (f, g), "custom" (f, g). Functions use the prefix
/// expression syntax of Expr::parse.
GeneratorPair pair_from_json(const Json& j);

/// {"type":"power","a":..} | "gini"/"stolarsky" (a, b) |
/// "quasiarithmetic" (phi, domain) | "bajraktarevic" (pair) |
/// "cauchy" (f, g, domain) | "generalized" (pair, measure)
MeanSpec mean_spec_from_json(const Json& j);

Json to_json(const DiagonalDerivatives& d);
Json to_json(const EqualityReport& r);

}  // namespace gqm
