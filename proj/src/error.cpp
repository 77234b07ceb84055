#include "gqm/error.hpp"

namespace gqm {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::division_by_zero_jet: return "DivisionByZeroJet";
    case Errc::domain_error: return "DomainError";
    case Errc::order_exceeds_class: return "OrderExceedsClass";
    case Errc::out_of_domain: return "OutOfDomain";
    case Errc::invalid_measure: return "InvalidMeasure";
    case Errc::params_outside_pi: return "ParamsOutsidePi";
    case Errc::invalid_tau: return "InvalidTau";
    case Errc::degenerate_pair: return "DegeneratePair";
    case Errc::singular_matrix: return "SingularMatrix";
    case Errc::non_positive_argument: return "NonPositiveArgument";
    case Errc::bracket_failure: return "BracketFailure";
    case Errc::asymmetric_measure: return "AsymmetricMeasure";
    case Errc::stencil_out_of_domain: return "StencilOutOfDomain";
    case Errc::unsupported_index: return "UnsupportedIndex";
    case Errc::hypothesis_violated: return "HypothesisViolated";
    case Errc::phi_mismatch: return "PhiMismatch";
    case Errc::singular_fit: return "SingularFit";
    case Errc::parse_error: return "ParseError";
    case Errc::config_error: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace gqm
