#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gqm {

enum class Errc {
  division_by_zero_jet,
  domain_error,
  order_exceeds_class,
  out_of_domain,
  invalid_measure,
  params_outside_pi,
  invalid_tau,
  degenerate_pair,
  singular_matrix,
  non_positive_argument,
  bracket_failure,
  asymmetric_measure,
  stencil_out_of_domain,
  unsupported_index,
  hypothesis_violated,
  phi_mismatch,
  singular_fit,
  parse_error,
  config_error,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace gqm
