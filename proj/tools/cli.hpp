#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gqm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCertificationFailed = 1;
inline constexpr int kExitConfigError = 2;

/// Runs the gqmeans command line with args (without the program name).
/// Output that is not redirected by --out goes to `out`; diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gqm::cli
