#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace qpc {

// Entry point behind the qpc binary; returns the process exit code
// (0 = every requested check passed, 1 = a check failed, 2 = runtime error;
// malformed invocations exit with CLI11's usage-error codes).
int run_cli(int argc, const char* const* argv);

// Common report envelope.  The timestamp is the only non-reproducible field
// and sits at the top level so callers can erase it before comparing runs.
nlohmann::json make_report(const std::string& operation, nlohmann::json parameters,
                           std::uint64_t seed, const std::string& mode,
                           nlohmann::json metrics, bool pass,
                           std::vector<std::string> details);

}  // namespace qpc
