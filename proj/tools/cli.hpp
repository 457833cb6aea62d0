#pragma once

// Command-line front end. `run` is the whole program minus process setup so
// tests can drive it with in-memory streams.

#include <ostream>
#include <string>

#include <json.hpp>

#include "skewtent/regions.hpp"

namespace skewtent::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitBoundary = 2,  ///< boundary point, degenerate map or unmet region prerequisite
  kExitVerifyFailed = 3,
};

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Fixed six decimals with trailing zeros removed: 0.714286, -0.5, 1.
std::string format_number(double x);

/// {"tag": ..., plus "p"/"terminal", "m"/"sub" or "which"/"index"}
nlohmann::ordered_json region_json(const RegionTag& tag);

}  // namespace skewtent::cli
