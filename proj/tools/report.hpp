#pragma once

// JSON reports for each jderiv command. Reports are deterministic for a fixed
// instance, seed and option set; wall-clock timing is added only on request.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "instance.hpp"

namespace jderiv::cli {

using Json = nlohmann::ordered_json;

inline const std::vector<std::string> kCommands{"solve-der", "solve-jder",  "compare",
                                                "fi-build",  "verdict",     "cross-check",
                                                "identities", "dprime-check", "search"};

bool is_command(const std::string& name);

struct RunOptions {
  std::string input;  // echoed as given
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> budget;
  std::optional<SuiteMode> mode;
};

/// Runs `command` on the instance. Throws BudgetExceeded when the target ring
/// exceeds the rank budget and InstanceError when the instance lacks what the
/// command needs.
Json run_command(const std::string& command, const Instance& inst, const RunOptions& options);

Json basis_json(const SubgroupBasis& b);
Json map_json(const AdditiveMap& d);

}  // namespace jderiv::cli
