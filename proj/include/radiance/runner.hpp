#pragma once

#include <string>
#include <vector>

#include "radiance/scenario.hpp"

namespace radiance {

inline constexpr const char* kVersion = "radiance 0.1.0";

struct RunResult {
    std::vector<std::string> files_written;
    bool checks_passed = true;  // crosscheck mode only
};

/// Executes a parsed scenario and writes its artifacts (CSV + JSON sidecar)
/// under out_dir.  Writes are atomic: a .tmp file is renamed into place, so
/// a crashed run leaves no half-written outputs.
RunResult run_scenario(const Scenario& scenario, const std::string& out_dir, bool quiet);

/// Exit-code mapping shared by the CLI: 0 ok, 2 schema, 3 physics,
/// 4 numerics (1 reserved for failed crosschecks).
int exit_code_for(const std::exception& error);

}  // namespace radiance
