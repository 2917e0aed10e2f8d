// cli.hpp: aqrm command-line front end

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aqrm::cli {

enum ExitCode : int { kSuccess = 0, kUsageError = 1, kNumericalFailure = 2 };

// Environment variable naming the default directory for sweep output.
inline constexpr const char* kOutputDirEnv = "AQRM_OUTPUT_DIR";

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Each oracle prints one PASS/FAIL line; returns true when all pass.
bool run_selfcheck(std::ostream& out);

} // namespace aqrm::cli
