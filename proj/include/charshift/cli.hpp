#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace charshift {

/// Exit codes: 0 success, 1 a verify check failed, 2 bad configuration,
/// 3 simulator error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSimulator = 3;

/// Runs one command line (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace charshift
