#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "axby/verify.hpp"

namespace axby::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (without the program name). Data goes to out,
/// progress and diagnostics to err. hooks reach the verify subcommand.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const SuiteHooks& hooks = {});

}  // namespace axby::cli
