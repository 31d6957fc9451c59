#pragma once

#include <iosfwd>

namespace coinweigh::cli {

/// Exit codes shared by every subcommand.
enum Exit : int { kSuccess = 0, kVerificationFailed = 1, kUsage = 2 };

/// Parses argv, dispatches the subcommand and returns its exit code.
/// All output goes to `out` / `err`; nothing is written to files on failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace coinweigh::cli
