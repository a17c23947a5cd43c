#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ilt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

/// Entry point of the `ilt` tool. Subcommands: psf, generate, simulate,
/// evaluate, optimize, derive, sweep. Returns 0 on success, 1 on usage or
/// configuration errors, 2 on runtime failures.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with the arguments after the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ilt::cli
