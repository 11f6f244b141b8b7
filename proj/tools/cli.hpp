#pragma once

#include <iosfwd>

namespace acqlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // the command ran and the check failed
inline constexpr int kExitUsage = 2;    // bad flags, unreadable or malformed input

// Runs one acqlab command line; argv[0] is the program name.
// Subcommands: gen, simulate, strategy, bruteforce, structure, sweep, pmprob.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace acqlab::cli
