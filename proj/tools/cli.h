#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace primecycles::cli {

// Exit codes: 0 success, 1 domain/computation error or failed verification,
// 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Environment variable consulted for the default prime sieve limit.
inline constexpr const char* kSieveLimitEnv = "PRIMECYCLES_SIEVE_LIMIT";

// Runs one command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace primecycles::cli
