#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace convexforest {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitVerificationFailed = 2;
inline constexpr int kExitUsage = 64;

// Runs one command; args excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace convexforest
