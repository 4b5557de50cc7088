#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cwc::cli {

inline constexpr std::uint64_t kDefaultSeed = 20240601;

enum ExitCode : int { kOk = 0, kInvalidArguments = 1, kInfeasible = 2 };

/// Runs one cwcode command. `args` excludes the program name. Tables go to
/// the --out file when given (summary line on `out`), otherwise to `out`
/// with the summary line on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cwc::cli
