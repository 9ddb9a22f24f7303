#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lsys::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

/// Entry point of the `lsys` tool. `args[0]` is the program name.
/// Subcommands: generate, render, canonicalize, validate, evaluate, diff, derive.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace lsys::cli
