#pragma once

#include <iosfwd>

namespace lzep::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitProperty = 3;

/// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "LZEP_OUT_DIR";

/// Parses argv and runs one subcommand. Never throws; returns an exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lzep::cli
