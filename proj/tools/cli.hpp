#pragma once

#include <iosfwd>

namespace bffs::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitAbort = 3;
inline constexpr int kExitIntegrity = 4;

/// Full command-line entry point. Tables and advisory text go to `out`,
/// progress and diagnostics to `err`; reports and plot data go to files only.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace bffs::cli
