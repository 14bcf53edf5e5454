#pragma once

#include <iosfwd>

namespace hdw::cli {

/// Exit codes of the `test` command; every failure maps to kError.
inline constexpr int kAccept = 0;
inline constexpr int kReject = 1;
inline constexpr int kError = 2;

/// Entry point of the hdw command line; main() forwards here so tests can
/// drive commands with captured streams.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hdw::cli
