#pragma once

#include <iosfwd>

namespace confnet::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kRuntimeFailure = 1;
inline constexpr int kUsage = 2;
inline constexpr int kCapability = 3;
inline constexpr int kValidationFailed = 4;

/// Entry point behind the `confnet` executable. Data goes to `out` unless
/// --output is given; diagnostics (and the manifest when writing to `out`
/// without --manifest) go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace confnet::cli
