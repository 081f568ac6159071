#pragma once

// Command-line frontend: simulate, verify, classify, scan, reduce.
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numeric failure.

#include <iosfwd>
#include <string>

#include "aristo/types.hpp"

namespace aristo {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

/// `RE` or `RE(+|-)IMi`, e.g. "1.25-0.5i". Throws InvalidArgument.
Complex parse_complex(const std::string& text);
/// Three comma-separated complex literals.
State3 parse_state(const std::string& text);
/// "a,b,c" with omega left at `omega`.
Couplings parse_couplings(const std::string& text, double omega = 1.0);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace aristo
