#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "dp5/error.hpp"

namespace dp5::cli {

inline constexpr std::string_view kVersion = "0.1.0";

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kInternal = 1;
inline constexpr int kInvalidInput = 2;
inline constexpr int kBudget = 3;
inline constexpr int kDisagreement = 4;
}  // namespace exit_code

/// Process exit status for a library error.
int exit_status(ErrorCode code);

/// Enumeration budget from DP5_BUDGET, or the library default when unset.
/// Throws ParseError on a malformed value.
std::uint64_t budget_from_env();

/// Runs the dp5 command line; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dp5::cli
