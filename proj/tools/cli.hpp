#pragma once

#include <ostream>

namespace redblack::cli {

inline constexpr const char* kVersion = "1.0.0";

/// Exit codes: 0 all checks pass / verification holds, 1 a violation or
/// refutation was found, 2 input or usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace redblack::cli
