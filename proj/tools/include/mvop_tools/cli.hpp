#pragma once

#include <iosfwd>

namespace mvop::tools {

/// Exit codes: 0 all checks pass, 1 a tolerance failed, 2 structural error
/// (singular matrices, divergent moments, bad input) with a diagnostic JSON
/// document on `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mvop::tools
