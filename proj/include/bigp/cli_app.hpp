#pragma once

#include <iosfwd>

namespace bigp {

/// `bigp run <scenario> [--until T] [--seed N] [--dump-tables R@t]...
///           [--trace PATH] [--metrics-format json|csv]`
/// Exit codes: 0 success, 1 parse/validation error, 2 runtime invariant
/// assertion.
int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err);

}  // namespace bigp
