#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "nbspec/graph.hpp"

namespace nbspec {

/// Generator mini-language:
///   cycle:n  path:n  complete:n  star:n  empty:n  bipartite:a,b  petersen
///   pinwheel:p,k  tree:seed,n  join:<spec>@v+<spec>@w
/// Throws ParseError (column in the message) on malformed input and
/// PreconditionError on invalid parameters.
Graph parse_generator(std::string_view spec);

/// Tolerance from NBSPEC_TOL, or `fallback` when unset. Throws ParseError
/// when set but not a positive number.
double tolerance_from_env(double fallback);

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kVerificationFailed = 2;
}  // namespace exit_code

/// Runs the command line (without the program name). JSON goes to `out`,
/// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nbspec
