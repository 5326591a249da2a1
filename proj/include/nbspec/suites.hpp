#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "nbspec/graph.hpp"
#include "nbspec/linalg.hpp"
#include "nbspec/report.hpp"

namespace nbspec {

enum class Suite { kAll, kIhara, kDecomposition, kBounds, kDetect, kOracle };

std::string_view to_string(Suite s);
std::optional<Suite> parse_suite(std::string_view name);

/// Every check a suite covers, in a fixed order. `tol` is the spectral
/// matching tolerance.
std::vector<VerificationReport> run_suite(const Graph& g, Suite suite, double tol = tolerance::kMatch);

}  // namespace nbspec
