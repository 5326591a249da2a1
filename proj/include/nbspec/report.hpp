#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace nbspec {

enum class Status { kPass, kFail, kNotApplicable };

std::string_view to_string(Status s);

/// Outcome of one named check.
struct VerificationReport {
  std::string check;
  Status status = Status::kNotApplicable;
  double residual = 0.0;
  std::map<std::string, bool> hypotheses;
  nlohmann::json metadata = nlohmann::json::object();

  bool passed() const { return status == Status::kPass; }
  bool failed() const { return status == Status::kFail; }

  static VerificationReport not_applicable(std::string check, std::string reason);
  /// kPass when residual <= tol, else kFail; records tol in metadata.
  static VerificationReport from_residual(std::string check, double residual, double tol);
};

/// Rounds to 12 significant digits and clears negative zero, so serialized
/// output is stable.
double stable_number(double x);

nlohmann::json to_json(const VerificationReport& r);
nlohmann::json to_json(const std::vector<VerificationReport>& rs);

bool any_failed(const std::vector<VerificationReport>& rs);

}  // namespace nbspec
