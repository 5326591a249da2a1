#include "nbspec/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace nbspec {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::kPass:
      return "pass";
    case Status::kFail:
      return "fail";
    case Status::kNotApplicable:
      return "not-applicable";
  }
  return "unknown";
}

VerificationReport VerificationReport::not_applicable(std::string check, std::string reason) {
  VerificationReport r;
  r.check = std::move(check);
  r.status = Status::kNotApplicable;
  r.metadata["reason"] = std::move(reason);
  return r;
}

VerificationReport VerificationReport::from_residual(std::string check, double residual, double tol) {
  VerificationReport r;
  r.check = std::move(check);
  r.residual = residual;
  r.status = residual <= tol ? Status::kPass : Status::kFail;
  r.metadata["tolerance"] = tol;
  return r;
}

double stable_number(double x) {
  if (!std::isfinite(x) || x == 0.0) return x == 0.0 ? 0.0 : x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  double y = std::strtod(buf, nullptr);
  return y == 0.0 ? 0.0 : y;
}

namespace {

// Applies stable_number to every floating-point leaf.
void stabilize(nlohmann::json& j) {
  if (j.is_number_float()) {
    j = stable_number(j.get<double>());
  } else if (j.is_structured()) {
    for (auto& child : j) stabilize(child);
  }
}

}  // namespace

nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json j;
  j["check"] = r.check;
  j["status"] = std::string(to_string(r.status));
  j["residual"] = std::isfinite(r.residual) ? nlohmann::json(stable_number(r.residual)) : nlohmann::json("inf");
  j["hypotheses"] = r.hypotheses;
  nlohmann::json meta = r.metadata;
  stabilize(meta);
  j["metadata"] = meta;
  return j;
}

nlohmann::json to_json(const std::vector<VerificationReport>& rs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rs) arr.push_back(to_json(r));
  return arr;
}

bool any_failed(const std::vector<VerificationReport>& rs) {
  return std::any_of(rs.begin(), rs.end(), [](const VerificationReport& r) { return r.failed(); });
}

}  // namespace nbspec
