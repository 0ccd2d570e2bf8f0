#include "ch/report.hpp"

#include <cmath>

namespace ch {

Check make_check(std::string name, Real measured, Real expected, Real tolerance,
                 bool relative) {
  Check check;
  check.name = std::move(name);
  check.measured = measured;
  check.expected = expected;
  check.tolerance = tolerance;
  check.relative = relative;
  Real diff = std::abs(measured - expected);
  if (relative) diff /= std::max(std::abs(expected), 1e-300);
  check.pass = std::isfinite(measured) && diff <= tolerance;
  return check;
}

bool VerificationReport::all_pass() const {
  for (const Check& c : checks)
    if (!c.pass) return false;
  return true;
}

Json to_json(const VerificationReport& report) {
  Json j;
  j["command"] = report.command;
  j["params"] = report.params;
  Json checks = Json::array();
  for (const Check& c : report.checks) {
    Json jc;
    jc["name"] = c.name;
    jc["measured"] = c.measured;
    jc["expected"] = c.expected;
    jc["tolerance"] = c.tolerance;
    jc["relative"] = c.relative;
    jc["pass"] = c.pass;
    checks.push_back(std::move(jc));
  }
  j["checks"] = std::move(checks);
  j["seed"] = report.seed;
  j["runtime_ms"] = report.runtime_ms;
  j["result"] = report.result;
  return j;
}

VerificationReport report_from_json(const Json& j) {
  VerificationReport report;
  report.command = j.at("command").get<std::string>();
  report.params = j.at("params");
  for (const auto& jc : j.at("checks")) {
    Check c;
    c.name = jc.at("name").get<std::string>();
    c.measured = jc.at("measured").get<Real>();
    c.expected = jc.at("expected").get<Real>();
    c.tolerance = jc.at("tolerance").get<Real>();
    c.relative = jc.at("relative").get<bool>();
    c.pass = jc.at("pass").get<bool>();
    report.checks.push_back(std::move(c));
  }
  report.seed = j.at("seed").get<std::uint64_t>();
  report.runtime_ms = j.at("runtime_ms").get<std::int64_t>();
  report.result = j.at("result");
  return report;
}

}  // namespace ch
