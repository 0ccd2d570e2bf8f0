// Machine-readable verification reports and the command front end shared by
// the CLI binary and the tests.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ch/types.hpp"

namespace ch {

using Json = nlohmann::ordered_json;

struct Check {
  std::string name;
  Real measured = 0.0;
  Real expected = 0.0;
  Real tolerance = 0.0;
  bool relative = false;
  bool pass = false;
};

/// Evaluates the pass flag: |measured - expected| <= tolerance, with the
/// difference divided by max(|expected|, eps) in relative mode.
Check make_check(std::string name, Real measured, Real expected, Real tolerance,
                 bool relative);

struct VerificationReport {
  std::string command;
  Json params;
  std::vector<Check> checks;
  std::uint64_t seed = 0;
  std::int64_t runtime_ms = 0;
  Json result;

  bool all_pass() const;
};

Json to_json(const VerificationReport& report);
VerificationReport report_from_json(const Json& j);

/// Runs one CLI invocation (arguments without the program name), writing the
/// JSON report to `out` (or the --out file) and diagnostics to `err`.
/// Returns 0 when every check passes, 1 on check failure, 2 on usage errors.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace ch
