#pragma once

// Verification suites over the configured (p, E, characters) grid.  Each
// case compares two exactly computed sides and lands in a machine-readable
// report; the runner dispatches independent configuration units to a small
// worker pool and assembles results in a fixed order.

#include "plf/config.hpp"
#include "plf/laurent.hpp"

#include <optional>
#include <string>
#include <vector>

namespace plf {

struct CaseResult {
  std::string suite;
  std::string id;      // deterministic case identifier
  std::string anchor;  // the identity under test
  bool pass = false;
  std::string lhs, rhs;  // serialized sides (JSON snippets or short text)
  double max_dev = 0.0;
  std::string note;
};

struct RunReport {
  RunConfig config;
  std::vector<CaseResult> cases;
  int failures() const {
    int f = 0;
    for (auto& c : cases)
      if (!c.pass) ++f;
    return f;
  }
};

RunReport run_suites(const RunConfig& config);

// report (de)serialization; deterministic, byte-identical for a fixed
// (config, seed)
std::string report_to_json(const RunReport& report);
void write_report(const RunReport& report, const std::string& path);

// the explain output for one case id from a serialized report
std::string explain_case(const std::string& report_json, const std::string& case_id);

// conventions block echoed by explain
std::string conventions_text();

}  // namespace plf
