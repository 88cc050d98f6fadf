#pragma once
// Acceptance checks: one self-contained pass/fail verdict per numbered
// criterion, with the measured quantities and their tolerances in the detail
// string.  Checks 1-6 are deterministic identities; 7-13 are seeded Monte
// Carlo runs with fixed statistical bands; 14 re-runs the statistical checks
// at two different worker counts and byte-compares hexfloat-serialized
// summaries.
//
// The same entry points back the `verify` CLI subcommand.

#include <string>
#include <vector>

namespace cuelab {

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

/// All registered check ids, ascending (currently 1..14).
std::vector<int> all_check_ids();

/// Human-readable name of one check id (throws std::out_of_range if unknown).
std::string check_name(int id);

/// Run one check.  Throws std::out_of_range for an unknown id; any other
/// exception escaping a check is an implementation bug.
CheckResult run_check(int id);

}  // namespace cuelab
