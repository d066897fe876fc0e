#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace diskmeans {

struct CheckResult {
  std::string id;
  bool passed = false;
  std::string detail;  // measured error / witness summary
};

struct BatteryOptions {
  std::uint64_t seed = 12345;  // drives every randomized item
  std::string only;            // non-empty: run just this item
  std::string cli_path;        // when set, scan-determinism also runs this
                               // binary twice and compares the files
};

// Ids in execution order.
std::vector<std::string> battery_item_ids();

// Runs the reproduction battery: closed-form means, profile verdicts and
// roots, the convexity property sweep, sharpness on both sides of the
// [-3, 0] window, the seeded proof-internal batteries, the aggregation
// inequality, fixed reference values, scan verdict classes, and scan
// determinism.  Throws std::domain_error if opts.only names no item.
std::vector<CheckResult> run_battery(const BatteryOptions& opts = {});

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace diskmeans
