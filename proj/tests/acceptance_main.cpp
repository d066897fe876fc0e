#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "diskmeans/battery.hpp"

// Runs the release battery once and prints one verdict line per shipping
// criterion, plus one line per supplementary battery item.  Exit status is 0
// only when every line says PASS.

namespace {

struct Criterion {
  int number;
  const char* label;
  std::vector<std::string> items;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> table = {
      {1, "weighted means match closed forms for positive weights",
       {"closed-form-above"}},
      {2, "weighted means match closed forms for negative weights",
       {"closed-form-below"}},
      {3, "curvature profiles locate the documented roots",
       {"quartic-endpoints", "cubic-endpoints", "quartic-profile",
        "cubic-profile"}},
      {4, "random polynomial sweep stays convex in the covered window",
       {"convexity-sweep"}},
      {5, "convexity fails for every sampled weight above the window",
       {"sharpness-above"}},
      {6, "convexity fails in the limit below the window",
       {"sharpness-below"}},
      {7, "delta vanishes identically at lambda zero", {"delta-zero"}},
      {8, "quadrature and series means agree", {"oracle-equivalence"}},
      {9, "proof-step battery holds on random parameters",
       {"proof-battery-core", "proof-battery-ext"}},
      {10, "aggregation inequality holds for random polynomials",
       {"aggregation-inequality"}},
      {11, "scans repeat byte for byte", {"scan-determinism"}},
  };
  return table;
}

}  // namespace

int main() {
  diskmeans::BatteryOptions opts;
  if (const char* cli = std::getenv("DISKMEANS_CLI")) {
    opts.cli_path = cli;
  }
  const auto results = diskmeans::run_battery(opts);

  std::map<std::string, const diskmeans::CheckResult*> by_id;
  for (const auto& r : results) by_id[r.id] = &r;

  bool all_ok = true;
  std::set<std::string> mapped;
  for (const auto& c : criteria()) {
    bool ok = true;
    std::string why;
    for (const auto& id : c.items) {
      mapped.insert(id);
      const auto it = by_id.find(id);
      if (it == by_id.end()) {
        ok = false;
        why += (why.empty() ? "" : "; ") + id + ": missing";
        continue;
      }
      if (!it->second->passed) {
        ok = false;
        why += (why.empty() ? "" : "; ") + id + ": " + it->second->detail;
      }
    }
    all_ok = all_ok && ok;
    if (ok) {
      std::printf("criterion %d: PASS - %s\n", c.number, c.label);
    } else {
      std::printf("criterion %d: FAIL - %s | %s\n", c.number, c.label,
                  why.c_str());
    }
  }

  for (const auto& r : results) {
    if (mapped.count(r.id)) continue;
    all_ok = all_ok && r.passed;
    if (r.passed) {
      std::printf("supplementary %s: PASS\n", r.id.c_str());
    } else {
      std::printf("supplementary %s: FAIL - %s\n", r.id.c_str(),
                  r.detail.c_str());
    }
  }

  std::printf("acceptance: %s\n", all_ok ? "PASS" : "FAIL");
  return all_ok ? 0 : 1;
}
