#include "diskmeans/battery.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "diskmeans/convexity.hpp"
#include "diskmeans/csv.hpp"
#include "diskmeans/diagnostics.hpp"
#include "diskmeans/kernels.hpp"
#include "diskmeans/means.hpp"
#include "diskmeans/numerics.hpp"
#include "diskmeans/scan.hpp"

namespace diskmeans {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Rng {
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  double unit() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
  double range(double lo, double hi) { return lo + (hi - lo) * unit(); }
  int index(int n) { return static_cast<int>(eng() % static_cast<std::uint64_t>(n)); }
  std::mt19937_64 eng;
};

Coefficients random_poly(Rng& rng, int max_degree) {
  const int deg = rng.index(max_degree + 1);
  Coefficients c(static_cast<std::size_t>(deg) + 1);
  double total = 0.0;
  for (auto& a : c) {
    a = {rng.range(-1.0, 1.0), rng.range(-1.0, 1.0)};
    total += std::norm(a);
  }
  if (total < 1e-12) c[0] = 1.0;
  return c;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double quartic_poly(double x) {
  return 9.0 + x * (-24.0 + x * (18.0 + x * (-6.0 + x)));
}

double cubic_poly(double x) {
  return 18.0 + x * (-36.0 + x * (21.0 - 4.0 * x));
}

CheckResult closed_form_above(Rng&, const BatteryOptions&) {
  CheckResult res{"closed-form-above", false, {}};
  const Coefficients c{{1.0, 0.0}, {1.0, 0.0}};
  double worst = 0.0;
  for (int i = 1; i <= 19; ++i) {
    const double r = 0.05 * i;
    const double r2 = r * r;
    const double want = 2.0 * (3.0 - r2 * r2) / (3.0 * (2.0 - r2));
    worst = std::max(worst, std::abs(series_mean_p2(c, 1.0, r) - want));
  }
  res.passed = worst <= 1e-10;
  res.detail = "max |mean - closed form| = " + num(worst) + " over 19 radii";
  return res;
}

CheckResult closed_form_below(Rng&, const BatteryOptions&) {
  CheckResult res{"closed-form-below", false, {}};
  const Coefficients c{{0.0, 0.0}, {std::sqrt(2.0), 0.0}};
  double worst = 0.0;
  for (int i = 1; i <= 19; ++i) {
    const double r = 0.05 * i;
    const double r2 = r * r;
    const double r4 = r2 * r2;
    const double want = (3.0 * r2 - r4) / (3.0 - 3.0 * r2 + r4);
    worst = std::max(worst, std::abs(series_mean_p2(c, -4.0, r) - want));
  }
  res.passed = worst <= 1e-10;
  res.detail = "max |mean - closed form| = " + num(worst) + " over 19 radii";
  return res;
}

CheckResult quartic_endpoints(Rng&, const BatteryOptions&) {
  CheckResult res{"quartic-endpoints", false, {}};
  const double g0 = quartic_poly(0.0);
  const double g1 = quartic_poly(1.0);
  res.passed = (g0 == 9.0) && (g1 == -2.0);
  res.detail = "g(0) = " + num(g0) + ", g(1) = " + num(g1);
  return res;
}

CheckResult cubic_endpoints(Rng&, const BatteryOptions&) {
  CheckResult res{"cubic-endpoints", false, {}};
  const double g0 = cubic_poly(0.0);
  const double g1 = cubic_poly(1.0);
  res.passed = (g0 == 18.0) && (g1 == -1.0);
  res.detail = "g(0) = " + num(g0) + ", g(1) = " + num(g1);
  return res;
}

CheckResult profile_against_root(CheckResult res, const Coefficients& c,
                                 double alpha, double (*poly)(double)) {
  auto mean_x = [&c, alpha](double x) { return series_mean_p2_x(c, alpha, x); };
  const ConvexityProfile prof = loglog_profile(mean_x, default_scan_grid());
  const double root =
      find_sign_change([poly](double x) { return poly(x); }, 0.0, 1.0);
  res.passed = prof.classification == Classification::neither &&
               prof.sign_changes.size() == 1 &&
               std::abs(prof.sign_changes[0] - root) <= 0.01;
  res.detail = std::string("verdict ") + to_string(prof.classification) + ", " +
               std::to_string(prof.sign_changes.size()) + " sign change(s)";
  if (!prof.sign_changes.empty()) {
    res.detail += ", first at x = " + num(prof.sign_changes[0]) +
                  " vs polynomial root " + num(root);
  }
  return res;
}

CheckResult quartic_profile(Rng&, const BatteryOptions&) {
  return profile_against_root({"quartic-profile", false, {}},
                              {{1.0, 0.0}, {1.0, 0.0}}, 1.0, &quartic_poly);
}

CheckResult cubic_profile(Rng&, const BatteryOptions&) {
  return profile_against_root({"cubic-profile", false, {}},
                              {{0.0, 0.0}, {std::sqrt(2.0), 0.0}}, -4.0,
                              &cubic_poly);
}

CheckResult convexity_sweep(Rng& rng, const BatteryOptions&) {
  CheckResult res{"convexity-sweep", false, {}};
  const std::vector<double> alphas{-3.0, -2.5, -2.0, -1.5, -1.0, -0.5, 0.0};
  const int n = 200;
  const std::vector<double> ts = linspace(std::log(0.01), std::log(0.99), n);
  const double h = ts[1] - ts[0];
  double worst = kInf;
  for (int trial = 0; trial < 20; ++trial) {
    const Coefficients c = random_poly(rng, 8);
    std::vector<double> logmean(n);
    for (double alpha : alphas) {
      for (int j = 0; j < n; ++j) {
        logmean[j] = std::log(series_mean_p2(c, alpha, std::exp(ts[j])));
      }
      for (int j = 1; j + 1 < n; ++j) {
        const double d2f =
            (logmean[j + 1] - 2.0 * logmean[j] + logmean[j - 1]) / (h * h);
        worst = std::min(worst, d2f);
      }
    }
  }
  res.passed = worst >= -1e-6;
  res.detail = "min log-log second difference " + num(worst) +
               " across 20 polynomials x 7 weights";
  return res;
}

CheckResult sharpness_above(Rng&, const BatteryOptions&) {
  CheckResult res{"sharpness-above", true, {}};
  for (double alpha : {0.5, 1.0, 2.0}) {
    bool found = false;
    for (int m = 2; m <= 6 && !found; ++m) {
      const double x = 1.0 - std::pow(10.0, -m);
      const double v = delta(1.0, alpha, x);
      if (v < 0.0) {
        found = true;
        if (!res.detail.empty()) res.detail += "; ";
        res.detail += "alpha " + num(alpha) + ": delta = " + num(v) +
                      " at x = " + num(x);
      }
    }
    if (!found) {
      res.passed = false;
      if (!res.detail.empty()) res.detail += "; ";
      res.detail += "alpha " + num(alpha) + ": no negative delta found";
    }
  }
  return res;
}

CheckResult sharpness_below(Rng&, const BatteryOptions&) {
  CheckResult res{"sharpness-below", false, {}};
  double worst = 0.0;
  for (double alpha : {-3.5, -4.0, -5.0}) {
    const double want = delta_limit_at_one(1.0, alpha);
    const double got = delta_limit_extrapolated(1.0, alpha);
    worst = std::max(worst, std::abs(got - want));
  }
  res.passed = worst <= 1e-3;
  res.detail = "max |extrapolated limit - closed form| = " + num(worst) +
               " over alpha in {-3.5, -4, -5}";
  return res;
}

CheckResult delta_zero(Rng& rng, const BatteryOptions&) {
  CheckResult res{"delta-zero", false, {}};
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double alpha = rng.range(-5.0, 2.0);
    const double x = rng.range(1e-3, 1.0 - 1e-3);
    worst = std::max(worst, std::abs(delta(0.0, alpha, x)));
  }
  res.passed = worst <= 1e-12;
  res.detail = "max |delta(0, alpha, x)| = " + num(worst) + " over 100 draws";
  return res;
}

CheckResult oracle_equivalence(Rng& rng, const BatteryOptions&) {
  CheckResult res{"oracle-equivalence", false, {}};
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Coefficients c = random_poly(rng, 8);
    const double alpha = rng.range(-4.0, 2.0);
    const double r = rng.range(0.1, 0.95);
    const double ref = series_mean_p2(c, alpha, r);
    auto f = [&c](std::complex<double> z) { return eval_poly(c, z); };
    const double got = quad_mean(f, 2.0, alpha, r, 1e-8);
    worst = std::max(worst, std::abs(got - ref) / std::abs(ref));
  }
  res.passed = worst <= 1e-6;
  res.detail = "max relative gap " + num(worst) + " over 50 cases";
  return res;
}

CheckResult proof_battery_core(Rng& rng, const BatteryOptions&) {
  CheckResult res{"proof-battery-core", false, {}};
  const std::vector<double> grid = linspace(0.01, 0.99, 100);
  double min_d1 = kInf;
  double min_third = kInf;
  double min_dd = kInf;
  double min_step = kInf;
  for (int trial = 0; trial < 100; ++trial) {
    const double lam = 10.0 * (1.0 - rng.unit());
    const double alpha = rng.range(-2.0, 0.0);
    // cross_check off: the finite-difference companion divides the delta
    // evaluation error by a 1e-5 step, and near x = 0.99 that noise
    // swamps small derivative values.  The formula itself is checked
    // against finite differences elsewhere, at friendlier x.
    DeltaDlOptions dopts;
    dopts.cross_check = false;
    for (double x : grid) {
      min_d1 = std::min(min_d1, d1(lam, alpha, x));
      min_third = std::min(min_third, delta1_family(lam, alpha, x).third);
      min_dd = std::min(min_dd, delta_dlambda(lam, alpha, x, dopts));
    }
    for (std::size_t j = 0; j < grid.size(); j += 11) {
      const double x = grid[j];
      double prev = 0.0;
      for (int s = 1; s <= 20; ++s) {
        const double v = delta(0.5 * s, alpha, x);
        min_step = std::min(min_step, v - prev);
        prev = v;
      }
    }
  }
  res.passed = min_d1 >= -1e-10 && min_third > 0.0 && min_dd > 1e-12 &&
               min_step >= -1e-9;
  res.detail = "min d1 = " + num(min_d1) + ", min delta1''' = " +
               num(min_third) + ", min d(delta)/d(lambda) = " + num(min_dd) +
               ", min ladder increment = " + num(min_step);
  return res;
}

CheckResult proof_battery_ext(Rng& rng, const BatteryOptions&) {
  CheckResult res{"proof-battery-ext", false, {}};
  const std::vector<double> grid = linspace(0.01, 0.99, 100);
  double min_d3 = kInf;
  double max_d2 = -kInf;
  for (int trial = 0; trial < 50; ++trial) {
    const double alpha = -3.0 + rng.unit();
    const double lam = -(alpha + 2.0) + 0.02 + rng.range(0.0, 3.0);
    for (double x : grid) {
      min_d3 = std::min(min_d3, delta3(alpha, x));
      max_d2 = std::max(max_d2, d2(lam, alpha, x));
    }
  }
  res.passed = min_d3 > 0.0 && max_d2 < 0.0;
  res.detail = "min delta3 = " + num(min_d3) + ", max d2 = " + num(max_d2) +
               " over 50 pairs";
  return res;
}

CheckResult aggregation_inequality(Rng& rng, const BatteryOptions&) {
  CheckResult res{"aggregation-inequality", false, {}};
  const std::vector<double> grid = default_scan_grid();
  double worst = kInf;
  for (int trial = 0; trial < 20; ++trial) {
    const Coefficients c = random_poly(rng, 8);
    const double alpha = rng.range(-3.0, 0.0);
    for (double x : grid) {
      const MeanDerivs md = series_mean_p2_derivs(c, alpha, x);
      const double lhs = d_functional(md.value, md.first, md.second, x);
      const std::vector<double> terms = series_terms_p2_x(c, alpha, x);
      KahanSum acc;
      for (std::size_t k = 1; k < terms.size(); ++k) {
        if (terms[k] != 0.0) {
          acc.add(terms[k] * delta(static_cast<double>(k), alpha, x));
        }
      }
      worst = std::min(worst, lhs - acc.value() / md.value);
    }
  }
  res.passed = worst >= -1e-9;
  res.detail = "min [D(mean) - weighted average of term deltas] = " +
               num(worst) + " over 20 polynomials";
  return res;
}

CheckResult reference_values(Rng&, const BatteryOptions&) {
  CheckResult res{"reference-values", false, {}};
  struct Anchor {
    std::string name;
    double got;
    double want;
    double tol;
  };
  std::vector<Anchor> anchors;
  auto add = [&anchors](std::string name, double got, double want, double tol) {
    anchors.push_back({std::move(name), got, want, tol});
  };

  add("kernel(1/2, -5/2) at 1/2", kernel_integral({0.5, -2.5}, 0.5), 2.0 / 3.0,
      1e-15);
  add("kernel(0, -1) at 1/2", kernel_integral({0.0, -1.0}, 0.5), std::log(2.0),
      1e-15);
  add("h'' at (1, -1, 1/2)", kernel_derivatives({1.0, -1.0}, 0.5).h2, 4.0,
      1e-12);
  add("h''' at (2, 0, 0.37)", kernel_derivatives({2.0, 0.0}, 0.37).h3, 2.0,
      1e-12);
  add("dh/dlambda at (0, 0, 1/2)", kernel_dlambda({0.0, 0.0}, 0.5),
      -0.8465735902799727, 1e-15);
  add("e2 at (1, -1, 1/2)", e2(1.0, -1.0, 0.5), -1.25, 1e-15);
  add("d1 at (1, 0, 1/2)", d1(1.0, 0.0, 0.5), 0.0625, 1e-12);
  add("delta3 at (-5/2, 1/2)", delta3(-2.5, 0.5), 0.29289321881345254, 1e-15);
  add("delta_small at (2, -2, 0.1)", delta_small(2.0, -2.0, 0.1),
      5.909910341e-7, 1e-14);
  add("delta_small at (1, -1, 0.1)", delta_small(1.0, -1.0, 0.1), 1.71108e-5,
      1e-4 * 1.71108e-5);
  add("delta_small at (1, -1, 0.3)", delta_small(1.0, -1.0, 0.3), 7.48729e-4,
      1e-4 * 7.48729e-4);
  add("delta_small at (1, -1, 0.5)", delta_small(1.0, -1.0, 0.5), 6.46494e-3,
      1e-4 * 6.46494e-3);
  add("fd curvature of 3 - x^2 at 1/2",
      loglog_second_derivative([](double x) { return 3.0 - x * x; }, 0.5),
      -0.3966942148760331, 1e-6);
  add("mean of z at r = 1/2, flat weight", monomial_mean(2.0, 0.0, 1, 0.5),
      0.125, 1e-13);
  add("mean of 1 + z at r = 0.8, alpha 1",
      series_mean_p2({{1.0, 0.0}, {1.0, 0.0}}, 1.0, 0.8), 1.2698039215686274,
      1e-12);
  add("mean of z at r = 1/2, alpha -4", monomial_mean(2.0, -4.0, 1, 0.5),
      0.14864864864864866, 1e-12);
  add("delta at (1, -4, 0.9604)", delta(1.0, -4.0, 0.9604), -0.49763767, 1e-6);
  add("delta at (1, -4, 0.99)", delta(1.0, -4.0, 0.99), -0.68345573, 1e-6);
  add("delta limit at alpha -7/2", delta_limit_at_one(1.0, -3.5), -10.0 / 9.0,
      1e-15);
  add("delta limit at alpha -4", delta_limit_at_one(1.0, -4.0), -0.75, 1e-15);
  add("delta limit at alpha -5", delta_limit_at_one(1.0, -5.0), -4.0 / 9.0,
      1e-15);
  add("d2 crossing at (1, -1/2)",
      find_sign_change([](double x) { return d2(1.0, -0.5, x); }, 0.9, 0.95),
      0.917639355512, 1e-9);

  int off = 0;
  std::string first_bad;
  for (const Anchor& a : anchors) {
    if (!(std::abs(a.got - a.want) <= a.tol)) {
      ++off;
      if (first_bad.empty()) {
        first_bad = a.name + " got " + num(a.got) + " want " + num(a.want);
      }
    }
  }
  res.passed = off == 0;
  res.detail = res.passed
                   ? std::to_string(anchors.size()) + " anchors matched"
                   : std::to_string(off) + " anchor(s) off; first: " + first_bad;
  return res;
}

CheckResult scan_classes(Rng&, const BatteryOptions&) {
  CheckResult res{"scan-classes", false, {}};

  const std::vector<ScanRecord> in_range = run_scan(ScanConfig{});
  int bad_in_range = 0;
  for (const ScanRecord& rec : in_range) {
    if (rec.classification != Classification::convex) ++bad_in_range;
  }

  ScanConfig above;
  above.alphas = {0.5, 1.0, 2.0};
  above.ks = {1};
  const std::vector<ScanRecord> above_rows = run_scan(above);
  int bad_above = 0;
  for (const ScanRecord& rec : above_rows) {
    if (rec.classification == Classification::convex) ++bad_above;
  }

  ScanConfig below;
  below.alphas = {-4.0};
  below.ks = {1};
  const std::vector<ScanRecord> below_rows = run_scan(below);
  const bool below_ok = below_rows.size() == 1 &&
                        below_rows[0].classification != Classification::convex;

  res.passed = !in_range.empty() && bad_in_range == 0 && !above_rows.empty() &&
               bad_above == 0 && below_ok;
  res.detail = std::to_string(in_range.size()) + " in-range rows, " +
               std::to_string(bad_in_range) + " not convex; " +
               std::to_string(above_rows.size()) + " rows above range, " +
               std::to_string(bad_above) + " wrongly convex; alpha -4 row " +
               (below_ok ? "not convex" : "misclassified");
  return res;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return in ? ss.str() : std::string();
}

CheckResult scan_determinism(Rng&, const BatteryOptions& opts) {
  CheckResult res{"scan-determinism", false, {}};
  const std::string first = scan_to_csv(run_scan(ScanConfig{}));
  const std::string second = scan_to_csv(run_scan(ScanConfig{}));
  const bool in_process = !first.empty() && first == second;
  res.detail = in_process ? "in-process runs byte-identical"
                          : "in-process runs differ";

  bool external = true;
  if (!opts.cli_path.empty()) {
    external = false;
    namespace fs = std::filesystem;
    std::error_code ec;
    const fs::path dir = fs::temp_directory_path(ec) / "diskmeans-battery";
    fs::create_directories(dir, ec);
    const fs::path out1 = dir / "scan-first.csv";
    const fs::path out2 = dir / "scan-second.csv";
    const std::string base = "\"" + opts.cli_path + "\" scan --out \"";
    const int rc1 = std::system((base + out1.string() + "\"").c_str());
    const int rc2 = std::system((base + out2.string() + "\"").c_str());
    const std::string file1 = slurp(out1);
    const std::string file2 = slurp(out2);
    external = rc1 == 0 && rc2 == 0 && !file1.empty() && file1 == file2 &&
               file1 == first;
    res.detail += external ? "; scan command runs byte-identical"
                           : "; scan command runs differ";
  } else {
    res.detail += "; scan command not exercised (no path given)";
  }
  res.passed = in_process && external;
  return res;
}

using ItemFn = CheckResult (*)(Rng&, const BatteryOptions&);

struct Item {
  const char* id;
  ItemFn fn;
};

constexpr Item kItems[] = {
    {"closed-form-above", &closed_form_above},
    {"closed-form-below", &closed_form_below},
    {"quartic-endpoints", &quartic_endpoints},
    {"cubic-endpoints", &cubic_endpoints},
    {"quartic-profile", &quartic_profile},
    {"cubic-profile", &cubic_profile},
    {"convexity-sweep", &convexity_sweep},
    {"sharpness-above", &sharpness_above},
    {"sharpness-below", &sharpness_below},
    {"delta-zero", &delta_zero},
    {"oracle-equivalence", &oracle_equivalence},
    {"proof-battery-core", &proof_battery_core},
    {"proof-battery-ext", &proof_battery_ext},
    {"aggregation-inequality", &aggregation_inequality},
    {"reference-values", &reference_values},
    {"scan-classes", &scan_classes},
    {"scan-determinism", &scan_determinism},
};

}  // namespace

std::vector<std::string> battery_item_ids() {
  std::vector<std::string> ids;
  for (const Item& item : kItems) ids.emplace_back(item.id);
  return ids;
}

std::vector<CheckResult> run_battery(const BatteryOptions& opts) {
  std::vector<CheckResult> out;
  bool matched = false;
  for (const Item& item : kItems) {
    if (!opts.only.empty() && opts.only != item.id) continue;
    matched = true;
    Rng rng(opts.seed);
    CheckResult res;
    try {
      res = item.fn(rng, opts);
    } catch (const std::exception& e) {
      res.passed = false;
      res.detail = std::string("exception: ") + e.what();
    }
    res.id = item.id;
    out.push_back(std::move(res));
  }
  if (!matched && !opts.only.empty()) {
    throw std::domain_error("run_battery: unknown item '" + opts.only + "'");
  }
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.passed; });
}

}  // namespace diskmeans
