// Command-line front end: area means, convexity profiles, parameter scans,
// claim verification, and the reproduction battery.
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "diskmeans/battery.hpp"
#include "diskmeans/coeffs.hpp"
#include "diskmeans/convexity.hpp"
#include "diskmeans/csv.hpp"
#include "diskmeans/diagnostics.hpp"
#include "diskmeans/errors.hpp"
#include "diskmeans/means.hpp"
#include "diskmeans/scan.hpp"

namespace {

using diskmeans::Coefficients;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using ConfigMap = std::map<std::string, std::string>;

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// The config file is read ahead of option parsing so its values can serve as
// defaults; flags given on the command line always win.
ConfigMap load_config_from_argv(int argc, char** argv) {
  std::string path;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) {
      path = argv[i + 1];
    } else if (arg.rfind("--config=", 0) == 0) {
      path = arg.substr(9);
    }
  }
  ConfigMap out;
  if (path.empty()) return out;
  std::ifstream in(path);
  if (!in) throw diskmeans::io_error("config: cannot open " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config: " + path + ":" + std::to_string(lineno) +
                       ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) {
      throw UsageError("config: " + path + ":" + std::to_string(lineno) +
                       ": empty key");
    }
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

double to_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError(what + ": cannot parse '" + s + "' as a number");
  }
}

int to_int(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError(what + ": cannot parse '" + s + "' as an integer");
  }
}

std::uint64_t to_u64(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError(what + ": cannot parse '" + s + "' as an integer");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

// Accepts "lo:hi:step", a comma list, or a single value.
std::vector<double> parse_value_list(const std::string& spec,
                                     const std::string& what) {
  if (spec.find(':') != std::string::npos) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3) throw UsageError(what + ": expected lo:hi:step");
    const double lo = to_double(parts[0], what);
    const double hi = to_double(parts[1], what);
    const double step = to_double(parts[2], what);
    if (!(step > 0.0)) throw UsageError(what + ": step must be positive");
    if (hi < lo) throw UsageError(what + ": hi must not be below lo");
    std::vector<double> vals;
    const double slack = 1e-9 * std::max(1.0, std::abs(hi));
    for (int i = 0;; ++i) {
      const double v = lo + step * i;
      if (v > hi + slack) break;
      vals.push_back(v);
    }
    return vals;
  }
  std::vector<double> vals;
  for (const std::string& part : split(spec, ',')) {
    const std::string t = trim(part);
    if (t.empty()) throw UsageError(what + ": empty entry in list");
    vals.push_back(to_double(t, what));
  }
  return vals;
}

std::vector<int> parse_int_list(const std::string& spec,
                                const std::string& what) {
  std::vector<int> out;
  for (double v : parse_value_list(spec, what)) {
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-9) {
      throw UsageError(what + ": expected integer values");
    }
    out.push_back(static_cast<int>(r));
  }
  return out;
}

// Grids are specified in the radius r; evaluation happens at x = r^2.
std::vector<double> parse_grid_x(const std::string& spec) {
  std::vector<double> xs;
  for (double r : parse_value_list(spec, "--grid")) xs.push_back(r * r);
  return xs;
}

std::vector<double> default_r_grid() {
  std::vector<double> rs;
  for (int i = 1; i <= 49; ++i) rs.push_back(0.02 * i);
  return rs;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw diskmeans::io_error("cannot open output file: " + path);
  out << content;
  out.flush();
  if (!out) throw diskmeans::io_error("failed while writing: " + path);
}

void exploratory_note(double p) {
  std::cerr << "note: p = " << diskmeans::format_double(p)
            << " coefficient subjects run on direct quadrature without an "
               "independent series cross-reference\n";
}

// One evaluation subject: either the monomial z^k or a coefficient file.
struct Subject {
  int k = -1;  // -1 means coefficient subject
  Coefficients coeffs;
};

Subject resolve_subject(bool cli_mono, int mono_val, bool cli_coeffs,
                        const std::string& coeffs_val, const ConfigMap& cfg) {
  bool has_mono = cli_mono;
  int k = mono_val;
  bool has_coeffs = cli_coeffs;
  std::string path = coeffs_val;
  if (!cli_mono && !cli_coeffs) {
    if (const auto it = cfg.find("monomial"); it != cfg.end()) {
      has_mono = true;
      k = to_int(it->second, "monomial");
    }
    if (const auto it = cfg.find("coeffs"); it != cfg.end()) {
      has_coeffs = true;
      path = it->second;
    }
  }
  if (has_mono == has_coeffs) {
    throw UsageError("exactly one of --monomial and --coeffs is required");
  }
  Subject s;
  if (has_mono) {
    if (k < 0) throw UsageError("--monomial: degree must be nonnegative");
    s.k = k;
  } else {
    s.coeffs = diskmeans::load_coefficients(path);
  }
  return s;
}

struct OptBinding {
  CLI::Option* opt = nullptr;
  const char* key = nullptr;
};

bool effective(const OptBinding& b, const ConfigMap& cfg) {
  return (b.opt != nullptr && b.opt->count() > 0) ||
         (b.key != nullptr && cfg.count(b.key) > 0);
}

void apply_config(const ConfigMap& cfg, const OptBinding& b, double& var) {
  if (b.opt->count() > 0) return;
  if (const auto it = cfg.find(b.key); it != cfg.end()) {
    var = to_double(it->second, b.key);
  }
}

void apply_config(const ConfigMap& cfg, const OptBinding& b, std::string& var) {
  if (b.opt->count() > 0) return;
  if (const auto it = cfg.find(b.key); it != cfg.end()) var = it->second;
}

void apply_config(const ConfigMap& cfg, const OptBinding& b,
                  std::uint64_t& var) {
  if (b.opt->count() > 0) return;
  if (const auto it = cfg.find(b.key); it != cfg.end()) {
    var = to_u64(it->second, b.key);
  }
}

struct MeanArgs {
  double p = 2.0;
  double alpha = 0.0;
  int monomial = 0;
  std::string coeffs;
  double r = 0.0;
  std::string grid;
  double tol = diskmeans::kDefaultTol;
  std::string config;
};

struct ProfileArgs {
  double p = 2.0;
  double alpha = 0.0;
  int monomial = 0;
  std::string coeffs;
  std::string grid;
  double band = -1.0;
  double tol = diskmeans::kDefaultTol;
  std::string out;
  std::string config;
};

struct ScanArgs {
  std::string p;
  std::string alpha;
  std::string monomial;
  std::string coeffs;
  std::string grid;
  double band = -1.0;
  double tol = diskmeans::kDefaultTol;
  std::string out;
  std::string config;
};

struct VerifyArgs {
  double lambda = 0.0;
  double alpha = 0.0;
  std::string grid;
  double tol = 1e-9;
  std::string out;
  std::string config;
};

struct ReproduceArgs {
  std::uint64_t seed = 12345;
  std::string only;
  std::string config;
};

int cmd_mean(const MeanArgs& a, const Subject& subject,
             const std::vector<double>& rs) {
  if (subject.k < 0 && a.p != 2.0) exploratory_note(a.p);
  for (double r : rs) {
    double value = 0.0;
    if (subject.k >= 0) {
      value = diskmeans::monomial_mean(a.p, a.alpha, subject.k, r, a.tol);
    } else if (a.p == 2.0) {
      value = diskmeans::series_mean_p2(subject.coeffs, a.alpha, r, a.tol);
    } else {
      auto f = [&subject](std::complex<double> z) {
        return diskmeans::eval_poly(subject.coeffs, z);
      };
      value = diskmeans::quad_mean(f, a.p, a.alpha, r, a.tol);
    }
    std::cout << diskmeans::format_double(r) << ' '
              << diskmeans::format_double(value) << '\n';
  }
  return 0;
}

int cmd_profile(const ProfileArgs& a, const Subject& subject,
                const std::vector<double>& grid) {
  if (subject.k < 0 && a.p != 2.0) exploratory_note(a.p);
  std::function<double(double)> mean_x;
  if (subject.k >= 0) {
    mean_x = [&a, &subject](double x) {
      return diskmeans::monomial_mean_x(a.p, a.alpha, subject.k, x, a.tol);
    };
  } else if (a.p == 2.0) {
    mean_x = [&a, &subject](double x) {
      return diskmeans::series_mean_p2_x(subject.coeffs, a.alpha, x, a.tol);
    };
  } else {
    mean_x = [&a, &subject](double x) {
      auto f = [&subject](std::complex<double> z) {
        return diskmeans::eval_poly(subject.coeffs, z);
      };
      return diskmeans::quad_mean(f, a.p, a.alpha, std::sqrt(x), a.tol);
    };
  }
  const diskmeans::ConvexityProfile prof =
      diskmeans::loglog_profile(mean_x, grid, a.band);
  for (std::size_t i = 0; i < prof.grid.size(); ++i) {
    std::cout << diskmeans::format_double(prof.grid[i]) << ' '
              << diskmeans::format_double(prof.dvals[i]) << '\n';
  }
  std::cout << "band: " << diskmeans::format_double(prof.band) << '\n';
  std::cout << "verdict: " << to_string(prof.classification) << '\n';
  if (!prof.sign_changes.empty()) {
    std::cout << "sign changes:";
    for (double s : prof.sign_changes) {
      std::cout << ' ' << diskmeans::format_double(s);
    }
    std::cout << '\n';
  }
  if (!a.out.empty()) {
    write_file(a.out,
               diskmeans::profile_to_csv(a.p, a.alpha, subject.k, prof));
  }
  return 0;
}

int cmd_scan(const ScanArgs& a, bool has_coeffs, const std::string& coeffs_path,
             const std::vector<double>& grid) {
  diskmeans::ScanConfig cfg;
  if (!a.p.empty()) cfg.ps = parse_value_list(a.p, "--p");
  if (!a.alpha.empty()) cfg.alphas = parse_value_list(a.alpha, "--alpha");
  if (!a.monomial.empty()) {
    cfg.ks = parse_int_list(a.monomial, "--monomial");
    for (int k : cfg.ks) {
      if (k < 0) throw UsageError("--monomial: degrees must be nonnegative");
    }
  }
  if (has_coeffs) cfg.coeffs = diskmeans::load_coefficients(coeffs_path);
  cfg.grid = grid;
  cfg.band = a.band;
  cfg.tol = a.tol;
  if (!cfg.coeffs.empty()) {
    for (double p : cfg.ps) {
      if (p != 2.0) {
        exploratory_note(p);
        break;
      }
    }
  }
  const std::string csv = diskmeans::scan_to_csv(diskmeans::run_scan(cfg));
  if (a.out.empty()) {
    std::cout << csv;
  } else {
    write_file(a.out, csv);
  }
  return 0;
}

int cmd_verify(const VerifyArgs& a, const std::vector<double>& grid) {
  const auto reports = diskmeans::verify_claims(a.lambda, a.alpha, grid, a.tol);
  const std::string csv = diskmeans::reports_to_csv(reports);
  if (a.out.empty()) {
    std::cout << csv;
  } else {
    write_file(a.out, csv);
  }
  for (const auto& rep : reports) {
    if (rep.status == diskmeans::ClaimStatus::failed) return 1;
  }
  return 0;
}

int cmd_reproduce(const ReproduceArgs& a, const std::string& argv0) {
  if (!a.only.empty()) {
    const auto ids = diskmeans::battery_item_ids();
    if (std::find(ids.begin(), ids.end(), a.only) == ids.end()) {
      throw UsageError("--only: unknown item '" + a.only + "'");
    }
  }
  diskmeans::BatteryOptions opts;
  opts.seed = a.seed;
  opts.only = a.only;
  std::error_code ec;
  const auto abs = std::filesystem::absolute(argv0, ec);
  opts.cli_path = ec ? argv0 : abs.string();
  const auto results = diskmeans::run_battery(opts);
  int passed = 0;
  for (const auto& res : results) {
    if (res.passed) ++passed;
    std::cout << res.id << ": " << (res.passed ? "PASS" : "FAIL") << " - "
              << res.detail << '\n';
  }
  std::cout << "passed " << passed << " of " << results.size() << " items\n";
  return diskmeans::all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Weighted area means of analytic functions on the unit disk: "
      "evaluation, log-convexity profiles, parameter scans, and checks"};
  app.require_subcommand(1);

  MeanArgs ma;
  CLI::App* mean = app.add_subcommand(
      "mean", "Evaluate the weighted area mean over one or more radii");
  OptBinding m_p{mean->add_option("--p", ma.p, "Exponent p > 0"), "p"};
  OptBinding m_alpha{
      mean->add_option("--alpha", ma.alpha, "Weight exponent"), "alpha"};
  OptBinding m_mono{
      mean->add_option("--monomial", ma.monomial, "Monomial degree k"),
      "monomial"};
  OptBinding m_coeffs{
      mean->add_option("--coeffs", ma.coeffs, "Coefficient file"), "coeffs"};
  OptBinding m_r{mean->add_option("--r", ma.r, "Single radius in (0, 1)"),
                 "r"};
  OptBinding m_grid{
      mean->add_option("--grid", ma.grid, "Radius grid lo:hi:step"), "grid"};
  OptBinding m_tol{mean->add_option("--tol", ma.tol, "Evaluation tolerance"),
                   "tol"};
  mean->add_option("--config", ma.config, "key=value defaults file");

  ProfileArgs pa;
  CLI::App* profile = app.add_subcommand(
      "profile", "Log-log curvature profile and convexity verdict");
  OptBinding p_p{profile->add_option("--p", pa.p, "Exponent p > 0"), "p"};
  OptBinding p_alpha{
      profile->add_option("--alpha", pa.alpha, "Weight exponent"), "alpha"};
  OptBinding p_mono{
      profile->add_option("--monomial", pa.monomial, "Monomial degree k"),
      "monomial"};
  OptBinding p_coeffs{
      profile->add_option("--coeffs", pa.coeffs, "Coefficient file"),
      "coeffs"};
  OptBinding p_grid{
      profile->add_option("--grid", pa.grid, "Radius grid lo:hi:step"),
      "grid"};
  OptBinding p_band{
      profile->add_option("--band", pa.band,
                          "Zero band for classification (negative = auto)"),
      "band"};
  OptBinding p_tol{
      profile->add_option("--tol", pa.tol, "Evaluation tolerance"), "tol"};
  OptBinding p_out{profile->add_option("--out", pa.out, "CSV output path"),
                   "out"};
  profile->add_option("--config", pa.config, "key=value defaults file");

  ScanArgs sa;
  CLI::App* scan = app.add_subcommand(
      "scan", "Classify a family of subjects across p, alpha, and k");
  OptBinding s_p{
      scan->add_option("--p", sa.p, "Exponents (list or lo:hi:step)"), "p"};
  OptBinding s_alpha{
      scan->add_option("--alpha", sa.alpha,
                       "Weight exponents (list or lo:hi:step)"),
      "alpha"};
  OptBinding s_mono{
      scan->add_option("--monomial", sa.monomial,
                       "Monomial degrees (list or lo:hi:step)"),
      "monomial"};
  OptBinding s_coeffs{
      scan->add_option("--coeffs", sa.coeffs,
                       "Coefficient file; adds a k = -1 subject"),
      "coeffs"};
  OptBinding s_grid{
      scan->add_option("--grid", sa.grid, "Radius grid lo:hi:step"), "grid"};
  OptBinding s_band{
      scan->add_option("--band", sa.band,
                       "Zero band for classification (negative = auto)"),
      "band"};
  OptBinding s_tol{scan->add_option("--tol", sa.tol, "Evaluation tolerance"),
                   "tol"};
  OptBinding s_out{scan->add_option("--out", sa.out, "CSV output path"),
                   "out"};
  scan->add_option("--config", sa.config, "key=value defaults file");

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand(
      "verify", "Run the named-claim checks at one (lambda, alpha)");
  OptBinding v_lambda{
      verify->add_option("--lambda", va.lambda, "Kernel exponent lambda >= 0"),
      "lambda"};
  OptBinding v_alpha{
      verify->add_option("--alpha", va.alpha, "Weight exponent"), "alpha"};
  OptBinding v_grid{
      verify->add_option("--grid", va.grid, "Radius grid lo:hi:step"), "grid"};
  OptBinding v_tol{
      verify->add_option("--tol", va.tol, "Identity-check tolerance"), "tol"};
  OptBinding v_out{verify->add_option("--out", va.out, "CSV output path"),
                   "out"};
  verify->add_option("--config", va.config, "key=value defaults file");

  ReproduceArgs ra;
  CLI::App* reproduce = app.add_subcommand(
      "reproduce", "Run the reproduction battery and report each item");
  OptBinding r_seed{
      reproduce->add_option("--seed", ra.seed, "Seed for the generated cases"),
      "seed"};
  OptBinding r_only{
      reproduce->add_option("--only", ra.only, "Run a single item by id"),
      "only"};
  reproduce->add_option("--config", ra.config, "key=value defaults file");

  try {
    const ConfigMap cfg = load_config_from_argv(argc, argv);

    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int rc = app.exit(e);
      return rc == 0 ? 0 : 2;
    }

    if (mean->parsed()) {
      apply_config(cfg, m_p, ma.p);
      apply_config(cfg, m_alpha, ma.alpha);
      apply_config(cfg, m_tol, ma.tol);
      apply_config(cfg, m_r, ma.r);
      apply_config(cfg, m_grid, ma.grid);
      const Subject subject =
          resolve_subject(m_mono.opt->count() > 0, ma.monomial,
                          m_coeffs.opt->count() > 0, ma.coeffs, cfg);
      const bool has_r = effective(m_r, cfg);
      const bool has_grid = effective(m_grid, cfg);
      if (has_r && has_grid) {
        throw UsageError("--r and --grid cannot both be given");
      }
      std::vector<double> rs;
      if (has_r) {
        rs = {ma.r};
      } else if (has_grid) {
        rs = parse_value_list(ma.grid, "--grid");
      } else {
        rs = default_r_grid();
      }
      return cmd_mean(ma, subject, rs);
    }
    if (profile->parsed()) {
      apply_config(cfg, p_p, pa.p);
      apply_config(cfg, p_alpha, pa.alpha);
      apply_config(cfg, p_band, pa.band);
      apply_config(cfg, p_tol, pa.tol);
      apply_config(cfg, p_grid, pa.grid);
      apply_config(cfg, p_out, pa.out);
      const Subject subject =
          resolve_subject(p_mono.opt->count() > 0, pa.monomial,
                          p_coeffs.opt->count() > 0, pa.coeffs, cfg);
      const std::vector<double> grid = effective(p_grid, cfg)
                                           ? parse_grid_x(pa.grid)
                                           : diskmeans::default_scan_grid();
      return cmd_profile(pa, subject, grid);
    }
    if (scan->parsed()) {
      apply_config(cfg, s_p, sa.p);
      apply_config(cfg, s_alpha, sa.alpha);
      apply_config(cfg, s_mono, sa.monomial);
      apply_config(cfg, s_coeffs, sa.coeffs);
      apply_config(cfg, s_band, sa.band);
      apply_config(cfg, s_tol, sa.tol);
      apply_config(cfg, s_grid, sa.grid);
      apply_config(cfg, s_out, sa.out);
      const std::vector<double> grid =
          effective(s_grid, cfg) ? parse_grid_x(sa.grid) : std::vector<double>{};
      return cmd_scan(sa, !sa.coeffs.empty(), sa.coeffs, grid);
    }
    if (verify->parsed()) {
      if (!effective(v_lambda, cfg)) throw UsageError("verify needs --lambda");
      if (!effective(v_alpha, cfg)) throw UsageError("verify needs --alpha");
      apply_config(cfg, v_lambda, va.lambda);
      apply_config(cfg, v_alpha, va.alpha);
      apply_config(cfg, v_tol, va.tol);
      apply_config(cfg, v_grid, va.grid);
      apply_config(cfg, v_out, va.out);
      const std::vector<double> grid = effective(v_grid, cfg)
                                           ? parse_grid_x(va.grid)
                                           : diskmeans::default_scan_grid();
      return cmd_verify(va, grid);
    }
    apply_config(cfg, r_seed, ra.seed);
    apply_config(cfg, r_only, ra.only);
    return cmd_reproduce(ra, argv[0]);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const diskmeans::io_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
