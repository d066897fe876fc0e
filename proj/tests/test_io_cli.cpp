#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "diskmeans/coeffs.hpp"
#include "diskmeans/convexity.hpp"
#include "diskmeans/csv.hpp"
#include "diskmeans/diagnostics.hpp"
#include "diskmeans/errors.hpp"
#include "diskmeans/scan.hpp"

using namespace diskmeans;

namespace {

std::string cli_path() {
  const char* p = std::getenv("DISKMEANS_CLI");
  return p ? std::string(p) : std::string();
}

std::string data_dir() {
  const char* p = std::getenv("DISKMEANS_DATA");
  return p ? std::string(p) : std::string();
}

std::filesystem::path temp_root() {
  auto dir = std::filesystem::temp_directory_path() / "diskmeans-io-tests";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const auto tmp = temp_root() / ("out-" + std::to_string(counter++) + ".txt");
  const std::string cmd =
      "\"" + cli_path() + "\" " + args + " > " + tmp.string() + " 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(tmp);
  std::filesystem::remove(tmp);
  return r;
}

std::filesystem::path write_temp(const std::string& name,
                                 const std::string& body) {
  const auto p = temp_root() / name;
  std::ofstream out(p, std::ios::binary);
  out << body;
  return p;
}

}  // namespace

TEST_CASE("coefficient files round-trip") {
  Coefficients c;
  c.push_back({1.0, 0.0});
  c.push_back({-0.25, 1.0 / 3.0});
  c.push_back({0.0, -7.5e-11});
  const auto p = temp_root() / "roundtrip.txt";
  save_coefficients(c, p.string());
  const Coefficients back = load_coefficients(p.string());
  REQUIRE(back.size() == c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(back[i].real() == c[i].real());
    CHECK(back[i].imag() == c[i].imag());
  }
  std::filesystem::remove(p);
}

TEST_CASE("coefficient parser skips comments and blanks") {
  const auto p = write_temp("comments.txt",
                            "# header\n\n1 2 # trailing comment\n 3 4 \n");
  const Coefficients c = load_coefficients(p.string());
  REQUIRE(c.size() == 2);
  CHECK(c[0] == std::complex<double>(1.0, 2.0));
  CHECK(c[1] == std::complex<double>(3.0, 4.0));
  std::filesystem::remove(p);
}

TEST_CASE("coefficient parser rejects bad input") {
  CHECK_THROWS_AS(load_coefficients((temp_root() / "missing.txt").string()),
                  io_error);
  const auto one = write_temp("one-field.txt", "1\n");
  CHECK_THROWS_AS(load_coefficients(one.string()), std::runtime_error);
  const auto bad = write_temp("bad-field.txt", "1 2 x\n");
  CHECK_THROWS_AS(load_coefficients(bad.string()), std::runtime_error);
  std::filesystem::remove(one);
  std::filesystem::remove(bad);
}

TEST_CASE("format_double round-trips through strtod") {
  const double vals[] = {0.0,   1.0 / 3.0, 0.1,         1e-300,
                         6.02e23, -0.49763767, 3.141592653589793};
  for (double v : vals) {
    const std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
  const std::string neg_zero = format_double(-0.0);
  const double back = std::strtod(neg_zero.c_str(), nullptr);
  CHECK(back == 0.0);
  CHECK(std::signbit(back));
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(format_double(INFINITY) == "inf");
  CHECK(format_double(-INFINITY) == "-inf");
}

TEST_CASE("scan csv has the documented shape") {
  ScanConfig cfg;
  cfg.ps = {2.0};
  cfg.alphas = {-1.0, 0.0};
  cfg.ks = {0, 1};
  const std::string csv = scan_to_csv(run_scan(cfg));
  std::istringstream in(csv);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "p,alpha,k,x,value,classification");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 5);
    CHECK(line.back() != ',');
  }
  CHECK(rows == 4);
  CHECK(csv.back() == '\n');
  CHECK(csv.find("\r") == std::string::npos);
}

TEST_CASE("profile csv carries one row per grid point") {
  const std::vector<double> grid = {0.04, 0.16, 0.36, 0.64};
  const auto prof = loglog_profile(
      [](double x) { return monomial_mean_x(2.0, -1.0, 1, x); }, grid);
  const std::string csv = profile_to_csv(2.0, -1.0, 1, prof);
  std::istringstream in(csv);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "p,alpha,k,x,value,classification");
  int rows = 0;
  while (std::getline(in, line)) {
    CHECK(line.find(",convex") != std::string::npos);
    ++rows;
  }
  CHECK(rows == 4);
}

TEST_CASE("verify csv carries one row per claim") {
  const auto reps = verify_claims(1.0, -1.0, {0.04, 0.25, 0.64, 0.9025});
  const std::string csv = reports_to_csv(reps);
  std::istringstream in(csv);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "claim_id,lambda,alpha,status,worst_violation,witness_x");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == static_cast<int>(reps.size()));
}

TEST_CASE("cli mean prints one row per radius") {
  if (cli_path().empty()) {
    WARN("DISKMEANS_CLI not set; skipping");
    return;
  }
  auto r = run_cli("mean --p 2 --alpha 0 --monomial 1 --r 0.5");
  CHECK(r.code == 0);
  CHECK(r.out == "0.5 0.125\n");

  if (!data_dir().empty()) {
    auto s = run_cli("mean --coeffs " + data_dir() +
                     "/one_plus_z.txt --alpha 1 --r 0.8");
    CHECK(s.code == 0);
    CHECK(s.out == "0.8 1.2698039215686274\n");
  }
}

TEST_CASE("cli exit codes distinguish failure kinds") {
  if (cli_path().empty()) {
    WARN("DISKMEANS_CLI not set; skipping");
    return;
  }
  CHECK(run_cli("mean --no-such-flag 1 --monomial 1").code == 2);
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("mean --monomial 1 --r 1.5").code == 3);
  CHECK(run_cli("scan --alpha 0 --monomial 1 --out /nonexistent-dir/x.csv")
            .code == 4);
  CHECK(run_cli("mean --monomial 1 --coeffs nope.txt --r 0.5").code == 2);
}

TEST_CASE("cli profile reports verdicts") {
  if (cli_path().empty()) {
    WARN("DISKMEANS_CLI not set; skipping");
    return;
  }
  auto r = run_cli("profile --p 2 --alpha -1 --monomial 1");
  CHECK(r.code == 0);
  CHECK(r.out.find("verdict: convex") != std::string::npos);

  if (!data_dir().empty()) {
    auto s = run_cli("profile --coeffs " + data_dir() +
                     "/sqrt2_z.txt --alpha -4 --p 2");
    CHECK(s.code == 0);
    CHECK(s.out.find("verdict: neither") != std::string::npos);
    CHECK(s.out.find("sign changes:") != std::string::npos);
  }
}

TEST_CASE("cli scan is deterministic") {
  if (cli_path().empty()) {
    WARN("DISKMEANS_CLI not set; skipping");
    return;
  }
  const auto a = temp_root() / "scan-a.csv";
  const auto b = temp_root() / "scan-b.csv";
  const std::string args = "scan --alpha -1:0:0.5 --monomial 0:4:1 --out ";
  CHECK(run_cli(args + a.string()).code == 0);
  CHECK(run_cli(args + b.string()).code == 0);
  const std::string first = slurp(a);
  CHECK(!first.empty());
  CHECK(first == slurp(b));
  CHECK(first.rfind("p,alpha,k,x,value,classification\n", 0) == 0);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST_CASE("cli reads config files with flag precedence") {
  if (cli_path().empty()) {
    WARN("DISKMEANS_CLI not set; skipping");
    return;
  }
  const auto cfg = write_temp("mean.cfg", "alpha=0\nmonomial=1\nr=0.5\n");
  auto r = run_cli("mean --config " + cfg.string());
  CHECK(r.code == 0);
  CHECK(r.out == "0.5 0.125\n");

  auto s = run_cli("mean --config " + cfg.string() + " --r 0.25");
  CHECK(s.code == 0);
  CHECK(s.out == "0.25 0.03125\n");
  std::filesystem::remove(cfg);
}

TEST_CASE("cli verify reports claim outcomes") {
  if (cli_path().empty()) {
    WARN("DISKMEANS_CLI not set; skipping");
    return;
  }
  auto r = run_cli("verify --lambda 1 --alpha -2.5");
  CHECK(r.code == 0);
  bool found = false;
  std::istringstream in(r.out);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("delta3_positive,", 0) == 0) {
      found = true;
      CHECK(line.find(",passed") != std::string::npos);
    }
  }
  CHECK(found);

  auto z = run_cli("verify --lambda 0 --alpha -1");
  CHECK(z.code == 0);
  CHECK(z.out.find("delta_zero") != std::string::npos);
  std::istringstream zin(z.out);
  while (std::getline(zin, line)) {
    if (line.rfind("delta_zero,", 0) == 0) {
      CHECK(line.find(",passed") != std::string::npos);
    }
  }
}
