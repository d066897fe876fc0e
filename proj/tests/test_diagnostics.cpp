#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "diskmeans/convexity.hpp"
#include "diskmeans/diagnostics.hpp"
#include "diskmeans/errors.hpp"
#include "diskmeans/numerics.hpp"

using namespace diskmeans;

namespace {

std::vector<double> grid49() {
  std::vector<double> g;
  for (int i = 1; i <= 49; ++i) {
    const double r = 0.02 * i;
    g.push_back(r * r);
  }
  return g;
}

const DiagnosticReport& find_report(const std::vector<DiagnosticReport>& reps,
                                    const std::string& id) {
  for (const auto& r : reps) {
    if (r.claim_id == id) return r;
  }
  REQUIRE(false);
  return reps.front();
}

}  // namespace

TEST_CASE("polynomial pieces match hand values") {
  CHECK(e2(1.0, -1.0, 0.5) == doctest::Approx(-1.25).epsilon(1e-15));
  // lambda = 0, alpha = 0 collapses to -(1 - x)^2.
  CHECK(e2(0.0, 0.0, 0.3) == doctest::Approx(-0.49).epsilon(1e-14));
  CHECK(delta3(-2.5, 0.5) == doctest::Approx(0.29289321881345254).epsilon(1e-15));

  const double s = 1e-6;
  const double fd = (delta3(-2.5, 0.4 + s) - delta3(-2.5, 0.4 - s)) / (2.0 * s);
  CHECK(delta3_prime(-2.5, 0.4) == doctest::Approx(fd).epsilon(1e-8));
}

TEST_CASE("d1 anchor, positivity, and domain guard") {
  CHECK(d1(1.0, 0.0, 0.5) == doctest::Approx(0.0625).epsilon(1e-12));
  for (double x : {0.05, 0.3, 0.6, 0.9, 0.99}) {
    CHECK(d1(0.7, -1.2, x) >= -1e-12);
  }
  CHECK_THROWS_AS(d1(0.0, -1.0, 0.5), std::domain_error);
}

TEST_CASE("d2 sign structure across regimes") {
  CHECK(d2(1.0, -0.5, 0.9) < 0.0);
  CHECK(d2(1.0, -0.5, 0.95) > 0.0);
  const double cross =
      find_sign_change([](double x) { return d2(1.0, -0.5, x); }, 0.9, 0.95);
  CHECK(cross == doctest::Approx(0.917639355512).epsilon(1e-9));

  CHECK(d2(1.0, -1.0, 0.90) < 0.0);
  CHECK(d2(1.0, -1.0, 0.96) > 0.0);
  for (double x : {0.1, 0.5, 0.9, 0.99}) {
    CHECK(d2(1.0, -3.0, x) < 0.0);
  }
  CHECK_THROWS_AS(d2(0.0, 2.0, 0.5), regime_error);
}

TEST_CASE("delta_small anchors and regime guard") {
  CHECK(std::abs(delta_small(2.0, -2.0, 0.1) - 5.909910341e-7) <= 1e-14);
  CHECK(delta_small(1.0, -1.0, 0.1) ==
        doctest::Approx(1.71108e-5).epsilon(1e-4));
  CHECK(delta_small(1.0, -1.0, 0.3) ==
        doctest::Approx(7.48729e-4).epsilon(1e-4));
  CHECK(delta_small(1.0, -1.0, 0.5) ==
        doctest::Approx(6.46494e-3).epsilon(1e-4));
  // Above the d2 crossing the denominator flips sign and the bound is off.
  CHECK_THROWS_AS(delta_small(1.0, -0.5, 0.95), regime_error);
}

TEST_CASE("delta1 family is internally consistent") {
  const double lam = 1.2, alpha = -1.4, x = 0.45, s = 1e-6;
  const Delta1Family at = delta1_family(lam, alpha, x);
  const Delta1Family up = delta1_family(lam, alpha, x + s);
  const Delta1Family dn = delta1_family(lam, alpha, x - s);
  CHECK((up.value - dn.value) / (2.0 * s) ==
        doctest::Approx(at.first).epsilon(1e-7));
  CHECK((up.first - dn.first) / (2.0 * s) ==
        doctest::Approx(at.second).epsilon(1e-7));
  CHECK((up.second - dn.second) / (2.0 * s) ==
        doctest::Approx(at.third).epsilon(1e-6));

  for (double xx : {0.05, 0.3, 0.6, 0.9}) {
    CHECK(delta1_family(0.8, -0.3, xx).third > 0.0);
    CHECK(delta1_family(2.0, -1.99, xx).third > 0.0);
  }
}

TEST_CASE("boundary split reproduces delta for strongly negative weights") {
  for (double x : {0.3, 0.6, 0.9, 0.99}) {
    const DeltaSplit s = delta_split(1.0, -4.0, x);
    const double direct = delta(1.0, -4.0, x);
    CHECK(std::abs(s.delta1 + x * s.delta2 - direct) <=
          1e-9 * std::max(1.0, std::abs(direct)));
  }
  CHECK(std::abs(delta_split(1.0, -4.0, 0.9999).t1) <
        std::abs(delta_split(1.0, -4.0, 0.99).t1));

  auto t2_of = [](double x) { return delta_split(2.0, -4.0, x).t2; };
  CHECK(std::abs(limit_toward_one(t2_of, {0.0, 1.0, 2.0}) + 2.0 / 3.0) <= 1e-3);

  auto d1_of = [](double x) { return delta_split(2.0, -4.0, x).delta1; };
  // Limit is L (1 - L) with L = lambda (alpha+1) / (alpha+2) = 3.
  CHECK(std::abs(limit_toward_one(d1_of, {0.0, 1.0, 2.0}) + 6.0) <= 1e-2);

  CHECK_THROWS_AS(delta_split(1.0, -3.0, 0.5), std::domain_error);
}

TEST_CASE("positive-weight split reproduces delta") {
  for (double x : {0.2, 0.5, 0.8, 0.95}) {
    const DeltaSplitPos s = delta_split_pos(1.0, 1.0, x);
    const double direct = delta(1.0, 1.0, x);
    const double u = 1.0 - x;
    const double recon = std::pow(u, 0.0) * (s.vanishing + s.driving);
    CHECK(std::abs(recon - direct) <= 1e-9 * std::max(1.0, std::abs(direct)));
  }
  const DeltaSplitPos s = delta_split_pos(0.5, 2.5, 0.7);
  const double recon = std::pow(0.3, 1.5) * (s.vanishing + s.driving);
  CHECK(std::abs(recon - delta(0.5, 2.5, 0.7)) <= 1e-9);

  auto bracket_of = [](double x) { return delta_split_pos(1.0, 1.0, x).bracket; };
  CHECK(std::abs(limit_toward_one(bracket_of, {0.0, 1.0, 2.0}) + 1.0 / 3.0) <=
        1e-3);

  CHECK_THROWS_AS(delta_split_pos(1.0, -1.0, 0.5), std::domain_error);
}

TEST_CASE("claim registry at a core-regime point") {
  const auto reps = verify_claims(1.0, -1.0, grid49());
  CHECK(std::is_sorted(reps.begin(), reps.end(),
                       [](const DiagnosticReport& a, const DiagnosticReport& b) {
                         return a.claim_id < b.claim_id;
                       }));
  for (const auto& r : reps) {
    CHECK(r.status != ClaimStatus::failed);
  }
  CHECK(find_report(reps, "d1_nonneg").status == ClaimStatus::passed);
  CHECK(find_report(reps, "e2_sign_structure").status == ClaimStatus::passed);
  CHECK(find_report(reps, "ddelta_dlambda_positive").status == ClaimStatus::passed);
  CHECK(find_report(reps, "delta1_chain").status == ClaimStatus::passed);
  const auto& flip = find_report(reps, "d2_sign_change");
  CHECK(flip.status == ClaimStatus::passed);
  CHECK(flip.witness_x > 0.90);
  CHECK(flip.witness_x < 0.96);
  CHECK(find_report(reps, "delta_zero").status == ClaimStatus::skipped);
  CHECK(find_report(reps, "delta3_positive").status == ClaimStatus::skipped);
  CHECK(find_report(reps, "pos_split_identity").status == ClaimStatus::skipped);
  CHECK(find_report(reps, "delta_split_identity").status == ClaimStatus::skipped);
}

TEST_CASE("claim registry in the extended window") {
  const auto reps = verify_claims(1.0, -2.5, grid49());
  for (const auto& r : reps) {
    CHECK(r.status != ClaimStatus::failed);
  }
  CHECK(find_report(reps, "delta3_positive").status == ClaimStatus::passed);
  CHECK(find_report(reps, "d2_negative").status == ClaimStatus::passed);
  CHECK(find_report(reps, "delta_at_lambda0_positive").status ==
        ClaimStatus::passed);
  CHECK(find_report(reps, "lambda0_closed_form").status == ClaimStatus::passed);
  CHECK(find_report(reps, "delta1_chain").status == ClaimStatus::passed);
  CHECK(find_report(reps, "e2_sign_structure").status == ClaimStatus::skipped);
  CHECK(find_report(reps, "d2_sign_change").status == ClaimStatus::skipped);
}

TEST_CASE("claim registry at lambda zero and below the window") {
  const auto zero = verify_claims(0.0, -1.0, grid49());
  CHECK(find_report(zero, "delta_zero").status == ClaimStatus::passed);
  CHECK(find_report(zero, "d1_nonneg").status == ClaimStatus::skipped);

  const auto below = verify_claims(1.0, -4.0, grid49());
  for (const auto& r : below) {
    CHECK(r.status != ClaimStatus::failed);
  }
  CHECK(find_report(below, "tail_ratio_limit").status == ClaimStatus::passed);
  CHECK(find_report(below, "delta_split_identity").status == ClaimStatus::passed);
  CHECK(find_report(below, "delta_limit_at_one").status == ClaimStatus::passed);
  CHECK(find_report(below, "lambda0_closed_form").status == ClaimStatus::passed);
}

TEST_CASE("claim registry above the window") {
  const auto reps = verify_claims(1.0, 1.0, grid49());
  for (const auto& r : reps) {
    CHECK(r.status != ClaimStatus::failed);
  }
  CHECK(find_report(reps, "pos_split_identity").status == ClaimStatus::passed);
  CHECK(find_report(reps, "pos_bracket_limit").status == ClaimStatus::passed);
  const auto& near_one = find_report(reps, "pos_delta_negative_near_one");
  CHECK(near_one.status == ClaimStatus::passed);
  CHECK(near_one.witness_x > 0.98);
}

TEST_CASE("claim runner input validation") {
  CHECK_THROWS_AS(verify_claims(-1.0, 0.0, grid49()), std::domain_error);
  CHECK_THROWS_AS(verify_claims(1.0, 0.0, {}), std::domain_error);
  CHECK_THROWS_AS(verify_claims(1.0, 0.0, {2.0}), std::domain_error);
}

TEST_CASE("status names") {
  CHECK(std::string(to_string(ClaimStatus::passed)) == "passed");
  CHECK(std::string(to_string(ClaimStatus::failed)) == "failed");
  CHECK(std::string(to_string(ClaimStatus::skipped)) == "skipped");
  CHECK(std::string(to_string(ClaimStatus::inconclusive)) == "inconclusive");
}
