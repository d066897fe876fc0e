#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "diskmeans/convexity.hpp"
#include "diskmeans/errors.hpp"
#include "diskmeans/means.hpp"
#include "diskmeans/numerics.hpp"

using namespace diskmeans;

namespace {

double quartic(double x) {
  return 9.0 + x * (-24.0 + x * (18.0 + x * (-6.0 + x)));
}

}  // namespace

TEST_CASE("d_functional closed identities") {
  // Pure powers are log-linear in log x, so D vanishes.
  for (double m : {1.0, 2.5}) {
    const double x = 0.37;
    const double g = std::pow(x, m);
    const double g1 = m * std::pow(x, m - 1.0);
    const double g2 = m * (m - 1.0) * std::pow(x, m - 2.0);
    CHECK(std::abs(d_functional(g, g1, g2, x)) <= 1e-12);
  }
  // g = 3 - x^2 at x = 1/2: x D = -48/121.
  CHECK(0.5 * d_functional(2.75, -1.0, -2.0, 0.5) ==
        doctest::Approx(-0.3966942148760331).epsilon(1e-12));
}

TEST_CASE("finite-difference curvature matches the closed value") {
  auto g = [](double x) { return 3.0 - x * x; };
  CHECK(loglog_second_derivative(g, 0.5) ==
        doctest::Approx(-0.3966942148760331).epsilon(1e-7));
  FdOptions plain;
  plain.richardson = false;
  CHECK(loglog_second_derivative(g, 0.5, plain) ==
        doctest::Approx(-0.3966942148760331).epsilon(1e-4));
}

TEST_CASE("delta vanishes identically at lambda zero") {
  for (double alpha : {-4.0, -1.0, 0.0, 2.0}) {
    for (double x : {0.01, 0.5, 0.99}) {
      CHECK(delta(0.0, alpha, x) == 0.0);
    }
  }
}

TEST_CASE("delta anchors and signs") {
  CHECK(delta(1.0, -4.0, 0.9604) == doctest::Approx(-0.49763767).epsilon(1e-6));
  CHECK(delta(1.0, -4.0, 0.99) == doctest::Approx(-0.68345573).epsilon(1e-6));
  CHECK(delta(1.0, -4.0, 0.5) > 0.0);
  for (double x : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    CHECK(delta(0.5, -2.5, x) > 0.0);
  }
  CHECK(delta(1.0, 1.0, 0.5) < 0.0);
}

TEST_CASE("lambda derivative of delta agrees with finite differences") {
  DeltaDlOptions off;
  off.cross_check = false;
  struct Case {
    double lambda, alpha, x;
  };
  for (const Case& c : {Case{1.0, -1.0, 0.5}, Case{2.0, -0.5, 0.3},
                        Case{0.5, -1.9, 0.8}}) {
    const double an = delta_dlambda(c.lambda, c.alpha, c.x, off);
    const double s = 1e-6;
    const double fd =
        (delta(c.lambda + s, c.alpha, c.x) - delta(c.lambda - s, c.alpha, c.x)) /
        (2.0 * s);
    CHECK(std::abs(an - fd) <= 1e-6 * std::max(std::abs(an), 1.0));
  }
  CHECK_NOTHROW(delta_dlambda(1.0, -1.0, 0.5));
  CHECK(delta_dlambda(0.0, -1.0, 0.5) > 0.0);
}

TEST_CASE("closed-form limits at the boundary") {
  CHECK(delta_limit_at_one(1.0, -4.0) == doctest::Approx(-0.75).epsilon(1e-15));
  CHECK(delta_limit_at_one(1.0, -3.5) ==
        doctest::Approx(-10.0 / 9.0).epsilon(1e-15));
  CHECK(delta_limit_at_one(1.0, -5.0) ==
        doctest::Approx(-4.0 / 9.0).epsilon(1e-15));
  CHECK_THROWS_AS(delta_limit_at_one(1.0, -3.0), std::domain_error);
  CHECK_THROWS_AS(delta_limit_at_one(1.0, 0.0), std::domain_error);
}

TEST_CASE("extrapolated limits reach the closed form") {
  CHECK(delta_limit_extrapolated(1.0, -4.0) ==
        doctest::Approx(-0.75).epsilon(1e-3));
  CHECK(std::abs(delta_limit_extrapolated(1.0, -3.5) + 10.0 / 9.0) <= 1e-3);
  CHECK(std::abs(delta_limit_extrapolated(1.0, -5.0) + 4.0 / 9.0) <= 1e-3);
}

TEST_CASE("limit extrapolation is exact on synthetic data") {
  auto g = [](double x) {
    const double u = 1.0 - x;
    return 2.0 - 3.0 * u + 0.5 * u * u;
  };
  CHECK(limit_toward_one(g, {0.0, 1.0, 2.0}) == doctest::Approx(2.0).epsilon(1e-10));
  auto g2 = [](double x) {
    const double u = 1.0 - x;
    return 1.0 + 4.0 * std::sqrt(u) - 2.0 * u;
  };
  CHECK(limit_toward_one(g2, {0.0, 0.5, 1.0}) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("profiles classify known shapes") {
  const std::vector<double> grid = [] {
    std::vector<double> g;
    for (int i = 1; i <= 49; ++i) {
      const double r = 0.02 * i;
      g.push_back(r * r);
    }
    return g;
  }();

  auto convex_mean = [](double x) { return monomial_mean_x(2.0, -1.0, 1, x); };
  const ConvexityProfile conv = loglog_profile(convex_mean, grid);
  CHECK(conv.classification == Classification::convex);
  CHECK(conv.sign_changes.empty());

  auto concave_mean = [](double x) { return monomial_mean_x(2.0, 1.0, 1, x); };
  const ConvexityProfile conc = loglog_profile(concave_mean, grid);
  CHECK(conc.classification == Classification::concave);

  const Coefficients one_plus_z{{1.0, 0.0}, {1.0, 0.0}};
  auto mixed_mean = [&one_plus_z](double x) {
    return series_mean_p2_x(one_plus_z, 1.0, x);
  };
  const ConvexityProfile mixed = loglog_profile(mixed_mean, grid);
  CHECK(mixed.classification == Classification::neither);
  REQUIRE(mixed.sign_changes.size() == 1);
  CHECK(std::abs(mixed.sign_changes[0] - 0.58935442960336486) <= 1e-2);

  const ConvexityProfile empty = loglog_profile(convex_mean, {});
  CHECK(empty.classification == Classification::indeterminate);
  CHECK(empty.grid.empty());

  const ConvexityProfile banded = loglog_profile(mixed_mean, grid, 1e6);
  CHECK(banded.classification == Classification::convex);
  CHECK(banded.band == 1e6);
}

TEST_CASE("sign-change refinement and bracket errors") {
  const double root =
      find_sign_change([](double x) { return quartic(x); }, 0.0, 1.0);
  CHECK(root == doctest::Approx(0.58935442960336486).epsilon(1e-9));
  CHECK_THROWS_AS(find_sign_change([](double x) { return quartic(x); }, 0.0, 0.1),
                  bracket_error);
}

TEST_CASE("auto band scales with the median magnitude") {
  CHECK(auto_band({1.0, -2.0, 3.0}) == doctest::Approx(2e-7).epsilon(1e-12));
  CHECK(auto_band({1e-9, -1e-9}) == doctest::Approx(1e-7).epsilon(1e-12));
}

TEST_CASE("string names for verdicts") {
  CHECK(std::string(to_string(Classification::convex)) == "convex");
  CHECK(std::string(to_string(Classification::concave)) == "concave");
  CHECK(std::string(to_string(Classification::neither)) == "neither");
  CHECK(std::string(to_string(Classification::indeterminate)) == "indeterminate");
}
