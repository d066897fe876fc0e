#pragma once

#include <vector>

#include "diskmeans/convexity.hpp"
#include "diskmeans/means.hpp"

namespace diskmeans {

// One cell of a parameter sweep: the mean for (p, alpha, subject) profiled
// over the x grid and summarized by the extremes of its log-log curvature.
// k is the monomial degree, or -1 when the subject came from a coefficient
// file.  witness_x is where min_d is attained.
struct ScanRecord {
  double p = 2.0;
  double alpha = 0.0;
  int k = 0;
  Classification classification = Classification::indeterminate;
  double witness_x = 0.0;
  double min_d = 0.0;
  double max_d = 0.0;
};

struct ScanConfig {
  std::vector<double> ps{2.0};
  std::vector<double> alphas{-3.0, -2.5, -2.0, -1.5, -1.0, -0.5, 0.0};
  std::vector<int> ks{0, 1, 2, 3, 4, 5, 6, 7, 8};
  Coefficients coeffs;        // when non-empty, adds a k = -1 subject
  std::vector<double> grid;   // x values; empty selects the default grid
  double band = -1.0;         // < 0 selects the per-profile auto band
  double tol = kDefaultTol;
};

// The default x grid: squares of r in {0.02, 0.04, ..., 0.98}.
std::vector<double> default_scan_grid();

// Runs the sweep in lexicographic (p, alpha, k) order, so the coefficient
// subject (k = -1), when present, leads each (p, alpha) block.  Monomial
// cells profile f_{p k / 2}(x) / f_0(x); the coefficient subject uses the
// p = 2 series mean when p == 2 and polar quadrature otherwise.
std::vector<ScanRecord> run_scan(const ScanConfig& cfg);

}  // namespace diskmeans
