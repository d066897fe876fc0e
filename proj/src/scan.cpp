#include "diskmeans/scan.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <utility>

#include "diskmeans/convexity.hpp"
#include "diskmeans/means.hpp"

namespace diskmeans {

std::vector<double> default_scan_grid() {
  std::vector<double> grid;
  grid.reserve(49);
  for (int i = 1; i <= 49; ++i) {
    const double r = 0.02 * i;
    grid.push_back(r * r);
  }
  return grid;
}

namespace {

template <class T>
std::vector<T> sorted_unique(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

std::vector<ScanRecord> run_scan(const ScanConfig& cfg) {
  const std::vector<double> grid = cfg.grid.empty() ? default_scan_grid() : cfg.grid;
  const std::vector<double> ps = sorted_unique(cfg.ps);
  const std::vector<double> alphas = sorted_unique(cfg.alphas);
  std::vector<int> subjects = sorted_unique(cfg.ks);
  if (!cfg.coeffs.empty()) subjects.insert(subjects.begin(), -1);

  std::vector<ScanRecord> out;
  out.reserve(ps.size() * alphas.size() * subjects.size());
  for (double p : ps) {
    for (double alpha : alphas) {
      for (int k : subjects) {
        std::function<double(double)> mean_x;
        if (k >= 0) {
          mean_x = [p, alpha, k, &cfg](double x) {
            return monomial_mean_x(p, alpha, k, x, cfg.tol);
          };
        } else if (p == 2.0) {
          mean_x = [alpha, &cfg](double x) {
            return series_mean_p2_x(cfg.coeffs, alpha, x, cfg.tol);
          };
        } else {
          mean_x = [p, alpha, &cfg](double x) {
            auto f = [&cfg](std::complex<double> z) { return eval_poly(cfg.coeffs, z); };
            return quad_mean(f, p, alpha, std::sqrt(x), cfg.tol);
          };
        }

        const ConvexityProfile prof = loglog_profile(mean_x, grid, cfg.band);
        ScanRecord rec;
        rec.p = p;
        rec.alpha = alpha;
        rec.k = k;
        rec.classification = prof.classification;
        if (!prof.dvals.empty()) {
          const auto lo = std::min_element(prof.dvals.begin(), prof.dvals.end());
          rec.min_d = *lo;
          rec.witness_x = prof.grid[static_cast<std::size_t>(lo - prof.dvals.begin())];
          rec.max_d = *std::max_element(prof.dvals.begin(), prof.dvals.end());
        }
        out.push_back(std::move(rec));
      }
    }
  }
  return out;
}

}  // namespace diskmeans
