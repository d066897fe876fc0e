#include "diskmeans/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "diskmeans/errors.hpp"

namespace diskmeans {

namespace {

struct SimpsonAcc {
  KahanSum value;
  double err = 0.0;
};

// One adaptive step: [a,b] with cached endpoint/midpoint values and the
// whole-interval Simpson estimate. Accepts the panel when the two-half
// refinement agrees to 15*tol (the Richardson factor for Simpson) or the
// depth budget is spent; the accepted value includes the Richardson
// correction term.
void simpson_step(const std::function<double(double)>& f, double a, double b,
                  double fa, double fm, double fb, double whole, double tol,
                  int depth, SimpsonAcc& acc) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m);
  double rm = 0.5 * (m + b);
  double flm = f(lm);
  double frm = f(rm);
  double h6 = (b - a) / 12.0;
  double left = h6 * (fa + 4.0 * flm + fm);
  double right = h6 * (fm + 4.0 * frm + fb);
  double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * tol) {
    acc.value.add(left + right + diff / 15.0);
    acc.err += std::abs(diff) / 15.0;
    return;
  }
  simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, acc);
  simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, acc);
}

void integrate_into(const std::function<double(double)>& f, double a, double b,
                    double tol, int max_depth, SimpsonAcc& acc) {
  double m = 0.5 * (a + b);
  double fa = f(a);
  double fm = f(m);
  double fb = f(b);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth, acc);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol, int max_depth) {
  if (!(tol > 0.0)) throw std::domain_error("integrate_adaptive: tol must be positive");
  if (a == b) return 0.0;
  SimpsonAcc acc;
  integrate_into(f, a, b, tol, max_depth, acc);
  if (acc.err > 10.0 * tol) {
    throw accuracy_error("integrate_adaptive: depth budget exhausted",
                         acc.value.value(), acc.err);
  }
  return acc.value.value();
}

double integrate_panels(const std::function<double(double)>& f,
                        const std::vector<double>& pts, double tol,
                        int max_depth) {
  if (pts.size() < 2) throw std::domain_error("integrate_panels: need at least two breakpoints");
  if (!(tol > 0.0)) throw std::domain_error("integrate_panels: tol must be positive");

  // Rough midpoint-rule magnitudes used only to apportion the tolerance.
  std::vector<double> rough(pts.size() - 1);
  double rough_total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double w = pts[i + 1] - pts[i];
    rough[i] = std::abs(f(0.5 * (pts[i] + pts[i + 1]))) * std::abs(w);
    rough_total += rough[i];
  }

  SimpsonAcc acc;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double share = rough_total > 0.0 ? std::max(rough[i] / rough_total, 1e-3)
                                     : 1.0 / static_cast<double>(rough.size());
    integrate_into(f, pts[i], pts[i + 1], tol * share, max_depth, acc);
  }
  if (acc.err > 10.0 * tol) {
    throw accuracy_error("integrate_panels: depth budget exhausted",
                         acc.value.value(), acc.err);
  }
  return acc.value.value();
}

std::vector<double> geometric_breakpoints(double start, double end,
                                          double last_gap) {
  if (!(end > start)) throw std::domain_error("geometric_breakpoints: end must exceed start");
  if (!(last_gap > 0.0)) throw std::domain_error("geometric_breakpoints: last_gap must be positive");
  std::vector<double> pts{start};
  double gap = 0.5 * (end - start);
  while (gap > last_gap) {
    pts.push_back(end - gap);
    gap *= 0.5;
  }
  pts.push_back(end);
  return pts;
}

double periodic_mean(const std::function<double(double)>& f, double tol,
                     int min_nodes, int max_nodes) {
  if (!(tol > 0.0)) throw std::domain_error("periodic_mean: tol must be positive");
  const double two_pi = 6.283185307179586476925286766559;
  int n = std::max(2, min_nodes);
  KahanSum s;
  for (int k = 0; k < n; ++k) s.add(f(two_pi * k / n));
  double mean = s.value() / n;
  while (n < max_nodes) {
    // Refine with the shifted midpoints only; the union is the 2n-node rule.
    KahanSum mid;
    for (int k = 0; k < n; ++k) mid.add(f(two_pi * (k + 0.5) / n));
    double mean2 = 0.5 * (mean + mid.value() / n);
    n *= 2;
    double change = std::abs(mean2 - mean);
    mean = mean2;
    if (change <= tol * std::max(std::abs(mean2), 1e-300)) return mean;
  }
  throw accuracy_error("periodic_mean: node cap reached", mean, tol);
}

double extrapolate_limit(const std::vector<double>& us,
                         const std::vector<double>& vs,
                         const std::vector<double>& exps) {
  std::size_t n = us.size();
  if (n == 0 || vs.size() != n || exps.size() != n) {
    throw std::domain_error("extrapolate_limit: size mismatch");
  }
  if (exps[0] != 0.0) throw std::domain_error("extrapolate_limit: exps[0] must be 0");

  std::vector<std::vector<double>> m(n, std::vector<double>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = std::pow(us[i], exps[j]);
    m[i][n] = vs[i];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    }
    std::swap(m[col], m[piv]);
    if (m[col][col] == 0.0) throw std::domain_error("extrapolate_limit: singular system");
    for (std::size_t r = col + 1; r < n; ++r) {
      double fctr = m[r][col] / m[col][col];
      for (std::size_t c = col; c <= n; ++c) m[r][c] -= fctr * m[col][c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double acc = m[i][n];
    for (std::size_t c = i + 1; c < n; ++c) acc -= m[i][c] * x[c];
    x[i] = acc / m[i][i];
  }
  return x[0];
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2) throw std::domain_error("linspace: need n >= 2");
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  }
  return v;
}

double median_abs(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  std::vector<double> w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = std::abs(v[i]);
  std::size_t mid = w.size() / 2;
  std::nth_element(w.begin(), w.begin() + mid, w.end());
  double hi = w[mid];
  if (w.size() % 2 == 1) return hi;
  std::nth_element(w.begin(), w.begin() + (mid - 1), w.begin() + mid);
  return 0.5 * (w[mid - 1] + hi);
}

}  // namespace diskmeans
