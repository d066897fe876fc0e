#include "diskmeans/convexity.hpp"

#include <cmath>
#include <stdexcept>

#include "diskmeans/errors.hpp"
#include "diskmeans/numerics.hpp"

namespace diskmeans {

const char* to_string(Classification c) {
  switch (c) {
    case Classification::convex: return "convex";
    case Classification::concave: return "concave";
    case Classification::neither: return "neither";
    case Classification::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

double d_functional(double g, double g1, double g2, double x) {
  const double r = g1 / g;
  return r + x * g2 / g - x * r * r;
}

double loglog_second_derivative(const std::function<double(double)>& g_of_x,
                                double x, const FdOptions& opts) {
  const double t = std::log(x);
  auto F = [&g_of_x](double tt) { return std::log(g_of_x(std::exp(tt))); };
  const double Ft = F(t);
  auto second = [&](double h) {
    return (F(t + h) - 2.0 * Ft + F(t - h)) / (h * h);
  };
  const double h = opts.step;
  double d = second(h);
  if (opts.richardson) d = (4.0 * second(0.5 * h) - d) / 3.0;
  return d;
}

double delta(double lambda, double alpha, double x, double tol) {
  const KernelParams top{lambda, alpha};
  const KernelParams bottom{0.0, alpha};
  const double h = kernel_integral(top, x, tol);
  const KernelDerivs dt = kernel_derivatives(top, x);
  const double f0 = kernel_integral(bottom, x, tol);
  const KernelDerivs db = kernel_derivatives(bottom, x);
  return d_functional(h, dt.h1, dt.h2, x) - d_functional(f0, db.h1, db.h2, x);
}

double delta_dlambda(double lambda, double alpha, double x,
                     const DeltaDlOptions& opts) {
  const KernelParams kp{lambda, alpha};
  const double h = kernel_integral(kp, x, opts.tol);
  const KernelDerivs d = kernel_derivatives(kp, x);
  const double dh = kernel_dlambda(kp, x, opts.tol);
  const double L = std::log(x);
  const double q = h * d.h1 + x * h * d.h2 - 2.0 * x * d.h1 * d.h1;
  const double an = d.h1 / h + (h * L - dh) * q / (h * h * h);
  if (opts.cross_check) {
    double fd;
    if (lambda > 0.0) {
      const double s = std::min(1e-5, 0.5 * lambda);
      fd = (delta(lambda + s, alpha, x, opts.tol) -
            delta(lambda - s, alpha, x, opts.tol)) /
           (2.0 * s);
    } else {
      // delta(0, ., .) vanishes identically, so a one-sided stencil rooted
      // at zero still has second-order error
      const double s = 1e-5;
      fd = (4.0 * delta(s, alpha, x, opts.tol) -
            delta(2.0 * s, alpha, x, opts.tol)) /
           (2.0 * s);
    }
    if (std::abs(an - fd) > 1e-4 * std::max(std::abs(an), std::abs(fd)) + 1e-10) {
      throw consistency_error(
          "delta_dlambda: analytic and finite-difference values disagree");
    }
  }
  return an;
}

double delta_limit_at_one(double lambda, double alpha) {
  if (!(alpha < -3.0)) {
    throw std::domain_error("delta_limit_at_one: requires alpha < -3");
  }
  const double a2 = alpha + 2.0;
  return lambda * (alpha + 1.0) * (lambda + 2.0 + alpha) /
         (a2 * a2 * (alpha + 3.0));
}

double limit_toward_one(const std::function<double(double)>& g_of_x,
                        const std::vector<double>& exps) {
  std::vector<double> us, vs;
  for (int m = 3; m <= 5; ++m) {
    const double u = std::pow(10.0, -m);
    us.push_back(u);
    vs.push_back(g_of_x(1.0 - u));
  }
  return extrapolate_limit(us, vs, exps);
}

double delta_limit_extrapolated(double lambda, double alpha, double tol) {
  const double e = -alpha - 3.0;
  std::vector<double> exps{0.0, 1.0, 2.0};
  if (e > 0.05 && std::abs(e - 1.0) > 0.05 && e < 2.0) exps = {0.0, 1.0, e};
  return limit_toward_one(
      [lambda, alpha, tol](double x) { return delta(lambda, alpha, x, tol); },
      exps);
}

double auto_band(const std::vector<double>& dvals) {
  return 1e-7 * std::max(1.0, median_abs(dvals));
}

double find_sign_change(const std::function<double(double)>& g, double lo,
                        double hi, double xtol) {
  double flo = g(lo);
  double fhi = g(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw bracket_error("find_sign_change: endpoints have the same sign");
  }
  while (hi - lo > xtol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = g(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ConvexityProfile loglog_profile(const std::function<double(double)>& mean_x,
                                const std::vector<double>& grid, double band,
                                const FdOptions& opts) {
  ConvexityProfile prof;
  prof.grid = grid;
  prof.dvals.reserve(grid.size());
  for (double x : grid) {
    prof.dvals.push_back(loglog_second_derivative(mean_x, x, opts));
  }
  prof.band = band >= 0.0 ? band : auto_band(prof.dvals);
  if (grid.empty()) {
    prof.classification = Classification::indeterminate;
    return prof;
  }
  bool all_ge = true;
  bool all_le = true;
  for (double d : prof.dvals) {
    if (d < -prof.band) all_ge = false;
    if (d > prof.band) all_le = false;
  }
  if (all_ge) {
    prof.classification = Classification::convex;
  } else if (all_le) {
    prof.classification = Classification::concave;
  } else {
    prof.classification = Classification::neither;
  }
  auto dval_at = [&](double x) {
    return loglog_second_derivative(mean_x, x, opts);
  };
  int last_sign = 0;
  double last_x = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double d = prof.dvals[i];
    const int s = d > prof.band ? 1 : (d < -prof.band ? -1 : 0);
    if (s == 0) continue;
    if (last_sign != 0 && s != last_sign) {
      prof.sign_changes.push_back(find_sign_change(dval_at, last_x, grid[i]));
    }
    last_sign = s;
    last_x = grid[i];
  }
  return prof;
}

}  // namespace diskmeans
