#include "diskmeans/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "diskmeans/errors.hpp"
#include "diskmeans/numerics.hpp"

namespace diskmeans {

namespace {

constexpr long kSeriesCap = 50'000'000;

void validate(const KernelParams& kp, double x) {
  if (!(kp.lambda >= 0.0) || !std::isfinite(kp.lambda) || !std::isfinite(kp.alpha)) {
    throw std::domain_error("kernel: lambda must be finite and >= 0, alpha finite");
  }
  if (!(x >= kDomainFloor && x <= 1.0 - kDomainFloor)) {
    throw std::domain_error("kernel: x must lie in [1e-12, 1 - 1e-12]");
  }
}

bool alpha_is_small_nonneg_integer(double a) {
  return a >= 0.0 && a <= 64.0 && a == std::floor(a);
}

// Terms with index below this can alternate in sign (binomial coefficients of
// a positive alpha); convergence tests start after it.
long settle_index(double a) {
  return a > 0.0 ? static_cast<long>(std::ceil(a)) + 2 : 2;
}

// Panel breakpoints for quadrature over [0, x]: a plain split at x/2 plus,
// when alpha < 0 steepens the integrand toward x, points accumulating
// geometrically at x.
std::vector<double> quad_breakpoints(double a, double x) {
  std::vector<double> pts{0.0, 0.5 * x};
  if (a < 0.0) {
    auto tail = geometric_breakpoints(0.5 * x, x, std::max(0.5 * (1.0 - x), 1e-14));
    pts.insert(pts.end(), tail.begin() + 1, tail.end());
  } else {
    pts.push_back(x);
  }
  return pts;
}

double rough_magnitude(const std::function<double(double)>& f,
                       const std::vector<double>& pts) {
  double rough = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    rough += std::abs(f(0.5 * (pts[i] + pts[i + 1]))) * (pts[i + 1] - pts[i]);
  }
  return rough;
}

double kernel_dlambda_series(const KernelParams& kp, double x) {
  const double lam = kp.lambda;
  const double a = kp.alpha;
  const double L = std::log(x);
  KahanSum s;
  double b = 1.0;
  double xp = std::pow(x, lam + 1.0);
  const long settle = settle_index(a);
  for (long j = 0;; ++j) {
    double m = lam + static_cast<double>(j) + 1.0;
    double term = b * xp * (L * m - 1.0) / (m * m);
    s.add(term);
    // Remaining tail is about |term| x / (1-x), so fold the geometric
    // factor into the stop rule; otherwise near x = 1 the truncation error
    // is 1/(1-x) times the last term.
    if (j >= settle &&
        std::abs(term) * x <= std::abs(s.value()) * 1e-17 * (1.0 - x)) {
      break;
    }
    if (j > kSeriesCap) {
      throw accuracy_error("kernel_dlambda: series cap reached", s.value(),
                           std::abs(term));
    }
    b *= (static_cast<double>(j) - a) / (static_cast<double>(j) + 1.0);
    xp *= x;
  }
  return s.value();
}

double series_at(const KernelParams& kp, double x) {
  const double lam = kp.lambda;
  const double a = kp.alpha;
  KahanSum s;
  double b = 1.0;  // (-1)^j C(alpha, j); all >= 0 once alpha <= 0
  double xp = std::pow(x, lam + 1.0);
  const long settle = settle_index(a);
  for (long j = 0;; ++j) {
    double term = b * xp / (lam + static_cast<double>(j) + 1.0);
    s.add(term);
    if (j >= settle &&
        std::abs(term) * x <= std::abs(s.value()) * 1e-17 * (1.0 - x)) {
      break;
    }
    if (j > kSeriesCap) {
      throw accuracy_error("kernel_integral: series cap reached", s.value(),
                           std::abs(term));
    }
    b *= (static_cast<double>(j) - a) / (static_cast<double>(j) + 1.0);
    xp *= x;
  }
  return s.value();
}

// The direct series needs ~1/(1-x) recurrence steps, and the rounding drift
// of the running product grows with the step count; close to x = 1 that
// drift dominates the result.  Integrate over (x0, x] instead by expanding
// t^lambda around t = 1, which takes a handful of terms, each evaluated
// from scratch:
//   integral = sum_j (-1)^j C(lambda, j) (u0^q - u^q) / q,  q = alpha+j+1,
// with u0 = 1-x0, u = 1-x, and the q = 0 term read as log(u0/u).
constexpr double kBoundaryTailSwitch = 0.995;
constexpr double kBoundaryTailAnchor = 0.99;

double boundary_tail(const KernelParams& kp, double x0, double x) {
  const double u0 = 1.0 - x0;
  const double u = 1.0 - x;
  const double L = std::log(u / u0);
  KahanSum s;
  double d = 1.0;  // (-1)^j C(lambda, j)
  for (long j = 0;; ++j) {
    const double q = kp.alpha + static_cast<double>(j) + 1.0;
    const double piece =
        q == 0.0 ? -L : -std::pow(u0, q) * std::expm1(q * L) / q;
    s.add(d * piece);
    if (q >= 1.0 && std::abs(d * piece) <= std::abs(s.value()) * 1e-18) break;
    if (j > 100000) {
      throw accuracy_error("kernel_integral: boundary tail did not settle",
                           s.value(), std::abs(d * piece));
    }
    d *= (static_cast<double>(j) - kp.lambda) / (static_cast<double>(j) + 1.0);
  }
  return s.value();
}

}  // namespace

double kernel_integral_series(const KernelParams& kp, double x) {
  validate(kp, x);
  if (kp.alpha < 0.0 && x > kBoundaryTailSwitch) {
    return series_at(kp, kBoundaryTailAnchor) +
           boundary_tail(kp, kBoundaryTailAnchor, x);
  }
  return series_at(kp, x);
}

double kernel_integral_quad(const KernelParams& kp, double x, double tol) {
  validate(kp, x);
  if (!(tol > 0.0)) throw std::domain_error("kernel_integral_quad: tol must be positive");
  const double lam = kp.lambda;
  const double a = kp.alpha;
  std::function<double(double)> f = [lam, a](double t) {
    return std::pow(t, lam) * std::pow(1.0 - t, a);
  };
  auto pts = quad_breakpoints(a, x);
  const double rough = rough_magnitude(f, pts);
  double budget = 0.5 * tol * std::max(rough, 1e-300);
  return integrate_panels(f, pts, budget);
}

bool kernel_closed_form(const KernelParams& kp, double x, double* value) {
  const double lam = kp.lambda;
  const double a = kp.alpha;
  if (a == 0.0) {
    *value = std::pow(x, lam + 1.0) / (lam + 1.0);
    return true;
  }
  if (lam == 0.0) {
    if (a == -1.0) {
      *value = -std::log1p(-x);
    } else {
      // (1 - (1-x)^(a+1)) / (a+1).  The expm1 form protects the a near -1
      // cancellation; outside it the direct power is a fraction of an ulp
      // while the expm1 route inherits the absolute error of its argument.
      const double y = (a + 1.0) * std::log1p(-x);
      if (std::abs(y) < 0.5) {
        *value = -std::expm1(y) / (a + 1.0);
      } else {
        *value = (1.0 - std::pow(1.0 - x, a + 1.0)) / (a + 1.0);
      }
    }
    return true;
  }
  if (lam > 0.0 && lam == -(a + 2.0)) {
    // (1-x)/x rather than 1/x - 1: the subtraction sheds almost all
    // precision once x is close to 1.
    *value = -std::pow((1.0 - x) / x, a + 1.0) / (a + 1.0);
    return true;
  }
  return false;
}

double kernel_integral(const KernelParams& kp, double x, double tol,
                       const EvalOptions& opts) {
  validate(kp, x);
  if (!(tol > 0.0)) throw std::domain_error("kernel_integral: tol must be positive");
  double closed = 0.0;
  bool have_closed = kernel_closed_form(kp, x, &closed);
  double primary;
  if (have_closed) {
    primary = closed;
  } else if (x <= opts.series_switch || kp.alpha < 0.0 ||
             alpha_is_small_nonneg_integer(kp.alpha)) {
    primary = kernel_integral_series(kp, x);
  } else {
    primary = kernel_integral_quad(kp, x, tol);
  }
  if (opts.cross_check) {
    double s = kernel_integral_series(kp, x);
    double q = kernel_integral_quad(kp, x, tol);
    if (std::abs(s - q) > 10.0 * tol * std::max(1.0, std::abs(primary))) {
      throw consistency_error(
          "kernel_integral: series and quadrature disagree beyond 10*tol");
    }
  }
  return primary;
}

KernelDerivs kernel_derivatives(const KernelParams& kp, double x) {
  validate(kp, x);
  const double lam = kp.lambda;
  const double a = kp.alpha;
  KernelDerivs d;
  d.h1 = std::pow(x, lam) * std::pow(1.0 - x, a);
  d.h2 = (lam - lam * x - a * x) * std::pow(x, lam - 1.0) *
         std::pow(1.0 - x, a - 1.0);
  const double c2 = lam * lam + 2.0 * lam * a + a * a - lam - a;
  const double c1 = 2.0 * lam - 2.0 * lam * lam - 2.0 * lam * a;
  const double c0 = lam * lam - lam;
  d.h3 = std::pow(x, lam - 2.0) * std::pow(1.0 - x, a - 2.0) *
         ((c2 * x + c1) * x + c0);
  return d;
}

double kernel_dlambda_quad(const KernelParams& kp, double x, double tol) {
  validate(kp, x);
  if (!(tol > 0.0)) throw std::domain_error("kernel_dlambda_quad: tol must be positive");
  const double lam = kp.lambda;
  const double a = kp.alpha;
  std::function<double(double)> f = [lam, a](double t) {
    return std::pow(t, lam) * std::pow(1.0 - t, a) * std::log(t);
  };
  // The log factor needs resolution toward t = 0 as well; panels double away
  // from a negligible floor (the dropped piece below it is O(1e-15)).
  std::vector<double> pts;
  for (double g = x * 0x1p-54; g < 0.5 * x; g *= 2.0) pts.push_back(g);
  pts.push_back(0.5 * x);
  if (a < 0.0) {
    auto tail = geometric_breakpoints(0.5 * x, x, std::max(0.5 * (1.0 - x), 1e-14));
    pts.insert(pts.end(), tail.begin() + 1, tail.end());
  } else {
    pts.push_back(x);
  }
  const double rough = rough_magnitude(f, pts);
  double budget = 0.5 * tol * std::max(rough, 1e-300);
  return integrate_panels(f, pts, budget);
}

double kernel_dlambda(const KernelParams& kp, double x, double tol,
                      const EvalOptions& opts) {
  validate(kp, x);
  if (!(tol > 0.0)) throw std::domain_error("kernel_dlambda: tol must be positive");
  double primary;
  if (x <= opts.series_switch || kp.alpha < 0.0 ||
      alpha_is_small_nonneg_integer(kp.alpha)) {
    primary = kernel_dlambda_series(kp, x);
  } else {
    primary = kernel_dlambda_quad(kp, x, tol);
  }
  if (opts.cross_check) {
    double s = kernel_dlambda_series(kp, x);
    double q = kernel_dlambda_quad(kp, x, tol);
    if (std::abs(s - q) > 10.0 * tol * std::max(1.0, std::abs(primary))) {
      throw consistency_error(
          "kernel_dlambda: series and quadrature disagree beyond 10*tol");
    }
  }
  return primary;
}

KernelBundle kernel_bundle(const KernelParams& kp, double x, double tol) {
  KernelBundle b;
  b.x = x;
  b.h = kernel_integral(kp, x, tol);
  KernelDerivs d = kernel_derivatives(kp, x);
  b.h1 = d.h1;
  b.h2 = d.h2;
  b.h3 = d.h3;
  b.dh_dlambda = kernel_dlambda(kp, x, tol);
  return b;
}

}  // namespace diskmeans
