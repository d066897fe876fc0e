#include "diskmeans/means.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "diskmeans/numerics.hpp"

namespace diskmeans {

namespace {

void validate_exponent(double p, int k) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw std::domain_error("mean: p must be finite and positive");
  }
  if (k < 0) throw std::domain_error("mean: monomial degree must be >= 0");
}

std::vector<double> radial_breakpoints(double alpha, double x) {
  std::vector<double> pts{0.0, 0.5 * x};
  if (alpha < 0.0) {
    auto tail = geometric_breakpoints(0.5 * x, x, std::max(0.5 * (1.0 - x), 1e-14));
    pts.insert(pts.end(), tail.begin() + 1, tail.end());
  } else {
    pts.push_back(x);
  }
  return pts;
}

}  // namespace

std::complex<double> eval_poly(const Coefficients& c, std::complex<double> z) {
  std::complex<double> acc{0.0, 0.0};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double monomial_mean_x(double p, double alpha, int k, double x, double tol) {
  validate_exponent(p, k);
  KernelParams top{0.5 * p * static_cast<double>(k), alpha};
  KernelParams bottom{0.0, alpha};
  return kernel_integral(top, x, tol) / kernel_integral(bottom, x, tol);
}

double monomial_mean(double p, double alpha, int k, double r, double tol) {
  return monomial_mean_x(p, alpha, k, r * r, tol);
}

double series_mean_p2_x(const Coefficients& c, double alpha, double x,
                        double tol) {
  const double f0 = kernel_integral(KernelParams{0.0, alpha}, x, tol);
  KahanSum num;
  for (std::size_t k = 0; k < c.size(); ++k) {
    double w = std::norm(c[k]);
    if (w == 0.0) continue;
    num.add(w * kernel_integral(KernelParams{static_cast<double>(k), alpha}, x, tol));
  }
  return num.value() / f0;
}

double series_mean_p2(const Coefficients& c, double alpha, double r,
                      double tol) {
  return series_mean_p2_x(c, alpha, r * r, tol);
}

double circle_mean_p2(const Coefficients& c, double r) {
  KahanSum s;
  double rp = 1.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    s.add(std::norm(c[k]) * rp);
    rp *= r * r;
  }
  return s.value();
}

std::vector<double> series_terms_p2_x(const Coefficients& c, double alpha,
                                      double x, double tol) {
  const double f0 = kernel_integral(KernelParams{0.0, alpha}, x, tol);
  std::vector<double> terms(c.size(), 0.0);
  for (std::size_t k = 0; k < c.size(); ++k) {
    double w = std::norm(c[k]);
    if (w == 0.0) continue;
    terms[k] =
        w * kernel_integral(KernelParams{static_cast<double>(k), alpha}, x, tol) / f0;
  }
  return terms;
}

MeanDerivs series_mean_p2_derivs(const Coefficients& c, double alpha, double x,
                                 double tol) {
  KernelParams base{0.0, alpha};
  const double f0 = kernel_integral(base, x, tol);
  const KernelDerivs d0 = kernel_derivatives(base, x);
  KahanSum v, v1, v2;
  for (std::size_t k = 0; k < c.size(); ++k) {
    double w = std::norm(c[k]);
    if (w == 0.0) continue;
    KernelParams kp{static_cast<double>(k), alpha};
    const double fk = kernel_integral(kp, x, tol);
    const KernelDerivs dk = kernel_derivatives(kp, x);
    const double u = fk / f0;
    const double u1 = (dk.h1 - u * d0.h1) / f0;
    const double u2 = (dk.h2 - 2.0 * u1 * d0.h1 - u * d0.h2) / f0;
    v.add(w * u);
    v1.add(w * u1);
    v2.add(w * u2);
  }
  return MeanDerivs{v.value(), v1.value(), v2.value()};
}

double quad_mean(const std::function<std::complex<double>(std::complex<double>)>& f,
                 double p, double alpha, double r, double tol) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw std::domain_error("quad_mean: p must be finite and positive");
  }
  if (!(tol > 0.0)) throw std::domain_error("quad_mean: tol must be positive");
  const double x = r * r;
  auto circle = [&f, p](double s, double ptol) {
    const double rad = std::sqrt(s);
    return periodic_mean(
        [&f, p, rad](double t) {
          return std::pow(std::norm(f(std::polar(rad, t))), 0.5 * p);
        },
        ptol);
  };
  std::function<double(double)> g = [&circle, alpha, tol](double s) {
    return circle(s, 0.1 * tol) * std::pow(1.0 - s, alpha);
  };
  auto pts = radial_breakpoints(alpha, x);
  double rough = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double mid = 0.5 * (pts[i] + pts[i + 1]);
    rough += circle(mid, 1e-3) * std::pow(1.0 - mid, alpha) * (pts[i + 1] - pts[i]);
  }
  double budget = 0.5 * tol * std::max(rough, 1e-300);
  const double num = integrate_panels(g, pts, budget);
  const double f0 = kernel_integral(KernelParams{0.0, alpha}, x, tol);
  return num / f0;
}

}  // namespace diskmeans
