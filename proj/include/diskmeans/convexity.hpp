#pragma once

#include <functional>
#include <vector>

#include "diskmeans/kernels.hpp"

namespace diskmeans {

// Verdict for a sampled log-log curvature profile.  The first matching rule
// wins: convex when every sample is >= -band, concave when every sample is
// <= band, neither when both signs occur beyond the band.  indeterminate is
// reserved for an empty profile.
enum class Classification { convex, concave, neither, indeterminate };

const char* to_string(Classification c);

struct FdOptions {
  double step = 1e-3;      // base step in t = log x
  bool richardson = true;  // one extrapolation level on the centered stencil
};

// D(g)(x) = g'/g + x g''/g - x (g'/g)^2 from already-computed derivatives.
// x * D(g)(x) equals d^2/dt^2 log g(e^t) at t = log x, so g is log-convex in
// log x exactly where D >= 0.  D is additive over products and quotients.
double d_functional(double g, double g1, double g2, double x);

// d^2/dt^2 log g(e^t) at t = log x by centered finite differences.  g must
// be positive near x.  Noise floor with the default options is around 3e-8.
double loglog_second_derivative(const std::function<double(double)>& g_of_x,
                                double x, const FdOptions& opts = {});

// delta(lambda, alpha, x) = D(f_lambda)(x) - D(f_0)(x), assembled from the
// closed-form kernel derivatives.  Because D is additive, x * delta is the
// log-log curvature of the monomial mean f_lambda(x) / f_0(x); the mean with
// exponents (p, k) corresponds to lambda = p k / 2.  lambda = 0 runs the
// identical arithmetic for both terms and returns exactly zero.
double delta(double lambda, double alpha, double x, double tol = kDefaultTol);

struct DeltaDlOptions {
  double tol = kDefaultTol;
  bool cross_check = true;  // compare against a finite difference in lambda
};

// Partial derivative of delta with respect to lambda,
//
//   d(delta)/d(lambda) = h'/h + (h log x - dh) (h h' + x h h'' - 2 x h'^2) / h^3,
//
// with h = f_lambda(x) and dh its lambda-derivative.  With cross_check on,
// the value is validated against a centered difference of delta in lambda
// and a consistency_error is thrown on disagreement.
double delta_dlambda(double lambda, double alpha, double x,
                     const DeltaDlOptions& opts = {});

// Closed form of lim_{x->1} delta(lambda, alpha, x) for alpha < -3:
// lambda (alpha+1) (lambda+2+alpha) / ((alpha+2)^2 (alpha+3)).
double delta_limit_at_one(double lambda, double alpha);

// Limit of g(x) as x -> 1 estimated from x = 1 - 10^{-m}, m = 3, 4, 5, by
// fitting sum c_i u^{e_i} in u = 1 - x over the given exponents (e_0 = 0;
// the fitted c_0 is returned).
double limit_toward_one(const std::function<double(double)>& g_of_x,
                        const std::vector<double>& exps);

// Extrapolated lim_{x->1} delta.  The expansion of delta in u = 1 - x
// carries a u^{-alpha-3} term, so that exponent joins the basis {1, u}
// whenever it is separated from 0, 1, and 2; otherwise the plain polynomial
// basis {1, u, u^2} is used.
double delta_limit_extrapolated(double lambda, double alpha,
                                double tol = kDefaultTol);

struct ConvexityProfile {
  std::vector<double> grid;          // x values sampled
  std::vector<double> dvals;         // x * D at each grid point
  double band = 0.0;                 // zero-band actually applied
  Classification classification = Classification::indeterminate;
  std::vector<double> sign_changes;  // refined x locations of sign flips
};

// Band used when the caller passes band < 0: 1e-7 * max(1, median |dval|).
double auto_band(const std::vector<double>& dvals);

// Samples x * D(mean)(x) over the grid, classifies the profile against the
// band, and refines each sign flip between consecutive beyond-band samples
// by bisection.
ConvexityProfile loglog_profile(const std::function<double(double)>& mean_x,
                                const std::vector<double>& grid,
                                double band = -1.0, const FdOptions& opts = {});

// Bisection root of g on [lo, hi]; requires a sign change across the
// bracket (bracket_error otherwise), refines until hi - lo <= xtol.
double find_sign_change(const std::function<double(double)>& g, double lo,
                        double hi, double xtol = 1e-10);

}  // namespace diskmeans
