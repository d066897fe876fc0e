#pragma once

namespace diskmeans {

inline constexpr double kDefaultTol = 1e-10;

// Admissible evaluation range is [kDomainFloor, 1 - kDomainFloor].
inline constexpr double kDomainFloor = 1e-12;

inline constexpr double kDefaultSeriesSwitch = 0.9;

// Parameters of the radial kernel integral
//
//   f_lambda(x) = integral_0^x t^lambda (1-t)^alpha dt,
//
// an unnormalized incomplete beta integral with a = lambda + 1, b = alpha + 1
// in which alpha may be <= -1 (the integral then diverges as x -> 1).
// lambda is the half-power p*k/2 coming from |z^k|^p averaged over circles;
// alpha weights the boundary.
struct KernelParams {
  double lambda = 0.0;  // >= 0
  double alpha = 0.0;   // any real
};

// First three x-derivatives of f_lambda:
//   h1 = x^lambda (1-x)^alpha
//   h2 = (lambda - lambda*x - alpha*x) x^(lambda-1) (1-x)^(alpha-1)
//   h3 = x^(lambda-2) (1-x)^(alpha-2) * (c2 x^2 + c1 x + c0)
// with c2 = lambda^2 + 2 lambda alpha + alpha^2 - lambda - alpha,
//      c1 = 2 lambda - 2 lambda^2 - 2 lambda alpha, c0 = lambda^2 - lambda.
struct KernelDerivs {
  double h1 = 0.0;
  double h2 = 0.0;
  double h3 = 0.0;
};

struct KernelBundle {
  double x = 0.0;
  double h = 0.0;            // f_lambda(x), positive
  double h1 = 0.0;           // positive
  double h2 = 0.0;
  double h3 = 0.0;
  double dh_dlambda = 0.0;   // negative
};

struct EvalOptions {
  // Below the switch the binomial series is used; above it, adaptive
  // quadrature -- except that the series is kept at every x when its terms
  // are single-signed (alpha < 0) or when it terminates (integer alpha >= 0),
  // since it is then the more accurate path.
  double series_switch = kDefaultSeriesSwitch;
  // Evaluate both paths and require agreement within 10*tol.
  bool cross_check = false;
};

// f_lambda(x). Closed forms are used when available (alpha = 0; lambda = 0;
// lambda = -(alpha+2) > 0), otherwise the series/quadrature dispatch above.
// The series path always runs to machine precision; tol bounds the
// quadrature path (absolute-or-relative, whichever is looser).
double kernel_integral(const KernelParams& kp, double x,
                       double tol = kDefaultTol, const EvalOptions& opts = {});

// Pure binomial-series evaluation (no closed forms). Converges for x < 1;
// all terms share one sign when alpha <= 0.
double kernel_integral_series(const KernelParams& kp, double x);

// Pure adaptive-quadrature evaluation (no closed forms). Splits the range at
// points accumulating geometrically toward x when alpha < 0 steepens the
// integrand there.
double kernel_integral_quad(const KernelParams& kp, double x,
                            double tol = kDefaultTol);

// Closed form if one applies; returns false otherwise.
bool kernel_closed_form(const KernelParams& kp, double x, double* value);

KernelDerivs kernel_derivatives(const KernelParams& kp, double x);

// d f_lambda(x) / d lambda = integral_0^x t^lambda (1-t)^alpha log t dt < 0.
double kernel_dlambda(const KernelParams& kp, double x,
                      double tol = kDefaultTol, const EvalOptions& opts = {});

// Quadrature-only evaluation of the lambda-derivative (oracle path).
double kernel_dlambda_quad(const KernelParams& kp, double x,
                           double tol = kDefaultTol);

// Everything at once: value, three x-derivatives, lambda-derivative.
KernelBundle kernel_bundle(const KernelParams& kp, double x,
                           double tol = kDefaultTol);

}  // namespace diskmeans
