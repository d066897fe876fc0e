#pragma once

#include <string>
#include <vector>

#include "diskmeans/kernels.hpp"

namespace diskmeans {

// Internals of the convexity argument, exposed as runnable checks.  Each
// quantity below is a stepping stone: its sign or limit in the right
// (lambda, alpha) regime is what forces delta(lambda, alpha, x) >= 0, and
// verify_claims() re-tests every step numerically.

// e2(lambda, alpha, x) =
//   -(lambda+1)^2 + 2 (lambda^2 + 2 lambda + 1 + lambda alpha) x
//   - (lambda+1+alpha)^2 x^2.
// Negative at x = 0, equals -alpha (2 + alpha) at x = 1, and increases
// across [0, 1] when alpha in [-2, 0) and lambda > 0.
double e2(double lambda, double alpha, double x);

// d1 = h log x - dh/dlambda with h = f_lambda(x); nonnegative for
// lambda > 0 (enforced), since the lambda-derivative weights the integrand
// by log t <= log x.
double d1(double lambda, double alpha, double x, double tol = kDefaultTol);

// d2 = h - 2 x^{lambda+1} (1-x)^{alpha+1} / (lambda + 1 - (lambda+1+alpha) x).
// Throws regime_error when the denominator is not positive.  Its sign
// equals the sign of Q = h h' + x h h'' - 2 x h'^2, which is the
// denominator of the bound below.
double d2(double lambda, double alpha, double x, double tol = kDefaultTol);

// delta_small = -h^2 h' / Q - h log x + dh/dlambda, the quantity whose
// positivity transfers d1 >= 0 into delta >= 0.  Requires Q < 0
// (equivalently d2 < 0); throws regime_error otherwise.
double delta_small(double lambda, double alpha, double x,
                   double tol = kDefaultTol);

// The polynomial-weighted combination
//   delta1 = P(x) h + x^{lambda+1} (1-x)^{alpha+1} (lambda+1 - (lambda+1+alpha) x),
//   P(x) = -(lambda+1)^2 + (2 lambda^2 + 4 lambda + 2 + 2 lambda alpha + alpha) x
//          - (lambda+1+alpha)^2 x^2,
// together with its first three x-derivatives in closed form.  third is
// positive on (0, 1) whenever lambda > 0 and alpha < 0, which cascades back
// through second and first to delta1 > 0 where d2 < 0.
struct Delta1Family {
  double value;
  double first;
  double second;
  double third;
};

Delta1Family delta1_family(double lambda, double alpha, double x,
                           double tol = kDefaultTol);

// delta3 = 1 - (1 + x + alpha x) (1-x)^{alpha+1}, the lambda-free positivity
// certificate for alpha in [-3, -2); its derivative is
// (alpha+1) (alpha+2) x (1-x)^alpha.
double delta3(double alpha, double x);
double delta3_prime(double alpha, double x);

// Decomposition of delta for alpha < -3 (enforced), conditioned to stay
// accurate near x = 1 where delta itself cancels catastrophically.  With
// u = 1 - x and rr = h'/h - f_0'/f_0:
//   delta1 = rr - x rr^2,
//   t1 = [lambda x^{lambda-1} f_0 u + alpha (h - x^lambda f_0)] / u^{2 alpha + 4},
//   t2 = [(alpha+2) h - (lambda u + (alpha+2) x) x^{lambda-1} f_0] / u^{alpha+3},
//   delta2 = u^{3 (alpha+1)} (t1 + t2) / ((alpha+1) h f_0^2),
// and delta = delta1 + x delta2 identically.
struct DeltaSplit {
  double delta1;
  double delta2;
  double t1;
  double t2;
};

DeltaSplit delta_split(double lambda, double alpha, double x,
                       double tol = kDefaultTol);

// Decomposition of delta for alpha > 0 (enforced):
//   vanishing = (1-x) (x^lambda / h - 1/f_0)
//               - x (1-x)^{alpha+1} (x^{2 lambda} / h^2 - 1/f_0^2),
//   bracket   = (lambda - lambda x - alpha x) x^{lambda-1} f_0 + alpha h,
//   driving   = x bracket / (h f_0),
// with delta = (1-x)^{alpha-1} (vanishing + driving).  As x -> 1 the
// vanishing part dies while bracket tends to the negative constant
// -alpha * integral_0^1 (1 - t^lambda) (1-t)^alpha dt, which is what drags
// delta below zero near the boundary.
struct DeltaSplitPos {
  double vanishing;
  double driving;
  double bracket;
};

DeltaSplitPos delta_split_pos(double lambda, double alpha, double x,
                              double tol = kDefaultTol);

enum class ClaimStatus { passed, failed, skipped, inconclusive };

const char* to_string(ClaimStatus s);

// Result of one named claim checked at fixed (lambda, alpha) over a grid of
// x values.  worst_violation is a signed margin: for lower bounds it is the
// minimum value seen, for upper bounds the negated maximum, for identities
// and limits the negated absolute error, so negative always means trouble
// for bound claims.  witness_x is the x that realizes the margin (or the
// located feature for existence claims); NaN when there is none.
struct DiagnosticReport {
  std::string claim_id;
  double lambda = 0.0;
  double alpha = 0.0;
  ClaimStatus status = ClaimStatus::skipped;
  double worst_violation = 0.0;
  double witness_x = 0.0;
  std::string detail;
};

// Runs every claim in the registry at (lambda, alpha) over the grid; claims
// whose regime does not cover (lambda, alpha) report skipped.  Reports come
// back sorted by claim_id.  tol is the identity-check tolerance; sign claims
// carry their own slacks.
std::vector<DiagnosticReport> verify_claims(double lambda, double alpha,
                                            const std::vector<double>& grid,
                                            double tol = 1e-9);

}  // namespace diskmeans
