#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "diskmeans/kernels.hpp"

namespace diskmeans {

// Polynomial coefficients a_0, a_1, ... of f(z) = sum a_k z^k.
using Coefficients = std::vector<std::complex<double>>;

// Horner evaluation of the polynomial at z.
std::complex<double> eval_poly(const Coefficients& c, std::complex<double> z);

// Weighted area mean M_{p,alpha}(f, r): the average of |f|^p over the disk
// |z| < r against the measure (1 - |z|^2)^alpha dA, normalized so the
// constant 1 has mean 1.  Any real alpha is allowed because the weight is
// only ever integrated up to r < 1.
//
// Substituting s = |z|^2 reduces everything to the kernel family on [0, x]
// with x = r^2:
//
//   M_{p,alpha}(f, r) = [ integral_0^x A(s) (1-s)^alpha ds ] / f_0(x),
//
// where A(s) is the circle average of |f|^p at radius sqrt(s).  For a
// monomial z^k this is f_{pk/2}(x) / f_0(x); for p = 2 and a power series
// it is sum |a_k|^2 f_k(x) / f_0(x).

// Monomial mean: f_{pk/2}(r^2) / f_0(r^2).  Requires p > 0, k >= 0.
double monomial_mean(double p, double alpha, int k, double r,
                     double tol = kDefaultTol);

// p = 2 mean of a polynomial via its coefficients.
double series_mean_p2(const Coefficients& c, double alpha, double r,
                      double tol = kDefaultTol);

// Unweighted circle mean at radius r: sum |a_k|^2 r^(2k).  The alpha-free
// counterpart the area mean increases toward as alpha decreases.
double circle_mean_p2(const Coefficients& c, double r);

// General-p mean of an arbitrary analytic function by polar quadrature:
// angular circle means of |f|^p feeding a radial kernel integral.  f only
// needs to be evaluable on |z| <= r.
double quad_mean(const std::function<std::complex<double>(std::complex<double>)>& f,
                 double p, double alpha, double r, double tol = kDefaultTol);

// x-domain forms (x = r^2), used directly by the convexity layer.
double monomial_mean_x(double p, double alpha, int k, double x,
                       double tol = kDefaultTol);
double series_mean_p2_x(const Coefficients& c, double alpha, double x,
                        double tol = kDefaultTol);

// The individual terms h_k(x) = |a_k|^2 f_k(x) / f_0(x) whose sum is the
// p = 2 mean.  Zero coefficients contribute zero entries.
std::vector<double> series_terms_p2_x(const Coefficients& c, double alpha,
                                      double x, double tol = kDefaultTol);

// H, H', H'' for H(x) = sum |a_k|^2 f_k(x) / f_0(x), assembled from the
// closed-form kernel derivatives.
struct MeanDerivs {
  double value;
  double first;
  double second;
};

MeanDerivs series_mean_p2_derivs(const Coefficients& c, double alpha, double x,
                                 double tol = kDefaultTol);

}  // namespace diskmeans
