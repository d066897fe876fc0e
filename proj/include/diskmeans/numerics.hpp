#pragma once

#include <functional>
#include <vector>

namespace diskmeans {

// Compensated (Kahan) accumulator. Keeps long sums of like-signed terms at
// a few ulps of relative error independent of the term count.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double term) noexcept {
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }

  double value() const noexcept { return sum; }
};

// Adaptive Simpson integration of f over [a, b] to absolute tolerance tol.
// Throws accuracy_error if the accumulated error estimate exceeds 10*tol
// after the depth budget is spent.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol, int max_depth = 48);

// Adaptive Simpson over consecutive panels [pts[0], pts[1]], [pts[1], pts[2]], ...
// The absolute tolerance is distributed over panels in proportion to a rough
// per-panel magnitude estimate.
double integrate_panels(const std::function<double(double)>& f,
                        const std::vector<double>& pts, double tol,
                        int max_depth = 48);

// Panel breakpoints from `start` to `end` whose gaps to `end` halve until
// they reach `last_gap`: start, end-g, end-g/2, ..., end. Used to resolve
// integrands that steepen toward `end`.
std::vector<double> geometric_breakpoints(double start, double end,
                                          double last_gap);

// Mean value of a 2*pi periodic function by the node-doubling trapezoid
// rule (spectrally accurate for smooth integrands). Stops when two
// consecutive doublings agree to tol (absolute-or-relative, whichever is
// looser); throws accuracy_error at the node cap.
double periodic_mean(const std::function<double(double)>& f, double tol,
                     int min_nodes = 16, int max_nodes = 1 << 16);

// Value at u = 0 of the model sum_j c_j u^exps[j] fitted through the sample
// points (us[i], vs[i]). exps[0] must be 0; sizes must match. Solved by
// Gaussian elimination with partial pivoting.
double extrapolate_limit(const std::vector<double>& us,
                         const std::vector<double>& vs,
                         const std::vector<double>& exps);

// n evenly spaced values from lo to hi inclusive (n >= 2).
std::vector<double> linspace(double lo, double hi, int n);

// Median of |v| entries; 0 for an empty input.
double median_abs(const std::vector<double>& v);

}  // namespace diskmeans
