#include "diskmeans/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "diskmeans/convexity.hpp"
#include "diskmeans/errors.hpp"
#include "diskmeans/numerics.hpp"

namespace diskmeans {

double e2(double lambda, double alpha, double x) {
  const double l1 = lambda + 1.0;
  const double c = lambda + 1.0 + alpha;
  return -l1 * l1 +
         2.0 * (lambda * lambda + 2.0 * lambda + 1.0 + lambda * alpha) * x -
         c * c * x * x;
}

double d1(double lambda, double alpha, double x, double tol) {
  if (!(lambda > 0.0)) throw std::domain_error("d1: requires lambda > 0");
  const KernelParams kp{lambda, alpha};
  return kernel_integral(kp, x, tol) * std::log(x) - kernel_dlambda(kp, x, tol);
}

double d2(double lambda, double alpha, double x, double tol) {
  const double b = lambda + 1.0 - (lambda + 1.0 + alpha) * x;
  if (!(b > 0.0)) {
    throw regime_error("d2: lambda+1 - (lambda+1+alpha) x must be positive");
  }
  const KernelParams kp{lambda, alpha};
  const double h = kernel_integral(kp, x, tol);
  return h -
         2.0 * std::pow(x, lambda + 1.0) * std::pow(1.0 - x, alpha + 1.0) / b;
}

double delta_small(double lambda, double alpha, double x, double tol) {
  const KernelParams kp{lambda, alpha};
  const double h = kernel_integral(kp, x, tol);
  const KernelDerivs d = kernel_derivatives(kp, x);
  const double q = h * d.h1 + x * h * d.h2 - 2.0 * x * d.h1 * d.h1;
  if (!(q < 0.0)) {
    throw regime_error("delta_small: requires h h' + x h h'' - 2 x h'^2 < 0");
  }
  const double dh = kernel_dlambda(kp, x, tol);
  return -h * h * d.h1 / q - h * std::log(x) + dh;
}

Delta1Family delta1_family(double lambda, double alpha, double x, double tol) {
  const KernelParams kp{lambda, alpha};
  const double h = kernel_integral(kp, x, tol);
  const double l1 = lambda + 1.0;
  const double c = lambda + 1.0 + alpha;
  const double m = 2.0 * lambda * lambda + 4.0 * lambda + 2.0 +
                   2.0 * lambda * alpha + alpha;
  const double pw = std::pow(x, lambda + 1.0) * std::pow(1.0 - x, alpha + 1.0);
  const double hp = std::pow(x, lambda) * std::pow(1.0 - x, alpha);
  Delta1Family f;
  f.value = (-l1 * l1 + (m - c * c * x) * x) * h + pw * (l1 - c * x);
  f.first = (m - 2.0 * c * c * x) * h - 2.0 * c * pw;
  f.second = -2.0 * c * c * h + (-alpha + 2.0 * c * x) * hp;
  f.third = -alpha * (lambda + (lambda + 2.0 + alpha) * x) *
            std::pow(x, lambda - 1.0) * std::pow(1.0 - x, alpha - 1.0);
  return f;
}

double delta3(double alpha, double x) {
  return 1.0 - (1.0 + x + alpha * x) * std::pow(1.0 - x, alpha + 1.0);
}

double delta3_prime(double alpha, double x) {
  return (alpha + 1.0) * (alpha + 2.0) * x * std::pow(1.0 - x, alpha);
}

DeltaSplit delta_split(double lambda, double alpha, double x, double tol) {
  if (!(alpha < -3.0)) {
    throw std::domain_error("delta_split: requires alpha < -3");
  }
  const double u = 1.0 - x;
  const double h = kernel_integral(KernelParams{lambda, alpha}, x, tol);
  const double f0 = kernel_integral(KernelParams{0.0, alpha}, x, tol);
  const double hp = std::pow(x, lambda) * std::pow(u, alpha);
  const double f0p = std::pow(u, alpha);
  const double rr = hp / h - f0p / f0;
  const double xl1 = std::pow(x, lambda - 1.0);
  DeltaSplit s;
  s.delta1 = rr - x * rr * rr;
  s.t1 = (lambda * xl1 * f0 * u + alpha * (h - x * xl1 * f0)) /
         std::pow(u, 2.0 * alpha + 4.0);
  s.t2 = ((alpha + 2.0) * h - (lambda * u + (alpha + 2.0) * x) * xl1 * f0) /
         std::pow(u, alpha + 3.0);
  s.delta2 = std::pow(u, 3.0 * (alpha + 1.0)) * (s.t1 + s.t2) /
             ((alpha + 1.0) * h * f0 * f0);
  return s;
}

DeltaSplitPos delta_split_pos(double lambda, double alpha, double x,
                              double tol) {
  if (!(alpha > 0.0)) {
    throw std::domain_error("delta_split_pos: requires alpha > 0");
  }
  const double u = 1.0 - x;
  const double h = kernel_integral(KernelParams{lambda, alpha}, x, tol);
  const double f0 = kernel_integral(KernelParams{0.0, alpha}, x, tol);
  const double xl = std::pow(x, lambda);
  DeltaSplitPos s;
  s.vanishing = u * (xl / h - 1.0 / f0) -
                x * std::pow(u, alpha + 1.0) *
                    (xl * xl / (h * h) - 1.0 / (f0 * f0));
  s.bracket = (lambda - lambda * x - alpha * x) * std::pow(x, lambda - 1.0) * f0 +
              alpha * h;
  s.driving = x * s.bracket / (h * f0);
  return s;
}

const char* to_string(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::passed: return "passed";
    case ClaimStatus::failed: return "failed";
    case ClaimStatus::skipped: return "skipped";
    case ClaimStatus::inconclusive: return "inconclusive";
  }
  return "failed";
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

struct Margin {
  double worst = std::numeric_limits<double>::infinity();
  double witness = kNaN;
  void note(double m, double x) {
    if (m < worst) {
      worst = m;
      witness = x;
    }
  }
  bool empty() const { return !std::isfinite(witness) && worst > 0.0; }
};

DiagnosticReport base_report(const char* id, double lambda, double alpha) {
  DiagnosticReport r;
  r.claim_id = id;
  r.lambda = lambda;
  r.alpha = alpha;
  r.witness_x = kNaN;
  return r;
}

DiagnosticReport skip(const char* id, double lambda, double alpha,
                      const std::string& why) {
  DiagnosticReport r = base_report(id, lambda, alpha);
  r.status = ClaimStatus::skipped;
  r.detail = why;
  return r;
}

// Runs body() and converts numeric-layer exceptions into a failed report.
template <class F>
DiagnosticReport guarded(const char* id, double lambda, double alpha, F body) {
  DiagnosticReport r = base_report(id, lambda, alpha);
  try {
    body(r);
  } catch (const regime_error& e) {
    r.status = ClaimStatus::failed;
    r.detail = e.what();
  } catch (const consistency_error& e) {
    r.status = ClaimStatus::failed;
    r.detail = e.what();
  } catch (const accuracy_error& e) {
    r.status = ClaimStatus::failed;
    r.detail = e.what();
  }
  return r;
}

bool core_regime(double lambda, double alpha) {
  return lambda > 0.0 && alpha >= -2.0 && alpha < 0.0;
}

bool ext_regime(double lambda, double alpha) {
  return alpha >= -3.0 && alpha < -2.0 && lambda > -(alpha + 2.0);
}

double reference_pos_bracket_limit(double lambda, double alpha) {
  std::function<double(double)> f = [lambda, alpha](double t) {
    return (1.0 - std::pow(t, lambda)) * std::pow(1.0 - t, alpha);
  };
  std::vector<double> pts{0.0, 0.5};
  auto tail = geometric_breakpoints(0.5, 1.0, 1e-12);
  pts.insert(pts.end(), tail.begin() + 1, tail.end());
  return -alpha * integrate_panels(f, pts, 1e-12);
}

}  // namespace

std::vector<DiagnosticReport> verify_claims(double lambda, double alpha,
                                            const std::vector<double>& grid,
                                            double tol) {
  if (!(lambda >= 0.0)) {
    throw std::domain_error("verify_claims: lambda must be >= 0");
  }
  if (grid.empty()) throw std::domain_error("verify_claims: empty grid");
  for (double x : grid) {
    if (!(x >= kDomainFloor && x <= 1.0 - kDomainFloor)) {
      throw std::domain_error("verify_claims: grid x outside [1e-12, 1-1e-12]");
    }
  }
  std::vector<DiagnosticReport> out;

  // delta_zero: delta(0, alpha, x) vanishes identically.
  if (lambda == 0.0) {
    out.push_back(guarded("delta_zero", lambda, alpha, [&](DiagnosticReport& r) {
      Margin m;
      for (double x : grid) m.note(-std::abs(delta(0.0, alpha, x)), x);
      r.worst_violation = m.worst;
      r.witness_x = m.witness;
      r.status = -m.worst <= 1e-12 ? ClaimStatus::passed : ClaimStatus::failed;
      r.detail = "max |delta(0, alpha, x)| = " + fmt(-m.worst);
    }));
  } else {
    out.push_back(skip("delta_zero", lambda, alpha, "requires lambda == 0"));
  }

  // d1_nonneg: h log x - dh/dlambda >= 0 for lambda > 0.
  if (lambda > 0.0) {
    out.push_back(guarded("d1_nonneg", lambda, alpha, [&](DiagnosticReport& r) {
      Margin m;
      for (double x : grid) m.note(d1(lambda, alpha, x), x);
      r.worst_violation = m.worst;
      r.witness_x = m.witness;
      r.status = m.worst >= -1e-10 ? ClaimStatus::passed : ClaimStatus::failed;
      r.detail = "min d1 = " + fmt(m.worst);
    }));
  } else {
    out.push_back(skip("d1_nonneg", lambda, alpha, "requires lambda > 0"));
  }

  // e2_sign_structure: negative at 0, nonnegative at 1, increasing between.
  if (core_regime(lambda, alpha)) {
    out.push_back(
        guarded("e2_sign_structure", lambda, alpha, [&](DiagnosticReport& r) {
          Margin m;
          m.note(-e2(lambda, alpha, 0.0), 0.0);
          m.note(e2(lambda, alpha, 1.0), 1.0);
          for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            m.note(e2(lambda, alpha, grid[i + 1]) - e2(lambda, alpha, grid[i]),
                   grid[i]);
          }
          r.worst_violation = m.worst;
          r.witness_x = m.witness;
          r.status =
              m.worst >= -1e-10 ? ClaimStatus::passed : ClaimStatus::failed;
          r.detail = "e2(0) = " + fmt(e2(lambda, alpha, 0.0)) +
                     ", e2(1) = " + fmt(e2(lambda, alpha, 1.0));
        }));
  } else {
    out.push_back(skip("e2_sign_structure", lambda, alpha,
                       "requires lambda > 0 and alpha in [-2, 0)"));
  }

  // d2_sign_change: d2 flips sign once on (0, 1) in the core regime.
  if (core_regime(lambda, alpha)) {
    out.push_back(
        guarded("d2_sign_change", lambda, alpha, [&](DiagnosticReport& r) {
          auto g = [&](double x) { return d2(lambda, alpha, x, tol); };
          double prev = g(grid.front());
          for (std::size_t i = 1; i < grid.size(); ++i) {
            const double cur = g(grid[i]);
            if ((prev < 0.0) != (cur < 0.0)) {
              r.witness_x = find_sign_change(g, grid[i - 1], grid[i]);
              r.worst_violation = 0.0;
              r.status = ClaimStatus::passed;
              r.detail = "d2 changes sign near x = " + fmt(r.witness_x);
              return;
            }
            prev = cur;
          }
          r.status = ClaimStatus::inconclusive;
          r.worst_violation = 0.0;
          r.detail = "no sign change of d2 on the sampled grid";
        }));
  } else {
    out.push_back(skip("d2_sign_change", lambda, alpha,
                       "requires lambda > 0 and alpha in [-2, 0)"));
  }

  // d2_negative: d2 < 0 throughout once alpha in [-3, -2) and
  // lambda > -(alpha + 2).
  if (alpha >= -3.0 && alpha < -2.0 && lambda > -(alpha + 2.0)) {
    out.push_back(guarded("d2_negative", lambda, alpha, [&](DiagnosticReport& r) {
      Margin m;
      for (double x : grid) m.note(-d2(lambda, alpha, x, tol), x);
      r.worst_violation = m.worst;
      r.witness_x = m.witness;
      r.status = m.worst > 0.0 ? ClaimStatus::passed : ClaimStatus::failed;
      r.detail = "max d2 = " + fmt(-m.worst);
    }));
  } else {
    out.push_back(skip("d2_negative", lambda, alpha,
                       "requires alpha in [-3, -2) and lambda > -(alpha+2)"));
  }

  // delta1_chain: third derivative positive everywhere; the rest of the
  // family and delta_small positive wherever d2 < 0.
  if (core_regime(lambda, alpha) || ext_regime(lambda, alpha)) {
    out.push_back(
        guarded("delta1_chain", lambda, alpha, [&](DiagnosticReport& r) {
          Margin m;
          int guarded_points = 0;
          for (double x : grid) {
            const Delta1Family f = delta1_family(lambda, alpha, x, tol);
            m.note(f.third, x);
            if (d2(lambda, alpha, x, tol) < 0.0) {
              m.note(f.second, x);
              m.note(f.first, x);
              m.note(f.value, x);
              try {
                m.note(delta_small(lambda, alpha, x, tol), x);
                ++guarded_points;
              } catch (const regime_error&) {
                // d2 only just below zero; the bound is not usable there
              }
            }
          }
          r.worst_violation = m.worst;
          r.witness_x = m.witness;
          r.status = m.worst > 0.0 ? ClaimStatus::passed : ClaimStatus::failed;
          r.detail = "worst link in the chain = " + fmt(m.worst) + " (" +
                     fmt(guarded_points) + " points past the d2 crossing)";
        }));
  } else {
    out.push_back(skip("delta1_chain", lambda, alpha,
                       "requires lambda > 0 with alpha in [-2, 0), or alpha in "
                       "[-3, -2) with lambda > -(alpha+2)"));
  }

  // ddelta_dlambda_positive: delta strictly increases in lambda.
  if (core_regime(lambda, alpha)) {
    out.push_back(guarded("ddelta_dlambda_positive", lambda, alpha,
                          [&](DiagnosticReport& r) {
                            // The claim is about the analytic derivative;
                            // the finite-difference companion is too noisy
                            // near the right edge of wide grids.
                            DeltaDlOptions dopts;
                            dopts.cross_check = false;
                            Margin m;
                            for (double x : grid) {
                              m.note(delta_dlambda(lambda, alpha, x, dopts), x);
                            }
                            r.worst_violation = m.worst;
                            r.witness_x = m.witness;
                            r.status = m.worst > 1e-12 ? ClaimStatus::passed
                                                       : ClaimStatus::failed;
                            r.detail = "min d(delta)/d(lambda) = " + fmt(m.worst);
                          }));
  } else {
    out.push_back(skip("ddelta_dlambda_positive", lambda, alpha,
                       "requires lambda > 0 and alpha in [-2, 0)"));
  }

  // delta3_positive: the lambda-free certificate for alpha in [-3, -2).
  if (alpha >= -3.0 && alpha < -2.0) {
    out.push_back(
        guarded("delta3_positive", lambda, alpha, [&](DiagnosticReport& r) {
          Margin m;
          for (double x : grid) m.note(delta3(alpha, x), x);
          r.worst_violation = m.worst;
          r.witness_x = m.witness;
          r.status = m.worst > 0.0 ? ClaimStatus::passed : ClaimStatus::failed;
          r.detail = "min delta3 = " + fmt(m.worst);
        }));
  } else {
    out.push_back(
        skip("delta3_positive", lambda, alpha, "requires alpha in [-3, -2)"));
  }

  // delta_at_lambda0_positive: delta at the crossover weight lambda0.
  if (alpha >= -3.0 && alpha < -2.0) {
    const double lambda0 = -(alpha + 2.0);
    out.push_back(guarded("delta_at_lambda0_positive", lambda, alpha,
                          [&](DiagnosticReport& r) {
                            Margin m;
                            for (double x : grid) {
                              m.note(delta(lambda0, alpha, x, tol), x);
                            }
                            r.worst_violation = m.worst;
                            r.witness_x = m.witness;
                            r.status = m.worst > 0.0 ? ClaimStatus::passed
                                                     : ClaimStatus::failed;
                            r.detail = "min delta at lambda0 = " +
                                       fmt(lambda0) + " is " + fmt(m.worst);
                          }));
  } else {
    out.push_back(skip("delta_at_lambda0_positive", lambda, alpha,
                       "requires alpha in [-3, -2)"));
  }

  // lambda0_closed_form: the lambda = -(alpha+2) closed form matches the
  // series evaluation.
  if (alpha < -2.0) {
    const double lambda0 = -(alpha + 2.0);
    out.push_back(
        guarded("lambda0_closed_form", lambda, alpha, [&](DiagnosticReport& r) {
          const KernelParams kp{lambda0, alpha};
          Margin m;
          for (double x : grid) {
            double closed = 0.0;
            if (!kernel_closed_form(kp, x, &closed)) {
              throw regime_error("lambda0 closed form not triggered");
            }
            const double series = kernel_integral_series(kp, x);
            m.note(-std::abs(closed - series) /
                       std::max(1.0, std::abs(closed)),
                   x);
          }
          r.worst_violation = m.worst;
          r.witness_x = m.witness;
          r.status =
              -m.worst <= 1e-10 ? ClaimStatus::passed : ClaimStatus::failed;
          r.detail = "max relative gap = " + fmt(-m.worst);
        }));
  } else {
    out.push_back(
        skip("lambda0_closed_form", lambda, alpha, "requires alpha < -2"));
  }

  // tail_ratio_limit: (1-x)^{alpha+1} / f_lambda(x) -> -(alpha+1).
  if (alpha < -3.0) {
    out.push_back(
        guarded("tail_ratio_limit", lambda, alpha, [&](DiagnosticReport& r) {
          const double est = limit_toward_one(
              [&](double x) {
                return std::pow(1.0 - x, alpha + 1.0) /
                       kernel_integral(KernelParams{lambda, alpha}, x, tol);
              },
              {0.0, 1.0, 2.0});
          const double target = -(alpha + 1.0);
          const double err = std::abs(est - target);
          r.worst_violation = -err;
          r.status = err <= 1e-3 * std::max(1.0, std::abs(target))
                         ? ClaimStatus::passed
                         : ClaimStatus::failed;
          r.detail = "extrapolated " + fmt(est) + ", target " + fmt(target);
        }));
  } else {
    out.push_back(skip("tail_ratio_limit", lambda, alpha, "requires alpha < -3"));
  }

  // delta_split_identity: delta == delta1 + x delta2 away from x = 1.
  if (alpha < -3.0) {
    out.push_back(
        guarded("delta_split_identity", lambda, alpha, [&](DiagnosticReport& r) {
          Margin m;
          int used = 0;
          for (double x : grid) {
            if (x > 0.99) continue;
            const double lhs = delta(lambda, alpha, x, tol);
            const DeltaSplit s = delta_split(lambda, alpha, x, tol);
            const double rhs = s.delta1 + x * s.delta2;
            m.note(-std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)), x);
            ++used;
          }
          if (used == 0) {
            r.status = ClaimStatus::inconclusive;
            r.detail = "no grid points at or below 0.99";
            return;
          }
          r.worst_violation = m.worst;
          r.witness_x = m.witness;
          r.status = -m.worst <= tol ? ClaimStatus::passed : ClaimStatus::failed;
          r.detail = "max relative gap = " + fmt(-m.worst);
        }));
  } else {
    out.push_back(
        skip("delta_split_identity", lambda, alpha, "requires alpha < -3"));
  }

  // delta_limit_at_one: extrapolated limit matches the closed form.
  if (alpha < -3.0) {
    out.push_back(
        guarded("delta_limit_at_one", lambda, alpha, [&](DiagnosticReport& r) {
          const double est = delta_limit_extrapolated(lambda, alpha, tol);
          const double target = delta_limit_at_one(lambda, alpha);
          const double err = std::abs(est - target);
          r.worst_violation = -err;
          r.status = err <= 1e-3 * std::max(1.0, std::abs(target))
                         ? ClaimStatus::passed
                         : ClaimStatus::failed;
          r.detail = "extrapolated " + fmt(est) + ", target " + fmt(target);
        }));
  } else {
    out.push_back(
        skip("delta_limit_at_one", lambda, alpha, "requires alpha < -3"));
  }

  // pos_split_identity: delta == (1-x)^{alpha-1} (vanishing + driving).
  if (alpha > 0.0) {
    out.push_back(
        guarded("pos_split_identity", lambda, alpha, [&](DiagnosticReport& r) {
          Margin m;
          for (double x : grid) {
            const double lhs = delta(lambda, alpha, x, tol);
            const DeltaSplitPos s = delta_split_pos(lambda, alpha, x, tol);
            const double rhs =
                std::pow(1.0 - x, alpha - 1.0) * (s.vanishing + s.driving);
            m.note(-std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)), x);
          }
          r.worst_violation = m.worst;
          r.witness_x = m.witness;
          r.status = -m.worst <= tol ? ClaimStatus::passed : ClaimStatus::failed;
          r.detail = "max relative gap = " + fmt(-m.worst);
        }));
  } else {
    out.push_back(
        skip("pos_split_identity", lambda, alpha, "requires alpha > 0"));
  }

  // pos_bracket_limit: bracket tends to a negative constant with a plain
  // quadrature value as the reference.
  if (alpha > 0.0 && lambda > 0.0) {
    out.push_back(
        guarded("pos_bracket_limit", lambda, alpha, [&](DiagnosticReport& r) {
          const double est = limit_toward_one(
              [&](double x) {
                return delta_split_pos(lambda, alpha, x, tol).bracket;
              },
              {0.0, 1.0, 2.0});
          const double ref = reference_pos_bracket_limit(lambda, alpha);
          const double err = std::abs(est - ref);
          r.worst_violation = -err;
          const bool close = err <= 1e-3 * std::max(1.0, std::abs(ref));
          r.status = close && ref < 0.0 ? ClaimStatus::passed
                                        : ClaimStatus::failed;
          r.detail = "extrapolated " + fmt(est) + ", quadrature " + fmt(ref);
        }));
  } else {
    out.push_back(skip("pos_bracket_limit", lambda, alpha,
                       "requires alpha > 0 and lambda > 0"));
  }

  // pos_delta_negative_near_one: hunt for a point where delta < 0.
  if (alpha > 0.0 && lambda > 0.0) {
    out.push_back(guarded("pos_delta_negative_near_one", lambda, alpha,
                          [&](DiagnosticReport& r) {
                            Margin m;
                            for (int mm = 2; mm <= 6; ++mm) {
                              const double x = 1.0 - std::pow(10.0, -mm);
                              const double v = delta(lambda, alpha, x, tol);
                              m.note(v, x);
                              if (v < 0.0) {
                                r.worst_violation = v;
                                r.witness_x = x;
                                r.status = ClaimStatus::passed;
                                r.detail = "delta = " + fmt(v) + " at x = " +
                                           fmt(x);
                                return;
                              }
                            }
                            r.worst_violation = m.worst;
                            r.witness_x = m.witness;
                            r.status = ClaimStatus::inconclusive;
                            r.detail =
                                "no negative delta found on the ladder";
                          }));
  } else {
    out.push_back(skip("pos_delta_negative_near_one", lambda, alpha,
                       "requires alpha > 0 and lambda > 0"));
  }

  std::sort(out.begin(), out.end(),
            [](const DiagnosticReport& a, const DiagnosticReport& b) {
              return a.claim_id < b.claim_id;
            });
  return out;
}

}  // namespace diskmeans
