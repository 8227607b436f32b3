#pragma once

#include "ostrinv/domain.hpp"

namespace ostrinv {

/// Default absolute tolerance for smooth integrands.
inline constexpr double kQuadTol = 1e-10;

/// Loosened tolerance for integrands with |.| kinks, e.g. powers of |f'|.
inline constexpr double kKinkQuadTol = 1e-7;

/// Hard cap on integrand evaluations per integrate() call.
inline constexpr long kQuadBudget = 1'000'000;

struct QuadResult {
  double value = 0.0;
  double err_estimate = 0.0;
  long evals = 0;
  bool converged = true;
};

/// Adaptive Gauss-Kronrod 7/15 with absolute-error bisection.
///
/// The worst panel (largest error estimate) is bisected until the summed
/// estimate drops below tol or the evaluation budget runs out. Running out
/// of budget is not an error: the best value so far is returned with
/// converged = false. A degenerate interval integrates to exactly zero with
/// zero evaluations. lo > hi and non-finite integrand values are rejected.
QuadResult integrate(const std::function<double(double)>& f, double lo,
                     double hi, double tol = kQuadTol,
                     long max_evals = kQuadBudget);

/// (1 / eta) * integral of f over [a, a + eta]; the inner tolerance is
/// tol * eta so the mean itself is resolved to roughly tol.
double mean_value(const ScalarFn& fn, const InvexSegment& seg,
                  double tol = kQuadTol);

/// Both sides of the generating identity
///   f(x) - mean = eta * [ integral_0^u t f'(a+t*eta) dt
///                       + integral_u^1 (t-1) f'(a+t*eta) dt ],  u = (x-a)/eta.
/// The two pieces are integrated separately; the split point u is where the
/// kernel changes sign, so each piece is smooth whenever f' is.
struct IdentityResidual {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;   // |lhs - rhs|
  double err_bound = 0.0;  // summed quadrature error estimates
};

IdentityResidual lemma21_residual(const ScalarFn& fn, const EtaMap& map,
                                  const InvexSegment& seg, double x,
                                  double tol = kQuadTol);

}  // namespace ostrinv
