#pragma once

#include "ostrinv/domain.hpp"

namespace ostrinv {

/// Target of a generalized-convexity check: either a function itself or a
/// magnitude/power of its derivative.
struct RealFn {
  std::function<double(double)> f;
  std::string label;
};

RealFn as_fn(const ScalarFn& fn);
RealFn abs_deriv(const ScalarFn& fn);
RealFn abs_deriv_pow(const ScalarFn& fn, double q);  // q >= 1

/// Samples x + t*eta(y,x) over window^2 x [0,1] and certifies that no mapped
/// point leaves the closure of the domain by more than tol.
CertReport check_invex_set(const EtaMap& map, const SamplingPlan& plan,
                           double tol = kCertTol);

/// Checks the two displacement identities
///   eta(y, y + t*eta(x,y)) = -t*eta(x,y)
///   eta(x, y + t*eta(x,y)) = (1-t)*eta(x,y)
/// plus the derived two-parameter identity
///   eta(y + t2*eta(x,y), y + t1*eta(x,y)) = (t2-t1)*eta(x,y).
/// Samples whose evaluation point leaves the domain are skipped and counted;
/// more than half skipped gives an inconclusive verdict.
CertReport check_condition_c(const EtaMap& map, const SamplingPlan& plan,
                             double tol = kCertTol);

/// Certifies g(x + t*eta(y,x)) <= (1-t)g(x) + t*g(y) + tol on a grid of
/// (x, y, t) with x, y drawn from region ∩ domain.
CertReport check_preinvex(const RealFn& g, const EtaMap& map, Region region,
                          const SamplingPlan& plan, double tol = kCertTol);

/// Convenience overload sampling over the segment's interval.
CertReport check_preinvex(const RealFn& g, const EtaMap& map,
                          const InvexSegment& seg, const SamplingPlan& plan,
                          double tol = kCertTol);

}  // namespace ostrinv
