#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ostrinv/certify.hpp"
#include "ostrinv/quadrature.hpp"

namespace ostrinv {

/// Midpoint-error bounds. Identifiers are stable strings used in CSV output
/// and on the command line; see README for the formula behind each one.
enum class BoundId {
  ostrowski_1a,    // classical, bounded derivative, arbitrary x
  lipschitz_1b,    // classical, bounded derivative, midpoint
  kirmaci_1c,      // classical, convex |f'|, midpoint
  kirmaci_1d,      // classical, convex |f'|^q, midpoint, power-mean form
  kirmaci_1e,      // classical, convex |f'|^q, midpoint, relaxed form
  kirmaci_1ee,     // classical, convex |f'|^q, midpoint, 3^(1-1/q)/8 form
  thm22_21,        // segment bound from preinvex |f'|
  thm22_2b,        // same with |f'(a+eta)| replacing |f'(b)|
  thm23_22,        // segment bound via Holder, preinvex |f'|^q
  thm23_cor_m,     // its corollary for |f'| <= M
  thm23_cor_s1,    // its midpoint corollary
  thm24,           // segment bound via power mean, preinvex |f'|^q
  thm24_cor_s2,    // its midpoint corollary
  thm24_remark_b,  // thm24 with |f'(a+eta)| replacing |f'(b)|
};

std::string to_string(BoundId id);
BoundId bound_id_from_string(const std::string& s);
const std::vector<BoundId>& all_bound_ids();

/// Inequality slack below -(abs + rel*|rhs|) counts as a violation.
inline constexpr double kIneqTolAbs = 1e-9;
inline constexpr double kIneqTolRel = 1e-9;

double ineq_tolerance(double rhs);

/// Holder conjugate p = q/(q-1), defined for q > 1.
double holder_conjugate(double q);

struct BoundParams {
  double q = 1.0;
  std::optional<double> M;
};

struct BoundReport {
  BoundId bound_id{};
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  bool holds = false;
  // Dimensionless endpoint weights 3u^2 - 2u^3 + 2v^3 and 1 - 3u^2 + 4u^3
  // for the weighted endpoint bounds, whose rhs is (eta/6) times their
  // weighted sum; both lie in [3/4, 2]. NaN elsewhere.
  double bracket_a = 0.0;
  double bracket_b = 0.0;
};

/// |f(x) - segment mean of f|.
double lhs_value(const ScalarFn& fn, const EtaMap& map, const InvexSegment& seg,
                 double x, double quad_tol = kQuadTol);

// --- Segment bounds -------------------------------------------------------
// Throughout, u = (x-a)/eta and v = (a+eta-x)/eta.

/// rhs = (eta/6) * [ (3u^2 - 2u^3 + 2v^3) |f'(a)| + (1 - 3u^2 + 4u^3) |f'(b)| ].
/// Hypothesis (caller-certified or asserted): |f'| preinvex on the segment.
BoundReport preinvex_derivative_bound(const ScalarFn& fn, const EtaMap& map,
                                      const InvexSegment& seg, double x);

/// Same weights, |f'(a+eta(b,a))| in place of |f'(b)|. Requires a certified
/// displacement-identity (condition C) report; never worse than the base
/// bound when |f'| is preinvex.
BoundReport preinvex_derivative_bound_improved(const ScalarFn& fn,
                                               const EtaMap& map,
                                               const InvexSegment& seg, double x,
                                               const CertReport& condition_c);

/// rhs = (1/(p+1))^(1/p) * [ ((x-a)^2/eta) * powermean_q(|f'(a)|, |f'(x)|)
///                         + ((a+eta-x)^2/eta) * powermean_q(|f'(a+eta)|, |f'(x)|) ]
/// with p the Holder conjugate and powermean_q(s,t) = ((s^q + t^q)/2)^(1/q).
/// Requires q > 1, condition C certified, |f'|^q preinvex (caller).
BoundReport holder_bound(const ScalarFn& fn, const EtaMap& map,
                         const InvexSegment& seg, double x,
                         const BoundParams& params,
                         const CertReport& condition_c);

/// Corollary of the Holder bound for |f'| <= M on the segment; M is
/// grid-verified at the call.
BoundReport bounded_derivative_bound(const ScalarFn& fn, const EtaMap& map,
                                     const InvexSegment& seg, double x, double M,
                                     double q, const CertReport& condition_c);

/// Midpoint corollary of the Holder bound:
/// rhs = (1/(p+1))^(1/p) * (eta/4) * [ ((3A + C)/4)^(1/q) + ((3C + A)/4)^(1/q) ]
/// with A = |f'(a)|^q, C = |f'(a+eta)|^q.
BoundReport holder_midpoint_bound(const ScalarFn& fn, const EtaMap& map,
                                  const InvexSegment& seg, double q,
                                  const CertReport& condition_c);

/// rhs = eta * (1/2)^(1-1/q) * [ u^(2(1-1/q)) (c1 A + c2 B)^(1/q)
///                             + v^(2(1-1/q)) (c3 A + c4 B)^(1/q) ]
/// with A = |f'(a)|^q, B = |f'(b)|^q and
///   c1 = u^2(3-2u)/6, c2 = u^3/3, c3 = v^3/3, c4 = (1 - 3u^2 + 2u^3)/6.
/// Requires q >= 1 and |f'|^q preinvex (caller). At q = 1 this coincides
/// with the preinvex-derivative bound.
BoundReport power_mean_bound(const ScalarFn& fn, const EtaMap& map,
                             const InvexSegment& seg, double x, double q);

/// Power-mean bound with |f'(a+eta(b,a))| in place of |f'(b)|; requires
/// condition C certified.
BoundReport power_mean_bound_endpoint_variant(const ScalarFn& fn,
                                              const EtaMap& map,
                                              const InvexSegment& seg, double x,
                                              double q,
                                              const CertReport& condition_c);

/// Midpoint corollary of the power-mean bound:
/// rhs = (3^(1-1/q)/8) * eta * (|f'(a)| + |f'(b)|), q >= 1.
BoundReport power_mean_midpoint_bound(const ScalarFn& fn, const EtaMap& map,
                                      const InvexSegment& seg, double q);

/// The classical interval bounds (ostrowski_1a .. kirmaci_1ee) on [a, b].
/// x is the evaluation point for ostrowski_1a and ignored (midpoint used)
/// for the rest. M is required for 1a/1b and grid-verified.
BoundReport classical_bound(const ScalarFn& fn, double a, double b, double x,
                            BoundId id, const BoundParams& params);

// rhs-only evaluators, used by sweeps and the reduction checks.
double preinvex_derivative_rhs(const ScalarFn& fn, const InvexSegment& seg,
                               double x);
double preinvex_derivative_improved_rhs(const ScalarFn& fn,
                                        const InvexSegment& seg, double x);
double holder_rhs(const ScalarFn& fn, const InvexSegment& seg, double x,
                  double q);
double bounded_derivative_rhs(const InvexSegment& seg, double x, double M,
                              double q);
double holder_midpoint_rhs(const ScalarFn& fn, const InvexSegment& seg,
                           double q);
double power_mean_rhs(const ScalarFn& fn, const InvexSegment& seg, double x,
                      double q);
double power_mean_endpoint_variant_rhs(const ScalarFn& fn,
                                       const InvexSegment& seg, double x,
                                       double q);
double power_mean_midpoint_rhs(const ScalarFn& fn, const InvexSegment& seg,
                               double q);
double classical_rhs(const ScalarFn& fn, double a, double b, double x,
                     BoundId id, const BoundParams& params);

/// Midpoint forms relaxed by term-splitting subadditivity; these coincide
/// with kirmaci_1e / kirmaci_1ee when eta(b,a) = b - a.
double relaxed_holder_midpoint_rhs(const ScalarFn& fn, const InvexSegment& seg,
                                   double q);
double relaxed_power_mean_midpoint_rhs(const ScalarFn& fn,
                                       const InvexSegment& seg, double q);

// --- Reductions to the classical bounds ------------------------------------

enum class ReductionId {
  thm22_mid_to_1c,         // midpoint of thm22_21 == kirmaci_1c
  thm22_mid_M_to_1b,       // midpoint of thm22_21 with M == lipschitz_1b
  thm23_mid_to_1d,         // thm23_cor_s1 == kirmaci_1d
  thm23_mid_subadd_to_1e,  // relaxed thm23_cor_s1 == kirmaci_1e
  thm24_mid_subadd_to_1ee, // thm24_cor_s2 == kirmaci_1ee, dominates thm24 mid
};

std::string to_string(ReductionId id);
ReductionId reduction_id_from_string(const std::string& s);
const std::vector<ReductionId>& all_reduction_ids();

/// Checks one specialization against its classical counterpart on built-in
/// polynomial fixtures with the trivial map. max_abs_diff is the worst
/// disagreement; min_dominance_slack is the worst (relaxed - tight) for the
/// subadditivity steps (+inf when the reduction has no relaxation step).
struct ReductionReport {
  ReductionId id{};
  double max_abs_diff = 0.0;
  double min_dominance_slack = 0.0;
  int cases = 0;
  bool pass = false;
};

ReductionReport verify_reduction(ReductionId id);

// --- Auxiliary inequalities -------------------------------------------------

/// sum (a_k + b_k)^s <= sum a_k^s + sum b_k^s for 0 <= s < 1, entries >= 0.
struct SubadditivityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool holds = false;
};

SubadditivityReport check_subadditivity(
    const std::vector<std::pair<double, double>>& pairs, double s);

/// The averaged-derivative inequality
///   (1/eta) * integral |f'|^q over the segment <= (A + C)/2,
/// A = |f'(a)|^q, C = |f'(a+eta)|^q, plus its two partial-range versions
///   integral_0^u |f'(a+t*eta)|^q dt <= u (A + X)/2
///   integral_u^1 |f'(a+t*eta)|^q dt <= v (C + X)/2,  X = |f'(x)|^q,
/// checked across a grid of x. Requires condition C certified and |f'|^q
/// preinvex (caller), q >= 1.
struct IntegratedMeanReport {
  double mean_lhs = 0.0;
  double mean_rhs = 0.0;
  double mean_slack = 0.0;
  double partial_lo_worst_slack = 0.0;
  double partial_hi_worst_slack = 0.0;
  double worst_x_lo = 0.0;
  double worst_x_hi = 0.0;
  double quad_err = 0.0;  // worst single quadrature error estimate involved
  bool holds = false;
};

IntegratedMeanReport check_integrated_mean_bound(const ScalarFn& fn,
                                                 const EtaMap& map,
                                                 const InvexSegment& seg,
                                                 double q,
                                                 const CertReport& condition_c,
                                                 int x_points = 33);

}  // namespace ostrinv
