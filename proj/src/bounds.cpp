#include "ostrinv/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ostrinv/registry.hpp"

namespace ostrinv {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct IdName {
  BoundId id;
  const char* name;
};

constexpr IdName kBoundNames[] = {
    {BoundId::ostrowski_1a, "OSTROWSKI_1A"},
    {BoundId::lipschitz_1b, "LIPSCHITZ_1B"},
    {BoundId::kirmaci_1c, "KIRMACI_1C"},
    {BoundId::kirmaci_1d, "KIRMACI_1D"},
    {BoundId::kirmaci_1e, "KIRMACI_1E"},
    {BoundId::kirmaci_1ee, "KIRMACI_1EE"},
    {BoundId::thm22_21, "THM22_21"},
    {BoundId::thm22_2b, "THM22_2B"},
    {BoundId::thm23_22, "THM23_22"},
    {BoundId::thm23_cor_m, "THM23_COR_M"},
    {BoundId::thm23_cor_s1, "THM23_COR_S1"},
    {BoundId::thm24, "THM24"},
    {BoundId::thm24_cor_s2, "THM24_COR_S2"},
    {BoundId::thm24_remark_b, "THM24_REMARK_B"},
};

struct ReductionName {
  ReductionId id;
  const char* name;
};

constexpr ReductionName kReductionNames[] = {
    {ReductionId::thm22_mid_to_1c, "THM22_MID_TO_1C"},
    {ReductionId::thm22_mid_M_to_1b, "THM22_MID_M_TO_1B"},
    {ReductionId::thm23_mid_to_1d, "THM23_MID_TO_1D"},
    {ReductionId::thm23_mid_subadd_to_1e, "THM23_MID_SUBADD_TO_1E"},
    {ReductionId::thm24_mid_subadd_to_1ee, "THM24_MID_SUBADD_TO_1EE"},
};

// u and its complement, computed from the segment ends so u + v == 1 holds
// to within one rounding each.
struct Split {
  double u;
  double v;
};

Split split_at(const InvexSegment& seg, double x) {
  if (!seg.contains(x)) {
    throw std::domain_error("evaluation point outside the segment");
  }
  return Split{(x - seg.a()) / seg.eta(), (seg.hi() - x) / seg.eta()};
}

// Weight polynomials of the endpoint-weighted bound; both lie in [3/4, 2]
// for u in [0, 1].
double weight_a(double u, double v) {
  return 3.0 * u * u - 2.0 * u * u * u + 2.0 * v * v * v;
}

double weight_b(double u) { return 1.0 - 3.0 * u * u + 4.0 * u * u * u; }

void require_certified(const CertReport& report, const char* what) {
  if (report.verdict != Verdict::certified) {
    throw std::domain_error(std::string(what) +
                            " must be certified for this bound");
  }
}

void require_q_above_1(double q) {
  if (!(q > 1.0)) {
    throw std::invalid_argument("this bound requires q > 1");
  }
}

void require_q_at_least_1(double q) {
  if (!(q >= 1.0)) {
    throw std::invalid_argument("this bound requires q >= 1");
  }
}

void verify_upper_bound(const ScalarFn& fn, double lo, double hi, double M) {
  double worst = 0.0;
  for (double x : linspace(lo, hi, 129)) {
    worst = std::max(worst, std::abs(fn.deriv(x)));
  }
  if (worst > M + kCertTol * (1.0 + std::abs(M))) {
    throw std::domain_error("M is not an upper bound for |f'| here");
  }
}

BoundReport make_report(BoundId id, double lhs, double rhs,
                        double bracket_a = kNaN, double bracket_b = kNaN) {
  BoundReport r;
  r.bound_id = id;
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.holds = lhs <= rhs + ineq_tolerance(rhs);
  r.bracket_a = bracket_a;
  r.bracket_b = bracket_b;
  return r;
}

double qpow(double base, double e) { return std::pow(base, e); }

}  // namespace

std::string to_string(BoundId id) {
  for (const auto& e : kBoundNames) {
    if (e.id == id) return e.name;
  }
  throw std::invalid_argument("unknown bound id");
}

BoundId bound_id_from_string(const std::string& s) {
  for (const auto& e : kBoundNames) {
    if (s == e.name) return e.id;
  }
  throw std::invalid_argument("unknown bound id: " + s);
}

const std::vector<BoundId>& all_bound_ids() {
  static const std::vector<BoundId> ids = [] {
    std::vector<BoundId> v;
    for (const auto& e : kBoundNames) v.push_back(e.id);
    return v;
  }();
  return ids;
}

std::string to_string(ReductionId id) {
  for (const auto& e : kReductionNames) {
    if (e.id == id) return e.name;
  }
  throw std::invalid_argument("unknown reduction id");
}

ReductionId reduction_id_from_string(const std::string& s) {
  for (const auto& e : kReductionNames) {
    if (s == e.name) return e.id;
  }
  throw std::invalid_argument("unknown reduction id: " + s);
}

const std::vector<ReductionId>& all_reduction_ids() {
  static const std::vector<ReductionId> ids = [] {
    std::vector<ReductionId> v;
    for (const auto& e : kReductionNames) v.push_back(e.id);
    return v;
  }();
  return ids;
}

double ineq_tolerance(double rhs) {
  return kIneqTolAbs + kIneqTolRel * std::abs(rhs);
}

double holder_conjugate(double q) {
  if (!(q > 1.0)) {
    throw std::invalid_argument("Holder conjugate needs q > 1");
  }
  return q / (q - 1.0);
}

double lhs_value(const ScalarFn& fn, const EtaMap& map, const InvexSegment& seg,
                 double x, double quad_tol) {
  (void)map;
  if (!seg.contains(x)) {
    throw std::domain_error("evaluation point outside the segment");
  }
  return std::abs(fn.value(x) - mean_value(fn, seg, quad_tol));
}

// --- rhs evaluators ---------------------------------------------------------

double preinvex_derivative_rhs(const ScalarFn& fn, const InvexSegment& seg,
                               double x) {
  auto [u, v] = split_at(seg, x);
  double da = std::abs(fn.deriv(seg.a()));
  double db = std::abs(fn.deriv(seg.b()));
  return seg.eta() / 6.0 * (weight_a(u, v) * da + weight_b(u) * db);
}

double preinvex_derivative_improved_rhs(const ScalarFn& fn,
                                        const InvexSegment& seg, double x) {
  auto [u, v] = split_at(seg, x);
  double da = std::abs(fn.deriv(seg.a()));
  double dc = std::abs(fn.deriv(seg.hi()));
  return seg.eta() / 6.0 * (weight_a(u, v) * da + weight_b(u) * dc);
}

double holder_rhs(const ScalarFn& fn, const InvexSegment& seg, double x,
                  double q) {
  require_q_above_1(q);
  auto [u, v] = split_at(seg, x);
  (void)u;
  (void)v;
  double p = holder_conjugate(q);
  double aq = qpow(std::abs(fn.deriv(seg.a())), q);
  double cq = qpow(std::abs(fn.deriv(seg.hi())), q);
  double xq = qpow(std::abs(fn.deriv(x)), q);
  double da2 = (x - seg.a()) * (x - seg.a()) / seg.eta();
  double dc2 = (seg.hi() - x) * (seg.hi() - x) / seg.eta();
  return qpow(1.0 / (p + 1.0), 1.0 / p) *
         (da2 * qpow(0.5 * (aq + xq), 1.0 / q) +
          dc2 * qpow(0.5 * (cq + xq), 1.0 / q));
}

double bounded_derivative_rhs(const InvexSegment& seg, double x, double M,
                              double q) {
  require_q_above_1(q);
  if (!seg.contains(x)) {
    throw std::domain_error("evaluation point outside the segment");
  }
  double p = holder_conjugate(q);
  double da2 = (x - seg.a()) * (x - seg.a());
  double dc2 = (seg.hi() - x) * (seg.hi() - x);
  return qpow(1.0 / (p + 1.0), 1.0 / p) * M * (da2 + dc2) / seg.eta();
}

double holder_midpoint_rhs(const ScalarFn& fn, const InvexSegment& seg,
                           double q) {
  require_q_above_1(q);
  double p = holder_conjugate(q);
  double aq = qpow(std::abs(fn.deriv(seg.a())), q);
  double cq = qpow(std::abs(fn.deriv(seg.hi())), q);
  return qpow(1.0 / (p + 1.0), 1.0 / p) * (seg.eta() / 4.0) *
         (qpow(0.25 * (3.0 * aq + cq), 1.0 / q) +
          qpow(0.25 * (3.0 * cq + aq), 1.0 / q));
}

namespace {

double power_mean_rhs_generic(const InvexSegment& seg, double x, double q,
                              double aq, double bq) {
  auto [u, v] = split_at(seg, x);
  double c1 = u * u * (3.0 - 2.0 * u) / 6.0;
  double c2 = u * u * u / 3.0;
  double c3 = v * v * v / 3.0;
  double c4 = (1.0 - 3.0 * u * u + 2.0 * u * u * u) / 6.0;
  double s = 1.0 - 1.0 / q;  // zero at q == 1, where pow(0, 0) == 1 applies
  return seg.eta() * qpow(0.5, s) *
         (qpow(u, 2.0 * s) * qpow(c1 * aq + c2 * bq, 1.0 / q) +
          qpow(v, 2.0 * s) * qpow(c3 * aq + c4 * bq, 1.0 / q));
}

}  // namespace

double power_mean_rhs(const ScalarFn& fn, const InvexSegment& seg, double x,
                      double q) {
  require_q_at_least_1(q);
  double aq = qpow(std::abs(fn.deriv(seg.a())), q);
  double bq = qpow(std::abs(fn.deriv(seg.b())), q);
  return power_mean_rhs_generic(seg, x, q, aq, bq);
}

double power_mean_endpoint_variant_rhs(const ScalarFn& fn,
                                       const InvexSegment& seg, double x,
                                       double q) {
  require_q_at_least_1(q);
  double aq = qpow(std::abs(fn.deriv(seg.a())), q);
  double cq = qpow(std::abs(fn.deriv(seg.hi())), q);
  return power_mean_rhs_generic(seg, x, q, aq, cq);
}

double power_mean_midpoint_rhs(const ScalarFn& fn, const InvexSegment& seg,
                               double q) {
  require_q_at_least_1(q);
  double da = std::abs(fn.deriv(seg.a()));
  double db = std::abs(fn.deriv(seg.b()));
  return qpow(3.0, 1.0 - 1.0 / q) / 8.0 * seg.eta() * (da + db);
}

double relaxed_holder_midpoint_rhs(const ScalarFn& fn, const InvexSegment& seg,
                                   double q) {
  require_q_above_1(q);
  double p = holder_conjugate(q);
  double da = std::abs(fn.deriv(seg.a()));
  double dc = std::abs(fn.deriv(seg.hi()));
  // Term splitting (3A + C as A+A+A+C) inside (./4)^(1/q) gives
  // 3|f'(a)| + |f'(c)| and symmetrically; the quarters combine to 4.
  return qpow(1.0 / (p + 1.0), 1.0 / p) * (seg.eta() / 4.0) * qpow(0.25, 1.0 / q) *
         ((3.0 * da + dc) + (3.0 * dc + da));
}

double relaxed_power_mean_midpoint_rhs(const ScalarFn& fn,
                                       const InvexSegment& seg, double q) {
  require_q_at_least_1(q);
  double da = std::abs(fn.deriv(seg.a()));
  double db = std::abs(fn.deriv(seg.b()));
  return seg.eta() / 8.0 * qpow(3.0, -1.0 / q) *
         ((2.0 * da + db) + (da + 2.0 * db));
}

// --- full bound reports -----------------------------------------------------

BoundReport preinvex_derivative_bound(const ScalarFn& fn, const EtaMap& map,
                                      const InvexSegment& seg, double x) {
  auto [u, v] = split_at(seg, x);
  double lhs = lhs_value(fn, map, seg, x);
  double rhs = preinvex_derivative_rhs(fn, seg, x);
  return make_report(BoundId::thm22_21, lhs, rhs, weight_a(u, v), weight_b(u));
}

BoundReport preinvex_derivative_bound_improved(const ScalarFn& fn,
                                               const EtaMap& map,
                                               const InvexSegment& seg,
                                               double x,
                                               const CertReport& condition_c) {
  require_certified(condition_c, "the displacement identities");
  auto [u, v] = split_at(seg, x);
  double lhs = lhs_value(fn, map, seg, x);
  double rhs = preinvex_derivative_improved_rhs(fn, seg, x);
  return make_report(BoundId::thm22_2b, lhs, rhs, weight_a(u, v), weight_b(u));
}

BoundReport holder_bound(const ScalarFn& fn, const EtaMap& map,
                         const InvexSegment& seg, double x,
                         const BoundParams& params,
                         const CertReport& condition_c) {
  require_certified(condition_c, "the displacement identities");
  double lhs = lhs_value(fn, map, seg, x);
  double rhs = holder_rhs(fn, seg, x, params.q);
  return make_report(BoundId::thm23_22, lhs, rhs);
}

BoundReport bounded_derivative_bound(const ScalarFn& fn, const EtaMap& map,
                                     const InvexSegment& seg, double x,
                                     double M, double q,
                                     const CertReport& condition_c) {
  require_certified(condition_c, "the displacement identities");
  verify_upper_bound(fn, seg.lo(), seg.hi(), M);
  double lhs = lhs_value(fn, map, seg, x);
  double rhs = bounded_derivative_rhs(seg, x, M, q);
  return make_report(BoundId::thm23_cor_m, lhs, rhs);
}

BoundReport holder_midpoint_bound(const ScalarFn& fn, const EtaMap& map,
                                  const InvexSegment& seg, double q,
                                  const CertReport& condition_c) {
  require_certified(condition_c, "the displacement identities");
  double lhs = lhs_value(fn, map, seg, seg.midpoint());
  double rhs = holder_midpoint_rhs(fn, seg, q);
  return make_report(BoundId::thm23_cor_s1, lhs, rhs);
}

BoundReport power_mean_bound(const ScalarFn& fn, const EtaMap& map,
                             const InvexSegment& seg, double x, double q) {
  double lhs = lhs_value(fn, map, seg, x);
  double rhs = power_mean_rhs(fn, seg, x, q);
  return make_report(BoundId::thm24, lhs, rhs);
}

BoundReport power_mean_bound_endpoint_variant(const ScalarFn& fn,
                                              const EtaMap& map,
                                              const InvexSegment& seg, double x,
                                              double q,
                                              const CertReport& condition_c) {
  require_certified(condition_c, "the displacement identities");
  double lhs = lhs_value(fn, map, seg, x);
  double rhs = power_mean_endpoint_variant_rhs(fn, seg, x, q);
  return make_report(BoundId::thm24_remark_b, lhs, rhs);
}

BoundReport power_mean_midpoint_bound(const ScalarFn& fn, const EtaMap& map,
                                      const InvexSegment& seg, double q) {
  double lhs = lhs_value(fn, map, seg, seg.midpoint());
  double rhs = power_mean_midpoint_rhs(fn, seg, q);
  return make_report(BoundId::thm24_cor_s2, lhs, rhs);
}

// --- classical interval bounds ----------------------------------------------

double classical_rhs(const ScalarFn& fn, double a, double b, double x,
                     BoundId id, const BoundParams& params) {
  if (!(b > a)) throw std::invalid_argument("classical bounds need b > a");
  double w = b - a;
  double da = std::abs(fn.deriv(a));
  double db = std::abs(fn.deriv(b));
  switch (id) {
    case BoundId::ostrowski_1a: {
      if (!params.M) throw std::invalid_argument("this bound requires M");
      if (x < a || x > b) {
        throw std::domain_error("evaluation point outside [a, b]");
      }
      return *params.M / w * 0.5 * ((x - a) * (x - a) + (b - x) * (b - x));
    }
    case BoundId::lipschitz_1b: {
      if (!params.M) throw std::invalid_argument("this bound requires M");
      return *params.M * w / 4.0;
    }
    case BoundId::kirmaci_1c:
      return w / 8.0 * (da + db);
    case BoundId::kirmaci_1d: {
      require_q_above_1(params.q);
      double p = holder_conjugate(params.q);
      double aq = qpow(da, params.q);
      double bq = qpow(db, params.q);
      return w / 16.0 * qpow(4.0 / (p + 1.0), 1.0 / p) *
             (qpow(3.0 * aq + bq, 1.0 / params.q) +
              qpow(3.0 * bq + aq, 1.0 / params.q));
    }
    case BoundId::kirmaci_1e: {
      require_q_above_1(params.q);
      double p = holder_conjugate(params.q);
      return w / 4.0 * qpow(4.0 / (p + 1.0), 1.0 / p) * (da + db);
    }
    case BoundId::kirmaci_1ee: {
      require_q_at_least_1(params.q);
      return qpow(3.0, 1.0 - 1.0 / params.q) / 8.0 * w * (da + db);
    }
    default:
      throw std::invalid_argument("not a classical bound id");
  }
}

BoundReport classical_bound(const ScalarFn& fn, double a, double b, double x,
                            BoundId id, const BoundParams& params) {
  if (!(b > a)) throw std::invalid_argument("classical bounds need b > a");
  if (params.M && (id == BoundId::ostrowski_1a || id == BoundId::lipschitz_1b)) {
    verify_upper_bound(fn, a, b, *params.M);
  }
  double at = id == BoundId::ostrowski_1a ? x : 0.5 * (a + b);
  auto mean = integrate([&](double s) { return fn.value(s); }, a, b,
                        kQuadTol * (b - a));
  double lhs = std::abs(fn.value(at) - mean.value / (b - a));
  double rhs = classical_rhs(fn, a, b, at, id, params);
  return make_report(id, lhs, rhs);
}

// --- reductions --------------------------------------------------------------

namespace {

struct ReductionCase {
  double diff_scale;       // max(1, |reference|)
  double abs_diff;
  double dominance_slack;  // +inf when no relaxation step is involved
};

ReductionCase reduce_once(ReductionId id, const ScalarFn& fn, double a,
                          double b, double q) {
  const EtaMap trivial = eta_map("trivial");
  auto seg = InvexSegment::make(trivial, a, b);
  double mid = seg.midpoint();
  constexpr double inf = std::numeric_limits<double>::infinity();
  ReductionCase out{1.0, 0.0, inf};

  switch (id) {
    case ReductionId::thm22_mid_to_1c: {
      double specialized = preinvex_derivative_rhs(fn, seg, mid);
      double ref = classical_rhs(fn, a, b, mid, BoundId::kirmaci_1c, {});
      out.diff_scale = std::max(1.0, std::abs(ref));
      out.abs_diff = std::abs(specialized - ref);
      break;
    }
    case ReductionId::thm22_mid_M_to_1b: {
      double M = 0.0;
      for (double s : linspace(a, b, 129)) {
        M = std::max(M, std::abs(fn.deriv(s)));
      }
      auto [u, v] = split_at(seg, mid);
      double specialized =
          seg.eta() / 6.0 * (weight_a(u, v) * M + weight_b(u) * M);
      BoundParams params;
      params.M = M;
      double ref = classical_rhs(fn, a, b, mid, BoundId::lipschitz_1b, params);
      out.diff_scale = std::max(1.0, std::abs(ref));
      out.abs_diff = std::abs(specialized - ref);
      break;
    }
    case ReductionId::thm23_mid_to_1d: {
      double specialized = holder_midpoint_rhs(fn, seg, q);
      BoundParams params;
      params.q = q;
      double ref = classical_rhs(fn, a, b, mid, BoundId::kirmaci_1d, params);
      out.diff_scale = std::max(1.0, std::abs(ref));
      out.abs_diff = std::abs(specialized - ref);
      break;
    }
    case ReductionId::thm23_mid_subadd_to_1e: {
      double tight = holder_midpoint_rhs(fn, seg, q);
      double relaxed = relaxed_holder_midpoint_rhs(fn, seg, q);
      BoundParams params;
      params.q = q;
      double ref = classical_rhs(fn, a, b, mid, BoundId::kirmaci_1e, params);
      out.diff_scale = std::max(1.0, std::abs(ref));
      out.abs_diff = std::abs(relaxed - ref);
      out.dominance_slack = relaxed - tight;
      break;
    }
    case ReductionId::thm24_mid_subadd_to_1ee: {
      double tight = power_mean_rhs(fn, seg, mid, q);
      double relaxed = relaxed_power_mean_midpoint_rhs(fn, seg, q);
      BoundParams params;
      params.q = q;
      double ref = classical_rhs(fn, a, b, mid, BoundId::kirmaci_1ee, params);
      out.diff_scale = std::max(1.0, std::abs(ref));
      out.abs_diff = std::abs(relaxed - ref);
      out.dominance_slack = relaxed - tight;
      break;
    }
  }
  return out;
}

}  // namespace

ReductionReport verify_reduction(ReductionId id) {
  // Dyadic interval ends keep the midpoint ratio u = 1/2 exact, so the
  // specialized and classical expressions may only differ by rounding.
  static const double kSegments[][2] = {{0.0, 1.0}, {1.0, 3.0}, {-2.0, 1.0}};
  static const char* kFns[] = {"identity", "square", "cube", "quartic_plus_x"};
  bool q_dependent = id == ReductionId::thm23_mid_to_1d ||
                     id == ReductionId::thm23_mid_subadd_to_1e ||
                     id == ReductionId::thm24_mid_subadd_to_1ee;
  std::vector<double> qs;
  if (id == ReductionId::thm24_mid_subadd_to_1ee) {
    qs = {1.0, 1.5, 2.0, 3.0};
  } else if (q_dependent) {
    qs = {1.5, 2.0, 3.0};
  } else {
    qs = {1.0};
  }

  constexpr double kRelTol = 1e-12;
  ReductionReport report;
  report.id = id;
  report.min_dominance_slack = std::numeric_limits<double>::infinity();
  report.pass = true;
  for (const char* fname : kFns) {
    ScalarFn fn = scalar_fn(fname);
    for (const auto& seg : kSegments) {
      for (double q : qs) {
        auto c = reduce_once(id, fn, seg[0], seg[1], q);
        ++report.cases;
        report.max_abs_diff = std::max(report.max_abs_diff, c.abs_diff);
        report.min_dominance_slack =
            std::min(report.min_dominance_slack, c.dominance_slack);
        if (c.abs_diff > kRelTol * c.diff_scale) report.pass = false;
        if (c.dominance_slack < -kRelTol * c.diff_scale) report.pass = false;
      }
    }
  }
  return report;
}

// --- auxiliary inequalities ---------------------------------------------------

SubadditivityReport check_subadditivity(
    const std::vector<std::pair<double, double>>& pairs, double s) {
  if (!(s >= 0.0) || !(s < 1.0)) {
    throw std::invalid_argument("subadditivity exponent must be in [0, 1)");
  }
  SubadditivityReport report;
  for (const auto& [a, b] : pairs) {
    if (a < 0.0 || b < 0.0) {
      throw std::invalid_argument("subadditivity entries must be nonnegative");
    }
    report.lhs += qpow(a + b, s);
    report.rhs += qpow(a, s) + qpow(b, s);
  }
  report.slack = report.rhs - report.lhs;
  report.holds = report.lhs <= report.rhs + ineq_tolerance(report.rhs);
  return report;
}

IntegratedMeanReport check_integrated_mean_bound(const ScalarFn& fn,
                                                 const EtaMap& map,
                                                 const InvexSegment& seg,
                                                 double q,
                                                 const CertReport& condition_c,
                                                 int x_points) {
  (void)map;
  require_q_at_least_1(q);
  require_certified(condition_c, "the displacement identities");

  double a = seg.a();
  double eta = seg.eta();
  auto integrand = [&](double t) {
    return qpow(std::abs(fn.deriv(a + t * eta)), q);
  };
  double aq = integrand(0.0);
  double cq = integrand(1.0);

  IntegratedMeanReport report;
  // |f'|^q has a kink wherever f' changes sign, so use the loose tolerance.
  auto whole = integrate(integrand, 0.0, 1.0, kKinkQuadTol);
  report.mean_lhs = whole.value;
  report.mean_rhs = 0.5 * (aq + cq);
  report.mean_slack = report.mean_rhs - report.mean_lhs;
  report.quad_err = whole.err_estimate;
  bool holds = report.mean_lhs <=
               report.mean_rhs + ineq_tolerance(report.mean_rhs) +
                   whole.err_estimate;

  report.partial_lo_worst_slack = std::numeric_limits<double>::infinity();
  report.partial_hi_worst_slack = std::numeric_limits<double>::infinity();
  for (double x : linspace(seg.lo(), seg.hi(), x_points)) {
    auto [u, v] = split_at(seg, x);
    double xq = integrand(u);
    auto lo_part = integrate(integrand, 0.0, u, kKinkQuadTol);
    auto hi_part = integrate(integrand, u, 1.0, kKinkQuadTol);
    report.quad_err = std::max(
        report.quad_err, std::max(lo_part.err_estimate, hi_part.err_estimate));

    double lo_rhs = u * 0.5 * (aq + xq);
    double hi_rhs = v * 0.5 * (cq + xq);
    double lo_slack = lo_rhs - lo_part.value;
    double hi_slack = hi_rhs - hi_part.value;
    if (lo_slack < report.partial_lo_worst_slack) {
      report.partial_lo_worst_slack = lo_slack;
      report.worst_x_lo = x;
    }
    if (hi_slack < report.partial_hi_worst_slack) {
      report.partial_hi_worst_slack = hi_slack;
      report.worst_x_hi = x;
    }
    holds = holds &&
            lo_part.value <= lo_rhs + ineq_tolerance(lo_rhs) +
                                 lo_part.err_estimate &&
            hi_part.value <= hi_rhs + ineq_tolerance(hi_rhs) +
                                 hi_part.err_estimate;
  }
  report.holds = holds;
  return report;
}

}  // namespace ostrinv
