#include "ostrinv/certify.hpp"

#include <algorithm>
#include <cmath>

namespace ostrinv {

namespace {

// Spatial grid for a certifier: the plan's window clipped to the domain hull.
std::vector<double> spatial_grid(const Domain& domain, const SamplingPlan& plan,
                                 long* perturbed) {
  double lo = std::max(plan.window_lo, domain.hull_lo());
  double hi = std::min(plan.window_hi, domain.hull_hi());
  return domain_grid(domain, lo, hi, plan.spatial_points, perturbed);
}

void note_violation(CertReport& report, double violation, double x, double y,
                    double t, std::optional<double> t2 = std::nullopt) {
  if (violation > report.worst_violation) {
    report.worst_violation = violation;
    report.witness = CertWitness{x, y, t, t2};
  }
}

void finalize(CertReport& report, double tol) {
  if (report.worst_violation > tol) {
    report.verdict = Verdict::refuted;
    return;
  }
  report.witness.reset();
  long attempts = report.samples_used + report.samples_skipped;
  if (attempts == 0 || report.samples_skipped * 2 > attempts) {
    report.verdict = Verdict::inconclusive;
    return;
  }
  report.verdict = Verdict::certified;
}

}  // namespace

RealFn as_fn(const ScalarFn& fn) {
  return RealFn{[fn](double x) { return fn.value(x); }, fn.label};
}

RealFn abs_deriv(const ScalarFn& fn) {
  return RealFn{[fn](double x) { return std::abs(fn.deriv(x)); },
                "|d " + fn.label + "|"};
}

RealFn abs_deriv_pow(const ScalarFn& fn, double q) {
  return RealFn{
      [fn, q](double x) { return std::pow(std::abs(fn.deriv(x)), q); },
      "|d " + fn.label + "|^" + std::to_string(q)};
}

CertReport check_invex_set(const EtaMap& map, const SamplingPlan& plan,
                           double tol) {
  CertReport report;
  auto grid = spatial_grid(map.domain, plan, &report.samples_perturbed);
  auto ts = linspace(0.0, 1.0, plan.t_points);
  for (double x : grid) {
    for (double y : grid) {
      double eta = map(y, x);
      for (double t : ts) {
        double mapped = x + t * eta;
        ++report.samples_used;
        if (map.domain.grazes_excluded(mapped)) ++report.samples_perturbed;
        note_violation(report, map.domain.closure_distance(mapped), x, y, t);
      }
    }
  }
  finalize(report, tol);
  return report;
}

CertReport check_condition_c(const EtaMap& map, const SamplingPlan& plan,
                             double tol) {
  CertReport report;
  auto grid = spatial_grid(map.domain, plan, &report.samples_perturbed);
  auto ts = linspace(0.0, 1.0, plan.t_points);
  // Coarser second parameter for the two-point identity; the pairwise loop
  // below is quadratic in its size.
  auto t2s = linspace(0.0, 1.0, 8);
  for (double x : grid) {
    for (double y : grid) {
      double eta = map(x, y);
      for (double t : ts) {
        double z = y + t * eta;
        if (!map.domain.contains(z)) {
          ++report.samples_skipped;
          continue;
        }
        ++report.samples_used;
        double r1 = std::abs(map(y, z) + t * eta);
        double r2 = std::abs(map(x, z) - (1.0 - t) * eta);
        note_violation(report, std::max(r1, r2), x, y, t);
      }
      for (double t1 : t2s) {
        double z1 = y + t1 * eta;
        if (!map.domain.contains(z1)) {
          report.samples_skipped += static_cast<long>(t2s.size());
          continue;
        }
        for (double t2 : t2s) {
          double z2 = y + t2 * eta;
          if (!map.domain.contains(z2)) {
            ++report.samples_skipped;
            continue;
          }
          ++report.samples_used;
          double r = std::abs(map(z2, z1) - (t2 - t1) * eta);
          note_violation(report, r, x, y, t1, t2);
        }
      }
    }
  }
  finalize(report, tol);
  return report;
}

CertReport check_preinvex(const RealFn& g, const EtaMap& map, Region region,
                          const SamplingPlan& plan, double tol) {
  CertReport report;
  auto grid = domain_grid(map.domain, region.lo, region.hi,
                          plan.spatial_points, &report.samples_perturbed);
  auto ts = linspace(0.0, 1.0, plan.t_points);
  for (double x : grid) {
    double gx = g.f(x);
    for (double y : grid) {
      double gy = g.f(y);
      double eta = map(y, x);
      for (double t : ts) {
        double mapped = x + t * eta;
        if (!map.domain.contains(mapped)) {
          if (map.domain.grazes_excluded(mapped)) {
            mapped += kExcludedNudge;
            ++report.samples_perturbed;
          }
          if (!map.domain.contains(mapped)) {
            ++report.samples_skipped;
            continue;
          }
        }
        ++report.samples_used;
        double excess = g.f(mapped) - ((1.0 - t) * gx + t * gy);
        note_violation(report, excess, x, y, t);
      }
    }
  }
  finalize(report, tol);
  return report;
}

CertReport check_preinvex(const RealFn& g, const EtaMap& map,
                          const InvexSegment& seg, const SamplingPlan& plan,
                          double tol) {
  return check_preinvex(g, map, Region{seg.lo(), seg.hi()}, plan, tol);
}

}  // namespace ostrinv
