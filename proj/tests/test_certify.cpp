#include <doctest.h>

#include <cmath>
#include <vector>

#include "ostrinv/certify.hpp"
#include "ostrinv/registry.hpp"

using namespace ostrinv;

namespace {

const SamplingPlan kPlan{};

}  // namespace

TEST_CASE("trivial map: invex and both displacement identities hold") {
  EtaMap map = eta_map("trivial");
  auto invex = check_invex_set(map, kPlan);
  CHECK(invex.verdict == Verdict::certified);
  CHECK(invex.samples_used > 0);
  CHECK(invex.worst_violation == 0.0);

  // Algebraic identities for x - y; no resolution can refute them.
  for (int n : {8, 16, 64}) {
    SamplingPlan plan;
    plan.spatial_points = n;
    plan.t_points = n / 2;
    auto condc = check_condition_c(map, plan);
    CHECK(condc.verdict == Verdict::certified);
    CHECK(condc.worst_violation <= kCertTol);
  }
}

TEST_CASE("sign-split map is invex but breaks the second identity") {
  EtaMap map = eta_map("sign_split");
  CHECK(check_invex_set(map, kPlan).verdict == Verdict::certified);
  auto condc = check_condition_c(map, kPlan);
  CHECK(condc.verdict == Verdict::refuted);
  REQUIRE(condc.witness.has_value());
  CHECK(condc.worst_violation > kCertTol);
}

TEST_CASE("doubling map: identity fails with a re-checkable witness") {
  EtaMap map = eta_map("double_step");
  auto condc = check_condition_c(map, kPlan);
  CHECK(condc.verdict == Verdict::refuted);
  REQUIRE(condc.witness.has_value());
  // Replay the first displacement identity at the witness.
  double x = condc.witness->x;
  double y = condc.witness->y;
  double t = condc.witness->t;
  double eta = map(x, y);
  double z = y + t * eta;
  double r1 = std::abs(map(y, z) + t * eta);
  double r2 = std::abs(map(x, z) - (1.0 - t) * eta);
  double t2v = 0.0;
  if (condc.witness->t2) {
    double z2 = y + *condc.witness->t2 * eta;
    t2v = std::abs(map(z2, z) - (*condc.witness->t2 - t) * eta);
  }
  CHECK(std::max(std::max(r1, r2), t2v) >= condc.worst_violation - 1e-12);
}

TEST_CASE("doubling map escapes a bounded domain") {
  // Same formula restricted to (0,1): x + eta(y,x) overshoots the interval.
  EtaMap map{[](double x, double y) { return 2.0 * (x - y); },
             Domain::open(0.0, 1.0), "double_step_unit", false};
  auto invex = check_invex_set(map, kPlan);
  CHECK(invex.verdict == Verdict::refuted);
  REQUIRE(invex.witness.has_value());
  double mapped =
      invex.witness->x + invex.witness->t * map(invex.witness->y, invex.witness->x);
  CHECK(map.domain.closure_distance(mapped) > kCertTol);
}

TEST_CASE("punctured map: invex and condition C with skipped samples") {
  EtaMap map = eta_map("nonzero_reals");
  auto invex = check_invex_set(map, kPlan);
  CHECK(invex.verdict == Verdict::certified);

  auto condc = check_condition_c(map, kPlan);
  CHECK(condc.verdict == Verdict::certified);
  // Mixed-sign pairs at t = 1 land exactly on the puncture and are skipped.
  CHECK(condc.samples_skipped > 0);
  CHECK(condc.samples_used > condc.samples_skipped);
}

TEST_CASE("halving map is invex but fails the first identity") {
  EtaMap map = eta_map("half_step");
  CHECK(check_invex_set(map, kPlan).verdict == Verdict::certified);
  auto condc = check_condition_c(map, kPlan);
  CHECK(condc.verdict == Verdict::refuted);
  REQUIRE(condc.witness.has_value());
}

TEST_CASE("convex target certifies over the trivial map") {
  auto report = check_preinvex(as_fn(scalar_fn("square")), eta_map("trivial"),
                               Region{0.0, 1.0}, kPlan);
  CHECK(report.verdict == Verdict::certified);
  CHECK(report.worst_violation <= kCertTol);
}

TEST_CASE("concave target is refuted over the trivial map with a witness") {
  auto report = check_preinvex(as_fn(scalar_fn("neg_abs")), eta_map("trivial"),
                               Region{-1.0, 1.0}, kPlan);
  CHECK(report.verdict == Verdict::refuted);
  REQUIRE(report.witness.has_value());
  // Replay the witness.
  double x = report.witness->x;
  double y = report.witness->y;
  double t = report.witness->t;
  auto g = [](double v) { return -std::abs(v); };
  double excess = g(x + t * (y - x)) - ((1.0 - t) * g(x) + t * g(y));
  CHECK(excess == doctest::Approx(report.worst_violation));
  CHECK(excess > kCertTol);
}

TEST_CASE("-|x| is preinvex with respect to the sign-split map") {
  auto report = check_preinvex(as_fn(scalar_fn("neg_abs")),
                               eta_map("sign_split"), Region{-3.0, 3.0}, kPlan);
  CHECK(report.verdict == Verdict::certified);
}

TEST_CASE("spec counterexample: -x^2 under the trivial map") {
  auto report = check_preinvex(as_fn(fn_from_label("poly[0;0;-1]")),
                               eta_map("trivial"), Region{-2.0, 2.0}, kPlan);
  CHECK(report.verdict == Verdict::refuted);
  REQUIRE(report.witness.has_value());
  CHECK(report.worst_violation > 0.1);  // midpoint gap reaches (x-y)^2/4
}

TEST_CASE("|f'| of the quartic has a kink and loses preinvexity on [-2,1]") {
  auto report = check_preinvex(abs_deriv(scalar_fn("quartic_plus_x")),
                               eta_map("trivial"), Region{-2.0, 1.0}, kPlan);
  CHECK(report.verdict == Verdict::refuted);
  REQUIRE(report.witness.has_value());
  CHECK(report.worst_violation > 0.1);
}

TEST_CASE("punctured-map certifications used by the suite") {
  EtaMap nz = eta_map("nonzero_reals");
  auto seg = InvexSegment::make(nz, -2.0, 1.0);  // [-2, 0]
  CHECK(check_preinvex(abs_deriv(scalar_fn("square")), nz, seg, kPlan).verdict ==
        Verdict::certified);
  CHECK(check_preinvex(abs_deriv(scalar_fn("exp")), nz, seg, kPlan).verdict ==
        Verdict::certified);
  CHECK(check_preinvex(abs_deriv_pow(scalar_fn("square"), 2.0), nz, seg,
                       kPlan).verdict == Verdict::certified);
}

TEST_CASE("empty sampling region is inconclusive, not certified") {
  auto report = check_preinvex(as_fn(scalar_fn("square")),
                               eta_map("nonzero_reals"), Region{0.0, 0.0},
                               kPlan);
  CHECK(report.verdict == Verdict::inconclusive);
  CHECK(report.samples_used == 0);
}

TEST_CASE("violations only grow as the grid is refined") {
  SamplingPlan coarse;
  coarse.spatial_points = 32;
  coarse.t_points = 16;
  SamplingPlan fine;  // 64 x 32 contains the 32 x 16 lattice points
  auto target = as_fn(scalar_fn("neg_abs"));
  auto lo = check_preinvex(target, eta_map("trivial"), Region{-1.0, 1.0}, coarse);
  auto hi = check_preinvex(target, eta_map("trivial"), Region{-1.0, 1.0}, fine);
  CHECK(hi.worst_violation >= lo.worst_violation - 1e-15);
}

TEST_CASE("trivial-map preinvexity agrees with a direct convexity sampler") {
  // Same verdict as chord sampling at t = 1/2 over the same spatial grid.
  auto chord_sampler = [](const RealFn& g, double lo, double hi) {
    auto grid = linspace(lo, hi, 64);
    for (double x : grid) {
      for (double y : grid) {
        double mid = g.f(0.5 * (x + y));
        if (mid > 0.5 * (g.f(x) + g.f(y)) + kCertTol) return Verdict::refuted;
      }
    }
    return Verdict::certified;
  };
  EtaMap trivial = eta_map("trivial");
  for (const char* label : {"square", "neg_abs"}) {
    auto target = as_fn(scalar_fn(label));
    auto direct = chord_sampler(target, -1.0, 1.0);
    auto sampled = check_preinvex(target, trivial, Region{-1.0, 1.0}, kPlan);
    CHECK(sampled.verdict == direct);
  }
}

TEST_CASE("to_string covers all verdicts") {
  CHECK(std::string(to_string(Verdict::certified)) == "certified");
  CHECK(std::string(to_string(Verdict::refuted)) == "refuted");
  CHECK(std::string(to_string(Verdict::inconclusive)) == "inconclusive");
}
