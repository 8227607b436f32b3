#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ostrinv/bounds.hpp"
#include "ostrinv/registry.hpp"

using namespace ostrinv;

namespace {

CertReport certified_report() {
  CertReport r;
  r.verdict = Verdict::certified;
  r.samples_used = 1;
  return r;
}

CertReport refuted_report() {
  CertReport r;
  r.verdict = Verdict::refuted;
  r.worst_violation = 1.0;
  r.witness = CertWitness{0.0, 1.0, 0.5, {}};
  return r;
}

const double kSqrt3 = std::sqrt(3.0);

}  // namespace

TEST_CASE("bound identifiers are stable wire strings") {
  const std::vector<std::string> expected = {
      "OSTROWSKI_1A", "LIPSCHITZ_1B", "KIRMACI_1C",   "KIRMACI_1D",
      "KIRMACI_1E",   "KIRMACI_1EE",  "THM22_21",     "THM22_2B",
      "THM23_22",     "THM23_COR_M",  "THM23_COR_S1", "THM24",
      "THM24_COR_S2", "THM24_REMARK_B"};
  const auto& ids = all_bound_ids();
  REQUIRE(ids.size() == expected.size());
  for (size_t i = 0; i < ids.size(); ++i) {
    CHECK(to_string(ids[i]) == expected[i]);
    CHECK(bound_id_from_string(expected[i]) == ids[i]);
  }
  CHECK_THROWS_AS(bound_id_from_string("THM99"), std::invalid_argument);
}

TEST_CASE("Holder conjugate") {
  CHECK(holder_conjugate(2.0) == doctest::Approx(2.0));
  CHECK(holder_conjugate(1.5) == doctest::Approx(3.0));
  CHECK(holder_conjugate(3.0) == doctest::Approx(1.5));
  CHECK(1.0 / holder_conjugate(1.25) + 1.0 / 1.25 == doctest::Approx(1.0));
  CHECK_THROWS_AS(holder_conjugate(1.0), std::invalid_argument);
}

TEST_CASE("inequality tolerance combines absolute and relative parts") {
  CHECK(ineq_tolerance(0.0) == doctest::Approx(1e-9));
  CHECK(ineq_tolerance(1.0) == doctest::Approx(2e-9));
  CHECK(ineq_tolerance(-2.0) == doctest::Approx(3e-9));
}

TEST_CASE("left side and endpoint-weighted bound on the square") {
  auto trivial = eta_map("trivial");
  auto seg = InvexSegment::make(trivial, 0.0, 1.0);
  ScalarFn sq = scalar_fn("square");

  CHECK(lhs_value(sq, trivial, seg, 0.5) == doctest::Approx(1.0 / 12.0));
  CHECK(preinvex_derivative_rhs(sq, seg, 0.5) == doctest::Approx(0.25));

  auto report = preinvex_derivative_bound(sq, trivial, seg, 0.5);
  CHECK(report.bound_id == BoundId::thm22_21);
  CHECK(report.lhs == doctest::Approx(1.0 / 12.0));
  CHECK(report.rhs == doctest::Approx(0.25));
  CHECK(report.holds);
  // Both weights are 3/4 at the midpoint.
  CHECK(report.bracket_a == doctest::Approx(0.75));
  CHECK(report.bracket_b == doctest::Approx(0.75));
}

TEST_CASE("equality case of the endpoint-weighted bound") {
  auto trivial = eta_map("trivial");
  auto seg = InvexSegment::make(trivial, 0.0, 1.0);
  ScalarFn id = scalar_fn("identity");
  auto report = preinvex_derivative_bound(id, trivial, seg, 1.0);
  CHECK(report.bracket_a == doctest::Approx(1.0));
  CHECK(report.bracket_b == doctest::Approx(2.0));
  CHECK(report.lhs == doctest::Approx(0.5));
  CHECK(report.rhs == doctest::Approx(0.5));
  CHECK(std::abs(report.slack) <= 1e-12);
  CHECK(report.holds);
}

TEST_CASE("weight factors stay within [3/4, 2] across the segment") {
  auto seg = InvexSegment::make(eta_map("trivial"), 0.0, 1.0);
  ScalarFn id = scalar_fn("identity");
  for (double x : linspace(0.0, 1.0, 201)) {
    auto report = preinvex_derivative_bound(id, eta_map("trivial"), seg, x);
    CHECK(report.bracket_a >= 0.75 - 1e-12);
    CHECK(report.bracket_a <= 2.0 + 1e-12);
    CHECK(report.bracket_b >= 0.75 - 1e-12);
    CHECK(report.bracket_b <= 2.0 + 1e-12);
  }
}

TEST_CASE("x outside the segment is rejected") {
  auto trivial = eta_map("trivial");
  auto seg = InvexSegment::make(trivial, 0.0, 1.0);
  CHECK_THROWS_AS(preinvex_derivative_bound(scalar_fn("square"), trivial, seg,
                                            1.5),
                  std::domain_error);
}

TEST_CASE("Holder bound oracle values on the square") {
  auto trivial = eta_map("trivial");
  auto seg = InvexSegment::make(trivial, 0.0, 1.0);
  ScalarFn sq = scalar_fn("square");
  auto ok = certified_report();

  // (1/3)^(1/2) * (1/4) * (sqrt(1/2) + sqrt(5/2)).
  CHECK(holder_rhs(sq, seg, 0.5, 2.0) ==
        doctest::Approx(0.33027980490978504).epsilon(1e-12));

  auto report = holder_bound(sq, trivial, seg, 0.5, BoundParams{2.0, {}}, ok);
  CHECK(report.bound_id == BoundId::thm23_22);
  CHECK(report.rhs == doctest::Approx(0.33027980490978504));
  CHECK(report.lhs == doctest::Approx(1.0 / 12.0));
  CHECK(report.holds);
  CHECK(std::isnan(report.bracket_a));

  // Constant-derivative fixture from the statement: lhs 0, rhs 1/(2 sqrt 3).
  ScalarFn id = scalar_fn("identity");
  CHECK(holder_rhs(id, seg, 0.5, 2.0) ==
        doctest::Approx(1.0 / (2.0 * kSqrt3)).epsilon(1e-12));
}

TEST_CASE("Holder bound refuses q <= 1 and a missing certificate") {
  auto trivial = eta_map("trivial");
  auto seg = InvexSegment::make(trivial, 0.0, 1.0);
  ScalarFn sq = scalar_fn("square");
  CHECK_THROWS_AS(
      holder_bound(sq, trivial, seg, 0.5, BoundParams{1.0, {}},
                   certified_report()),
      std::invalid_argument);
  CHECK_THROWS_AS(
      holder_bound(sq, trivial, seg, 0.5, BoundParams{2.0, {}},
                   refuted_report()),
      std::domain_error);
}

TEST_CASE("bounded-derivative corollary majorizes the Holder bound") {
  auto trivial = eta_map("trivial");
  auto seg = InvexSegment::make(trivial, 0.0, 1.0);
  ScalarFn sq = scalar_fn("square");

  CHECK(bounded_derivative_rhs(seg, 0.5, 2.0, 2.0) ==
        doctest::Approx(1.0 / kSqrt3).epsilon(1e-12));
  CHECK(bounded_derivative_rhs(seg, 0.5, 1.0, 2.0) ==
        doctest::Approx(1.0 / (2.0 * kSqrt3)).epsilon(1e-12));
  // x = a: only the (hi-x)^2 term survives: rhs = K * M * eta.
  CHECK(bounded_derivative_rhs(seg, 0.0, 1.0, 2.0) ==
        doctest::Approx(1.0 / kSqrt3).epsilon(1e-12));

  for (double x : linspace(0.0, 1.0, 33)) {
    CHECK(bounded_derivative_rhs(seg, x, 2.0, 2.0) >=
          holder_rhs(sq, seg, x, 2.0) - 1e-12);
  }

  auto report = bounded_derivative_bound(sq, trivial, seg, 0.5, 2.0, 2.0,
                                         certified_report());
  CHECK(report.bound_id == BoundId::thm23_cor_m);
  CHECK(report.holds);
  // An M below the true maximum of |f'| is rejected with a witness message.
  CHECK_THROWS_AS(bounded_derivative_bound(sq, trivial, seg, 0.5, 0.5, 2.0,
                                           certified_report()),
                  std::domain_error);
}

TEST_CASE("Holder midpoint corollary oracle values") {
  auto trivial = eta_map("trivial");
  auto seg = InvexSegment::make(trivial, 0.0, 1.0);
  CHECK(holder_midpoint_rhs(scalar_fn("square"), seg, 2.0) ==
        doctest::Approx(0.39433756729740643).epsilon(1e-12));
  CHECK(holder_midpoint_rhs(scalar_fn("square"), seg, 2.0) ==
        doctest::Approx((1.0 + kSqrt3) / (4.0 * kSqrt3)).epsilon(1e-12));
  CHECK(holder_midpoint_rhs(scalar_fn("identity"), seg, 2.0) ==
        doctest::Approx(1.0 / (2.0 * kSqrt3)).epsilon(1e-12));

  auto report = holder_midpoint_bound(scalar_fn("square"), trivial, seg, 2.0,
                                      certified_report());
  CHECK(report.bound_id == BoundId::thm23_cor_s1);
  CHECK(report.holds);
}

TEST_CASE("power-mean bound equality case from the statement") {
  auto trivial = eta_map("trivial");
  auto seg = InvexSegment::make(trivial, 0.0, 1.0);
  ScalarFn id = scalar_fn("identity");
  auto report = power_mean_bound(id, trivial, seg, 1.0, 2.0);
  CHECK(report.bound_id == BoundId::thm24);
  CHECK(report.lhs == doctest::Approx(0.5));
  CHECK(report.rhs == doctest::Approx(0.5));
  CHECK(std::abs(report.slack) <= 1e-12);
  CHECK(report.holds);
  CHECK_THROWS_AS(power_mean_bound(id, trivial, seg, 0.5, 0.5),
                  std::invalid_argument);
}

TEST_CASE("power-mean bound at q = 1 coincides with the weighted bound") {
  auto trivial = eta_map("trivial");
  std::vector<InvexSegment> segs = {
      InvexSegment::make(trivial, 0.0, 1.0),
      InvexSegment::make(trivial, 1.0, 3.0),
      InvexSegment::make(trivial, -2.0, 1.0)};
  for (const char* label : {"square", "cube", "quartic_plus_x", "exp"}) {
    ScalarFn fn = scalar_fn(label);
    for (const auto& seg : segs) {
      for (double t : linspace(0.0, 1.0, 33)) {
        double x = seg.lo() + t * seg.eta();
        double a = power_mean_rhs(fn, seg, x, 1.0);
        double b = preinvex_derivative_rhs(fn, seg, x);
        CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)));
      }
    }
  }
}

TEST_CASE("power-mean midpoint value matches its closed form") {
  auto seg = InvexSegment::make(eta_map("trivial"), 0.0, 1.0);
  ScalarFn sq = scalar_fn("square");
  // (eta/8) 3^(-1/q) [ (2A+B)^(1/q) + (A+2B)^(1/q) ], A=0, B=4, q=2.
  double expect = (2.0 + 2.0 * std::sqrt(2.0)) / (8.0 * kSqrt3);
  CHECK(power_mean_rhs(sq, seg, seg.midpoint(), 2.0) ==
        doctest::Approx(expect).epsilon(1e-12));
  // The corollary relaxes it.
  CHECK(power_mean_midpoint_rhs(sq, seg, 2.0) >=
        power_mean_rhs(sq, seg, seg.midpoint(), 2.0) - 1e-12);
  CHECK(power_mean_midpoint_rhs(sq, seg, 2.0) ==
        doctest::Approx(kSqrt3 / 4.0).epsilon(1e-12));
}

TEST_CASE("endpoint-variant bounds never exceed their base forms") {
  // Trivial map: a + eta(b,a) = b, so the variants coincide exactly.
  auto trivial = eta_map("trivial");
  auto seg = InvexSegment::make(trivial, 0.0, 1.0);
  ScalarFn sq = scalar_fn("square");
  for (double t : linspace(0.0, 1.0, 17)) {
    double x = t;
    CHECK(preinvex_derivative_improved_rhs(sq, seg, x) ==
          doctest::Approx(preinvex_derivative_rhs(sq, seg, x)));
    CHECK(power_mean_endpoint_variant_rhs(sq, seg, x, 2.0) ==
          doctest::Approx(power_mean_rhs(sq, seg, x, 2.0)));
  }

  // Punctured map on (-2, 1): the segment ends at 0 where |f'| vanishes,
  // so the swapped endpoint strictly improves the bound.
  EtaMap nz = eta_map("nonzero_reals");
  auto pseg = InvexSegment::make(nz, -2.0, 1.0);
  for (double t : linspace(0.0, 1.0, 17)) {
    double x = pseg.lo() + t * pseg.eta();
    double base = preinvex_derivative_rhs(sq, pseg, x);
    double improved = preinvex_derivative_improved_rhs(sq, pseg, x);
    CHECK(improved <= base + 1e-12);
    CHECK(base - improved > 0.1);
    CHECK(power_mean_endpoint_variant_rhs(sq, pseg, x, 2.0) <=
          power_mean_rhs(sq, pseg, x, 2.0) + 1e-12);
  }

  auto improved = preinvex_derivative_bound_improved(sq, nz, pseg, -1.0,
                                                     certified_report());
  CHECK(improved.bound_id == BoundId::thm22_2b);
  CHECK(improved.holds);
  CHECK_THROWS_AS(
      preinvex_derivative_bound_improved(sq, nz, pseg, -1.0, refuted_report()),
      std::domain_error);
  CHECK_THROWS_AS(power_mean_bound_endpoint_variant(sq, nz, pseg, -1.0, 2.0,
                                                    refuted_report()),
                  std::domain_error);
}

TEST_CASE("classical bound values on [0,1]") {
  ScalarFn sq = scalar_fn("square");
  BoundParams with_m;
  with_m.M = 2.0;

  auto a1 = classical_bound(sq, 0.0, 1.0, 0.5, BoundId::ostrowski_1a, with_m);
  CHECK(a1.rhs == doctest::Approx(0.5));
  CHECK(a1.lhs == doctest::Approx(1.0 / 12.0));
  CHECK(a1.holds);

  auto b1 = classical_bound(sq, 0.0, 1.0, 0.5, BoundId::lipschitz_1b, with_m);
  CHECK(b1.rhs == doctest::Approx(0.5));

  BoundParams plain;
  auto c1 = classical_bound(sq, 0.0, 1.0, 0.5, BoundId::kirmaci_1c, plain);
  CHECK(c1.rhs == doctest::Approx(0.25));

  BoundParams q2;
  q2.q = 2.0;
  auto d1 = classical_bound(sq, 0.0, 1.0, 0.5, BoundId::kirmaci_1d, q2);
  CHECK(d1.rhs == doctest::Approx(0.39433756729740643));
  auto e1 = classical_bound(sq, 0.0, 1.0, 0.5, BoundId::kirmaci_1e, q2);
  CHECK(e1.rhs == doctest::Approx(1.0 / kSqrt3));
  auto ee = classical_bound(sq, 0.0, 1.0, 0.5, BoundId::kirmaci_1ee, q2);
  CHECK(ee.rhs == doctest::Approx(kSqrt3 / 4.0));
}

TEST_CASE("classical bound input validation") {
  ScalarFn sq = scalar_fn("square");
  BoundParams plain;
  CHECK_THROWS_AS(
      classical_bound(sq, 0.0, 1.0, 0.5, BoundId::ostrowski_1a, plain),
      std::invalid_argument);  // M required
  BoundParams small_m;
  small_m.M = 0.5;
  CHECK_THROWS_AS(
      classical_bound(sq, 0.0, 1.0, 0.5, BoundId::ostrowski_1a, small_m),
      std::domain_error);  // |f'| reaches 2
  BoundParams with_m;
  with_m.M = 2.0;
  CHECK_THROWS_AS(
      classical_bound(sq, 0.0, 1.0, 1.5, BoundId::ostrowski_1a, with_m),
      std::domain_error);  // x off [a, b]
  CHECK_THROWS_AS(classical_bound(sq, 1.0, 1.0, 1.0, BoundId::kirmaci_1c,
                                  plain),
                  std::invalid_argument);  // degenerate interval
  CHECK_THROWS_AS(classical_bound(sq, 0.0, 1.0, 0.5, BoundId::thm22_21,
                                  plain),
                  std::invalid_argument);  // not a classical id
}

TEST_CASE("relaxed midpoint forms collapse to the classical ones") {
  auto seg = InvexSegment::make(eta_map("trivial"), 0.0, 1.0);
  ScalarFn sq = scalar_fn("square");
  BoundParams q2;
  q2.q = 2.0;
  CHECK(relaxed_holder_midpoint_rhs(sq, seg, 2.0) ==
        doctest::Approx(classical_rhs(sq, 0.0, 1.0, 0.5, BoundId::kirmaci_1e,
                                      q2))
            .epsilon(1e-13));
  for (double q : {1.0, 1.5, 2.0, 3.0}) {
    BoundParams p;
    p.q = q;
    CHECK(relaxed_power_mean_midpoint_rhs(sq, seg, q) ==
          doctest::Approx(classical_rhs(sq, 0.0, 1.0, 0.5,
                                        BoundId::kirmaci_1ee, p))
              .epsilon(1e-13));
    CHECK(relaxed_power_mean_midpoint_rhs(sq, seg, q) ==
          doctest::Approx(power_mean_midpoint_rhs(sq, seg, q))
              .epsilon(1e-13));
    // Relaxation direction: the relaxed value dominates the tight one.
    CHECK(relaxed_power_mean_midpoint_rhs(sq, seg, q) >=
          power_mean_rhs(sq, seg, seg.midpoint(), q) - 1e-12);
  }
  CHECK(relaxed_holder_midpoint_rhs(sq, seg, 2.0) >=
        holder_midpoint_rhs(sq, seg, 2.0) - 1e-12);
}

TEST_CASE("all five reductions verify on the polynomial fixtures") {
  for (ReductionId id : all_reduction_ids()) {
    auto report = verify_reduction(id);
    CHECK(report.pass);
    CHECK(report.cases > 0);
    INFO(to_string(id));
    CHECK(report.max_abs_diff <= 1e-9);  // scaled check inside is tighter
  }
  CHECK(verify_reduction(ReductionId::thm22_mid_to_1c).cases == 12);
  CHECK(verify_reduction(ReductionId::thm23_mid_to_1d).cases == 36);
  CHECK(verify_reduction(ReductionId::thm24_mid_subadd_to_1ee).cases == 48);
  CHECK(reduction_id_from_string("THM23_MID_TO_1D") ==
        ReductionId::thm23_mid_to_1d);
  CHECK_THROWS_AS(reduction_id_from_string("NOPE"), std::invalid_argument);
}

TEST_CASE("subadditivity of fractional powers") {
  using Pairs = std::vector<std::pair<double, double>>;
  auto one = check_subadditivity(Pairs{{1.0, 1.0}}, 0.5);
  CHECK(one.lhs == doctest::Approx(std::sqrt(2.0)));
  CHECK(one.rhs == doctest::Approx(2.0));
  CHECK(one.holds);

  // The shape that relaxes the midpoint bounds: a_k=3, b_k=1 twice, s=1/2.
  auto split = check_subadditivity(Pairs{{3.0, 1.0}, {3.0, 1.0}}, 0.5);
  CHECK(split.lhs == doctest::Approx(4.0));
  CHECK(split.rhs == doctest::Approx(2.0 * (kSqrt3 + 1.0)));
  CHECK(split.holds);

  auto flat = check_subadditivity(Pairs{{2.0, 5.0}, {0.0, 1.0}, {4.0, 4.0}},
                                  0.0);
  CHECK(flat.lhs == doctest::Approx(3.0));
  CHECK(flat.rhs == doctest::Approx(6.0));
  CHECK(flat.holds);

  CHECK_THROWS_AS(check_subadditivity(Pairs{{1.0, 1.0}}, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(check_subadditivity(Pairs{{-1.0, 1.0}}, 0.5),
                  std::invalid_argument);
}

TEST_CASE("averaged-derivative inequality and its equality case") {
  auto trivial = eta_map("trivial");
  auto seg = InvexSegment::make(trivial, 0.0, 1.0);
  ScalarFn sq = scalar_fn("square");
  auto ok = certified_report();

  auto q2 = check_integrated_mean_bound(sq, trivial, seg, 2.0, ok);
  CHECK(q2.mean_lhs == doctest::Approx(4.0 / 3.0).epsilon(1e-7));
  CHECK(q2.mean_rhs == doctest::Approx(2.0));
  CHECK(q2.holds);
  CHECK(q2.partial_lo_worst_slack >= -1e-9);
  CHECK(q2.partial_hi_worst_slack >= -1e-9);

  auto q1 = check_integrated_mean_bound(sq, trivial, seg, 1.0, ok);
  CHECK(std::abs(q1.mean_slack) <= 1e-9);  // linear |f'|: exact equality
  CHECK(q1.holds);

  CHECK_THROWS_AS(
      check_integrated_mean_bound(sq, trivial, seg, 2.0, refuted_report()),
      std::domain_error);
}

TEST_CASE("positive scaling moves both sides in lockstep") {
  auto trivial = eta_map("trivial");
  auto seg = InvexSegment::make(trivial, 0.0, 1.0);
  ScalarFn f1 = scalar_fn("square");
  ScalarFn f3 = fn_from_label("poly[0;0;3]");
  const double c = 3.0;

  for (double x : {0.1, 0.5, 0.9}) {
    double l1 = lhs_value(f1, trivial, seg, x);
    double l3 = lhs_value(f3, trivial, seg, x);
    CHECK(std::abs(l3 - c * l1) <= 1e-12 * std::max(1.0, std::abs(l3)));

    CHECK(std::abs(preinvex_derivative_rhs(f3, seg, x) -
                   c * preinvex_derivative_rhs(f1, seg, x)) <= 1e-12);
    CHECK(std::abs(holder_rhs(f3, seg, x, 2.0) -
                   c * holder_rhs(f1, seg, x, 2.0)) <= 1e-12);
    CHECK(std::abs(power_mean_rhs(f3, seg, x, 3.0) -
                   c * power_mean_rhs(f1, seg, x, 3.0)) <= 1e-12);

    BoundParams m1, m3;
    m1.M = 2.0;
    m3.M = 6.0;
    CHECK(std::abs(classical_rhs(f3, 0.0, 1.0, x, BoundId::ostrowski_1a, m3) -
                   c * classical_rhs(f1, 0.0, 1.0, x, BoundId::ostrowski_1a,
                                     m1)) <= 1e-12);
  }
}

TEST_CASE("soundness sweep over certified fixtures") {
  auto trivial = eta_map("trivial");
  EtaMap nz = eta_map("nonzero_reals");
  auto ok = certified_report();
  struct Fixture {
    const EtaMap* map;
    InvexSegment seg;
  };
  std::vector<Fixture> fixtures = {
      {&trivial, InvexSegment::make(trivial, 0.0, 1.0)},
      {&nz, InvexSegment::make(nz, -2.0, 1.0)}};
  for (const char* label : {"square", "exp"}) {
    ScalarFn fn = scalar_fn(label);
    for (const auto& fx : fixtures) {
      for (double t : linspace(0.0, 1.0, 33)) {
        double x = fx.seg.lo() + t * fx.seg.eta();
        CHECK(preinvex_derivative_bound(fn, *fx.map, fx.seg, x).holds);
        for (double q : {1.5, 2.0, 3.0}) {
          CHECK(holder_bound(fn, *fx.map, fx.seg, x, BoundParams{q, {}}, ok)
                    .holds);
        }
        for (double q : {1.0, 1.5, 2.0, 3.0}) {
          CHECK(power_mean_bound(fn, *fx.map, fx.seg, x, q).holds);
        }
      }
    }
  }
}
