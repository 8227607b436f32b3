#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ostrinv/quadrature.hpp"
#include "ostrinv/registry.hpp"

using namespace ostrinv;

TEST_CASE("degenerate interval integrates to exactly zero") {
  auto r = integrate([](double x) { return x * x; }, 2.0, 2.0);
  CHECK(r.value == 0.0);
  CHECK(r.err_estimate == 0.0);
  CHECK(r.evals == 0);
  CHECK(r.converged);
}

TEST_CASE("invalid intervals and non-finite integrands are rejected") {
  CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 1.0, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      integrate([](double x) { return x > 0.5 ? std::nan("") : 1.0; }, 0.0,
                1.0),
      std::domain_error);
}

TEST_CASE("a single Kronrod panel nails a low-degree polynomial") {
  auto r = integrate([](double x) { return x * x; }, 0.0, 1.0);
  CHECK(std::abs(r.value - 1.0 / 3.0) <= 1e-14);
  CHECK(r.evals == 15);
  CHECK(r.converged);

  auto lin = integrate([](double x) { return x; }, 0.0, 2.0);
  CHECK(std::abs(lin.value - 2.0) <= 1e-13);

  auto c = integrate([](double) { return 3.5; }, -1.0, 3.0);
  CHECK(c.value == doctest::Approx(14.0));
}

TEST_CASE("adaptive bisection resolves an interior kink") {
  // integral of |x - 1/3| over [0,1] = 5/18.
  auto r = integrate([](double x) { return std::abs(x - 1.0 / 3.0); }, 0.0,
                     1.0, kKinkQuadTol);
  CHECK(r.converged);
  CHECK(std::abs(r.value - 5.0 / 18.0) <= kKinkQuadTol);
  CHECK(r.evals > 15);
}

TEST_CASE("budget exhaustion reports non-convergence with a usable value") {
  auto r = integrate([](double x) { return std::abs(x - 1.0 / 3.0); }, 0.0,
                     1.0, 1e-30, 300);
  CHECK(!r.converged);
  CHECK(r.evals <= 300);
  CHECK(std::abs(r.value - 5.0 / 18.0) <= 1e-6);
}

TEST_CASE("linearity within combined error estimates") {
  auto f = [](double x) { return x * x; };
  auto g = [](double x) { return std::exp(x); };
  auto rf = integrate(f, 0.0, 1.0);
  auto rg = integrate(g, 0.0, 1.0);
  auto combo = integrate([&](double x) { return 2.0 * f(x) + 3.0 * g(x); },
                         0.0, 1.0);
  double expect = 2.0 * rf.value + 3.0 * rg.value;
  double allow = 2.0 * (2.0 * rf.err_estimate + 3.0 * rg.err_estimate +
                        combo.err_estimate) +
                 1e-13;
  CHECK(std::abs(combo.value - expect) <= allow);
}

TEST_CASE("interval additivity at an interior split") {
  auto g = [](double x) { return std::exp(x); };
  auto whole = integrate(g, 0.0, 1.0);
  auto left = integrate(g, 0.0, 0.37);
  auto right = integrate(g, 0.37, 1.0);
  double allow =
      whole.err_estimate + left.err_estimate + right.err_estimate + 1e-13;
  CHECK(std::abs(whole.value - (left.value + right.value)) <= allow);
}

TEST_CASE("substitution scaling is exact to relative rounding") {
  auto g = [](double x) { return std::exp(x); };
  auto direct = integrate(g, 0.0, 2.0);
  auto scaled = integrate([&](double t) { return g(2.0 * t); }, 0.0, 1.0);
  CHECK(std::abs(direct.value - 2.0 * scaled.value) <=
        1e-12 * std::abs(direct.value));
}

TEST_CASE("segment means of the registry functions") {
  auto seg = InvexSegment::make(eta_map("trivial"), 0.0, 1.0);
  CHECK(std::abs(mean_value(scalar_fn("square"), seg) - 1.0 / 3.0) <= 1e-12);
  CHECK(std::abs(mean_value(scalar_fn("identity"), seg) - 0.5) <= 1e-12);
  CHECK(std::abs(mean_value(fn_from_label("poly[7]"), seg) - 7.0) <= 1e-12);
}

TEST_CASE("identity residual vanishes for the square on [0,1]") {
  auto seg = InvexSegment::make(eta_map("trivial"), 0.0, 1.0);
  auto r = lemma21_residual(scalar_fn("square"), eta_map("trivial"), seg, 0.5);
  CHECK(r.lhs == doctest::Approx(-1.0 / 12.0).epsilon(1e-9));
  CHECK(r.rhs == doctest::Approx(-1.0 / 12.0).epsilon(1e-9));
  CHECK(r.residual <= 1e-8);
  CHECK(r.residual <= 1e-7 + 10.0 * r.err_bound);
}

TEST_CASE("identity residual at the segment ends") {
  auto seg = InvexSegment::make(eta_map("trivial"), 0.0, 1.0);
  ScalarFn id = scalar_fn("identity");
  auto at_hi = lemma21_residual(id, eta_map("trivial"), seg, seg.hi());
  CHECK(at_hi.lhs == doctest::Approx(0.5));
  CHECK(at_hi.rhs == doctest::Approx(0.5));
  CHECK(at_hi.residual <= 1e-10);

  auto at_lo = lemma21_residual(id, eta_map("trivial"), seg, seg.lo());
  CHECK(at_lo.lhs == doctest::Approx(-0.5));
  CHECK(at_lo.residual <= 1e-10);

  auto flat = lemma21_residual(fn_from_label("poly[3]"), eta_map("trivial"),
                               seg, 0.25);
  CHECK(flat.lhs == doctest::Approx(0.0));
  CHECK(flat.rhs == doctest::Approx(0.0));
  CHECK(flat.residual <= 1e-12);
}

TEST_CASE("identity residual rejects points off the segment") {
  auto seg = InvexSegment::make(eta_map("trivial"), 0.0, 1.0);
  CHECK_THROWS_AS(
      lemma21_residual(scalar_fn("square"), eta_map("trivial"), seg, 1.5),
      std::domain_error);
}

TEST_CASE("identity holds over a punctured-map segment") {
  EtaMap nz = eta_map("nonzero_reals");
  auto seg = InvexSegment::make(nz, 1.0, 3.0);  // same-sign branch: [1, 3]
  CHECK(seg.hi() == doctest::Approx(3.0));
  for (const char* label : {"cube", "exp"}) {
    for (double t : {0.25, 0.5, 0.75}) {
      auto r = lemma21_residual(scalar_fn(label), nz, seg,
                                seg.lo() + t * seg.eta());
      CHECK(r.residual <= 1e-8);
    }
  }
}

TEST_CASE("residual stays at rounding level for degree-6 polynomials") {
  ScalarFn p = fn_from_label("poly[1;-2;0;3;0;-1;0.5]");
  auto seg = InvexSegment::make(eta_map("trivial"), -2.0, 1.0);
  for (double t : linspace(0.0, 1.0, 33)) {
    auto r = lemma21_residual(p, eta_map("trivial"), seg,
                              seg.lo() + t * seg.eta());
    CHECK(r.residual <= 1e-8);
  }
}
