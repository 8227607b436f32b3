#include "ostrinv/sharpness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ostrinv {

namespace {

bool is_classical(BoundId id) {
  switch (id) {
    case BoundId::ostrowski_1a:
    case BoundId::lipschitz_1b:
    case BoundId::kirmaci_1c:
    case BoundId::kirmaci_1d:
    case BoundId::kirmaci_1e:
    case BoundId::kirmaci_1ee:
      return true;
    default:
      return false;
  }
}

bool is_midpoint_only(BoundId id) {
  switch (id) {
    case BoundId::lipschitz_1b:
    case BoundId::kirmaci_1c:
    case BoundId::kirmaci_1d:
    case BoundId::kirmaci_1e:
    case BoundId::kirmaci_1ee:
    case BoundId::thm23_cor_s1:
    case BoundId::thm24_cor_s2:
      return true;
    default:
      return false;
  }
}

bool needs_condition_c(BoundId id) {
  switch (id) {
    case BoundId::thm22_2b:
    case BoundId::thm23_22:
    case BoundId::thm23_cor_m:
    case BoundId::thm23_cor_s1:
    case BoundId::thm24_remark_b:
      return true;
    default:
      return false;
  }
}

double grid_max_abs_deriv(const ScalarFn& fn, double lo, double hi) {
  double worst = 0.0;
  for (double x : linspace(lo, hi, 129)) {
    worst = std::max(worst, std::abs(fn.deriv(x)));
  }
  return worst;
}

// Maximizes g on [lo, hi] by golden-section search; assumes a single interior
// peak, which holds near a grid-local maximum.
std::pair<double, double> golden_max(const std::function<double(double)>& g,
                                     double lo, double hi) {
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double g1 = g(x1);
  double g2 = g(x2);
  for (int i = 0; i < 80 && hi - lo > 1e-13 * (1.0 + std::abs(hi)); ++i) {
    if (g1 < g2) {
      lo = x1;
      x1 = x2;
      g1 = g2;
      x2 = lo + kInvPhi * (hi - lo);
      g2 = g(x2);
    } else {
      hi = x2;
      x2 = x1;
      g2 = g1;
      x1 = hi - kInvPhi * (hi - lo);
      g1 = g(x1);
    }
  }
  double mid = 0.5 * (lo + hi);
  return {mid, g(mid)};
}

}  // namespace

RatioSurface ratio_sweep(const ScalarFn& fn, const EtaMap& map,
                         const InvexSegment& seg, BoundId id,
                         const BoundParams& params,
                         const CertReport& condition_c, int points) {
  if (needs_condition_c(id) && condition_c.verdict != Verdict::certified) {
    throw std::domain_error(
        "this bound needs the displacement identities certified");
  }
  bool classical = is_classical(id);
  double lo = classical ? seg.a() : seg.lo();
  double hi = classical ? seg.b() : seg.hi();
  if (classical && !(hi > lo)) {
    throw std::invalid_argument("classical bounds need b > a");
  }

  BoundParams p = params;
  bool needs_M = id == BoundId::ostrowski_1a || id == BoundId::lipschitz_1b ||
                 id == BoundId::thm23_cor_m;
  if (needs_M && !p.M) p.M = grid_max_abs_deriv(fn, lo, hi);

  double mean = integrate([&](double s) { return fn.value(s); }, lo, hi,
                          kQuadTol * (hi - lo))
                    .value /
                (hi - lo);
  (void)map;

  auto rhs_at = [&](double x) -> double {
    switch (id) {
      case BoundId::ostrowski_1a:
      case BoundId::lipschitz_1b:
      case BoundId::kirmaci_1c:
      case BoundId::kirmaci_1d:
      case BoundId::kirmaci_1e:
      case BoundId::kirmaci_1ee:
        return classical_rhs(fn, seg.a(), seg.b(), x, id, p);
      case BoundId::thm22_21:
        return preinvex_derivative_rhs(fn, seg, x);
      case BoundId::thm22_2b:
        return preinvex_derivative_improved_rhs(fn, seg, x);
      case BoundId::thm23_22:
        return holder_rhs(fn, seg, x, p.q);
      case BoundId::thm23_cor_m:
        return bounded_derivative_rhs(seg, x, *p.M, p.q);
      case BoundId::thm23_cor_s1:
        return holder_midpoint_rhs(fn, seg, p.q);
      case BoundId::thm24:
        return power_mean_rhs(fn, seg, x, p.q);
      case BoundId::thm24_cor_s2:
        return power_mean_midpoint_rhs(fn, seg, p.q);
      case BoundId::thm24_remark_b:
        return power_mean_endpoint_variant_rhs(fn, seg, x, p.q);
    }
    throw std::invalid_argument("unknown bound id");
  };

  auto sample_at = [&](double x) {
    RatioSample s;
    s.x = x;
    s.lhs = std::abs(fn.value(x) - mean);
    s.rhs = rhs_at(x);
    s.excluded = s.rhs <= kRatioFloor;
    s.ratio = s.excluded ? 0.0 : s.lhs / s.rhs;
    return s;
  };

  RatioSurface surface;
  surface.bound_id = id;
  surface.q = p.q;

  if (is_midpoint_only(id)) {
    double x = classical ? 0.5 * (lo + hi) : seg.midpoint();
    auto s = sample_at(x);
    surface.samples.push_back(s);
    surface.excluded_count = s.excluded ? 1 : 0;
    surface.conclusive = !s.excluded;
    if (surface.conclusive) {
      surface.sup_ratio = s.ratio;
      surface.sup_x = s.x;
    }
    return surface;
  }

  surface.samples.reserve(static_cast<std::size_t>(points));
  for (double x : linspace(lo, hi, points)) {
    auto s = sample_at(x);
    if (s.excluded) ++surface.excluded_count;
    surface.samples.push_back(s);
  }
  surface.conclusive =
      surface.excluded_count < static_cast<long>(surface.samples.size());
  if (!surface.conclusive) return surface;

  double best = -1.0;
  double best_x = lo;
  for (const auto& s : surface.samples) {
    if (!s.excluded && s.ratio > best) {
      best = s.ratio;
      best_x = s.x;
    }
  }

  // Refine around the three best grid-local maxima; the grid alone can sit
  // a full cell away from the true peak.
  auto ratio_at = [&](double x) {
    auto s = sample_at(x);
    return s.excluded ? -1.0 : s.ratio;
  };
  std::vector<std::size_t> peaks;
  const auto& v = surface.samples;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].excluded) continue;
    bool up = i == 0 || v[i - 1].ratio <= v[i].ratio;
    bool down = i + 1 == v.size() || v[i + 1].ratio <= v[i].ratio;
    if (up && down) peaks.push_back(i);
  }
  std::sort(peaks.begin(), peaks.end(), [&](std::size_t l, std::size_t r) {
    return v[l].ratio > v[r].ratio;
  });
  if (peaks.size() > 3) peaks.resize(3);
  for (std::size_t i : peaks) {
    double wlo = i == 0 ? lo : v[i - 1].x;
    double whi = i + 1 == v.size() ? hi : v[i + 1].x;
    auto [x, r] = golden_max(ratio_at, wlo, whi);
    if (r > best) {
      best = r;
      best_x = x;
    }
  }

  surface.sup_ratio = best;
  surface.sup_x = best_x;
  return surface;
}

BestConstant best_constant_estimate(const std::vector<ScalarFn>& fns,
                                    const EtaMap& map, double a, double b,
                                    int points) {
  if (fns.empty()) {
    throw std::invalid_argument("need at least one function");
  }
  BestConstant out;
  for (const auto& fn : fns) {
    auto seg = InvexSegment::make(map, a, b);
    double mean = mean_value(fn, seg);
    double da = std::abs(fn.deriv(seg.a()));
    double db = std::abs(fn.deriv(seg.b()));
    auto ratio_at = [&](double x) -> double {
      double u = (x - seg.a()) / seg.eta();
      double v = (seg.hi() - x) / seg.eta();
      double den = seg.eta() * ((3.0 * u * u - 2.0 * u * u * u +
                                 2.0 * v * v * v) *
                                    da +
                                (1.0 - 3.0 * u * u + 4.0 * u * u * u) * db);
      if (den <= kRatioFloor) return -1.0;
      return std::abs(fn.value(x) - mean) / den;
    };

    std::vector<double> xs = linspace(seg.lo(), seg.hi(), points);
    std::vector<double> rs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) rs[i] = ratio_at(xs[i]);

    double best = -1.0;
    double best_x = seg.lo();
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (rs[i] > best) {
        best = rs[i];
        best_x = xs[i];
      }
    }
    std::vector<std::size_t> peaks;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (rs[i] < 0.0) continue;
      bool up = i == 0 || rs[i - 1] <= rs[i];
      bool down = i + 1 == xs.size() || rs[i + 1] <= rs[i];
      if (up && down) peaks.push_back(i);
    }
    std::sort(peaks.begin(), peaks.end(),
              [&](std::size_t l, std::size_t r) { return rs[l] > rs[r]; });
    if (peaks.size() > 3) peaks.resize(3);
    for (std::size_t i : peaks) {
      double wlo = i == 0 ? seg.lo() : xs[i - 1];
      double whi = i + 1 == xs.size() ? seg.hi() : xs[i + 1];
      auto [x, r] = golden_max(ratio_at, wlo, whi);
      if (r > best) {
        best = r;
        best_x = x;
      }
    }

    if (best > out.estimate) {
      out.estimate = best;
      out.attained_x = best_x;
      out.attained_fn = fn.label;
    }
  }
  return out;
}

}  // namespace ostrinv
