#include "ostrinv/domain.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

namespace ostrinv {

Domain::Domain(std::vector<Interval> intervals, std::vector<double> excluded)
    : intervals_(std::move(intervals)), excluded_(std::move(excluded)) {
  for (const auto& iv : intervals_) {
    if (!(iv.lo <= iv.hi)) {
      throw std::invalid_argument("domain interval with lo > hi");
    }
  }
  std::sort(intervals_.begin(), intervals_.end(),
            [](const Interval& l, const Interval& r) { return l.lo < r.lo; });
  for (std::size_t i = 1; i < intervals_.size(); ++i) {
    if (intervals_[i].lo < intervals_[i - 1].hi) {
      throw std::invalid_argument("domain intervals overlap");
    }
  }
  std::sort(excluded_.begin(), excluded_.end());
}

Domain Domain::all_reals() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return Domain({Interval{-inf, inf, true, true}});
}

Domain Domain::reals_except(std::vector<double> excluded) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return Domain({Interval{-inf, inf, true, true}}, std::move(excluded));
}

Domain Domain::closed(double lo, double hi) {
  return Domain({Interval{lo, hi, false, false}});
}

Domain Domain::open(double lo, double hi) {
  return Domain({Interval{lo, hi, true, true}});
}

bool Domain::contains(double x) const {
  if (!std::isfinite(x)) return false;
  for (double e : excluded_) {
    if (x == e) return false;
  }
  for (const auto& iv : intervals_) {
    bool above = iv.lo_open ? x > iv.lo : x >= iv.lo;
    bool below = iv.hi_open ? x < iv.hi : x <= iv.hi;
    if (above && below) return true;
  }
  return false;
}

double Domain::closure_distance(double x) const {
  if (!std::isfinite(x)) return std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  for (const auto& iv : intervals_) {
    double d = 0.0;
    if (x < iv.lo) {
      d = iv.lo - x;
    } else if (x > iv.hi) {
      d = x - iv.hi;
    }
    best = std::min(best, d);
    if (best == 0.0) break;
  }
  return best;
}

bool Domain::grazes_excluded(double x) const {
  for (double e : excluded_) {
    if (std::abs(x - e) <= kExcludedNudge) return true;
  }
  return false;
}

double Domain::hull_lo() const {
  if (intervals_.empty()) return 0.0;
  return intervals_.front().lo;
}

double Domain::hull_hi() const {
  if (intervals_.empty()) return 0.0;
  double hi = intervals_.front().hi;
  for (const auto& iv : intervals_) hi = std::max(hi, iv.hi);
  return hi;
}

double EtaMap::operator()(double x, double y) const {
  double v = fn(x, y);
  if (!std::isfinite(v)) {
    throw std::domain_error("eta map returned a non-finite value");
  }
  return v;
}

double eval_eta(const EtaMap& map, double x, double y) {
  if (!map.domain.contains(x) || !map.domain.contains(y)) {
    throw std::domain_error("eta map argument outside the map's domain");
  }
  return map(x, y);
}

double ScalarFn::value(double x) const { return f(x); }

double ScalarFn::deriv(double x) const {
  if (df) return df(x);
  double h = fd_step;
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

double max_deriv_mismatch(const ScalarFn& fn, double lo, double hi,
                          int points) {
  if (!fn.has_closed_deriv()) return 0.0;
  double worst = 0.0;
  // Interior points only: the centered stencil needs room on both sides.
  auto grid = linspace(lo, hi, points);
  double h = fn.fd_step;
  for (double x : grid) {
    if (x - h < lo || x + h > hi) continue;
    double fd = (fn.f(x + h) - fn.f(x - h)) / (2.0 * h);
    worst = std::max(worst, std::abs(fd - fn.df(x)));
  }
  return worst;
}

InvexSegment InvexSegment::make(const EtaMap& map, double a, double b) {
  double eta = eval_eta(map, b, a);
  if (!(eta > 0.0)) {
    throw std::domain_error("segment requires eta(b, a) > 0");
  }
  // The bounds integrate over [a, a+eta], so the whole segment must stay in
  // the closure of the map's domain. Interior points that land exactly on an
  // excluded point are tolerated (the relevant integrals ignore one point)
  // but counted so callers can report them.
  int grazed = 0;
  const int probe = 257;
  for (double t : linspace(0.0, 1.0, probe)) {
    double p = a + t * eta;
    if (map.domain.grazes_excluded(p)) {
      ++grazed;
      continue;
    }
    if (map.domain.closure_distance(p) > kCertTol) {
      throw std::domain_error("segment leaves the map's domain");
    }
  }
  return InvexSegment(a, b, eta, grazed);
}

bool InvexSegment::contains(double x) const {
  return x >= a_ && x <= a_ + eta_;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::certified:
      return "certified";
    case Verdict::refuted:
      return "refuted";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  if (n <= 0) return out;
  if (n == 1) {
    out.push_back(0.5 * (lo + hi));
    return out;
  }
  out.reserve(static_cast<std::size_t>(n));
  double step = (hi - lo) / static_cast<double>(n - 1);
  for (int i = 0; i < n; ++i) {
    out.push_back(i == n - 1 ? hi : lo + step * static_cast<double>(i));
  }
  return out;
}

std::vector<double> domain_grid(const Domain& domain, double lo, double hi,
                                int n, long* perturbed) {
  std::vector<double> out;
  for (double x : linspace(lo, hi, n)) {
    if (domain.contains(x) && !domain.grazes_excluded(x)) {
      out.push_back(x);
      continue;
    }
    // On or next to an excluded point: shift by the nudge, preferring the
    // direction that stays inside [lo, hi]. Otherwise drop the point.
    for (double moved : {x + kExcludedNudge, x - kExcludedNudge}) {
      if (moved >= lo && moved <= hi && domain.contains(moved)) {
        out.push_back(moved);
        if (perturbed) ++(*perturbed);
        break;
      }
    }
  }
  return out;
}

}  // namespace ostrinv
