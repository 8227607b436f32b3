#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ostrinv/bounds.hpp"

namespace ostrinv {

/// rhs values at or below this are excluded from ratio statistics.
inline constexpr double kRatioFloor = 1e-14;

inline constexpr int kSweepPoints = 129;

struct RatioSample {
  double x = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // lhs / rhs
  bool excluded = false;
};

struct RatioSurface {
  BoundId bound_id{};
  double q = 1.0;
  std::vector<RatioSample> samples;
  double sup_ratio = 0.0;  // over non-excluded samples, refined locally
  double sup_x = 0.0;
  long excluded_count = 0;
  bool conclusive = false;  // false when every sample was excluded
};

/// Sweeps lhs/rhs over an x-grid for one bound on one segment, then refines
/// around the top three grid maxima by golden-section search. Bounds whose
/// statement pins x to the midpoint get a single-sample surface.
RatioSurface ratio_sweep(const ScalarFn& fn, const EtaMap& map,
                         const InvexSegment& seg, BoundId id,
                         const BoundParams& params,
                         const CertReport& condition_c,
                         int points = kSweepPoints);

/// Estimate of the best (smallest admissible) leading constant for the
/// preinvex-derivative bound, obtained by maximizing
///   |f(x) - mean| / ( eta * [ A(u) |f'(a)| + B(u) |f'(b)| ] )
/// over x for a family of fixtures; the bound's own constant is 1/6.
struct BestConstant {
  double estimate = 0.0;
  double attained_x = 0.0;
  std::string attained_fn;
  double reference = 1.0 / 6.0;
};

BestConstant best_constant_estimate(const std::vector<ScalarFn>& fns,
                                    const EtaMap& map, double a, double b,
                                    int points = kSweepPoints);

}  // namespace ostrinv
