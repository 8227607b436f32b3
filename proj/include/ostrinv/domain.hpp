#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ostrinv {

/// Absolute tolerance separating real violations from floating-point noise
/// in the sampling certifiers.
inline constexpr double kCertTol = 1e-9;

/// Step and agreement tolerance for central-difference derivatives.
inline constexpr double kFiniteDiffStep = 1e-5;
inline constexpr double kFiniteDiffTol = 1e-5;

/// Offset applied to grid points that collide with an excluded domain point.
inline constexpr double kExcludedNudge = 1e-12;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_open = false;
  bool hi_open = false;
};

/// One-dimensional set: a finite union of intervals minus finitely many
/// excluded points. Covers the shapes that show up here: [a,b], R, R\{0}.
class Domain {
 public:
  Domain() = default;
  Domain(std::vector<Interval> intervals, std::vector<double> excluded = {});

  static Domain all_reals();
  static Domain reals_except(std::vector<double> excluded);
  static Domain closed(double lo, double hi);
  static Domain open(double lo, double hi);

  /// Strict membership: inside some interval (respecting open ends) and not
  /// an excluded point.
  bool contains(double x) const;

  /// Distance from x to the closure of the interval union. Zero for points
  /// that merely graze an open endpoint or an excluded point.
  double closure_distance(double x) const;

  /// True when x is within kExcludedNudge of an excluded point.
  bool grazes_excluded(double x) const;

  double hull_lo() const;
  double hull_hi() const;
  bool empty() const { return intervals_.empty(); }

  const std::vector<Interval>& intervals() const { return intervals_; }
  const std::vector<double>& excluded() const { return excluded_; }

 private:
  std::vector<Interval> intervals_;  // sorted, pairwise disjoint
  std::vector<double> excluded_;
};

/// Direction map eta(x, y). Generates the segment [a, a + eta(b,a)] and the
/// generalized convexity notion used throughout.
struct EtaMap {
  std::function<double(double, double)> fn;
  Domain domain;
  std::string label;
  bool is_trivial = false;  // eval(x, y) == x - y exactly

  /// Unchecked except for finiteness of the result.
  double operator()(double x, double y) const;
};

/// Checked evaluation: both arguments must lie in the map's domain.
double eval_eta(const EtaMap& map, double x, double y);

/// Real function with derivative, either closed form or central differences.
struct ScalarFn {
  std::function<double(double)> f;
  std::function<double(double)> df;  // empty -> finite differences
  double fd_step = kFiniteDiffStep;
  std::string label;

  double value(double x) const;
  double deriv(double x) const;
  bool has_closed_deriv() const { return static_cast<bool>(df); }
};

/// Max |closed-form derivative - central difference| over the interior points
/// of a uniform grid. Zero when there is no closed form to compare.
double max_deriv_mismatch(const ScalarFn& fn, double lo, double hi, int points);

/// The interval [a, a + eta(b,a)] induced by an anchor pair. Construction
/// rejects eta(b,a) <= 0 and segments that leave the map's domain; points
/// that land exactly on an excluded domain point are tolerated and counted.
class InvexSegment {
 public:
  static InvexSegment make(const EtaMap& map, double a, double b);

  double a() const { return a_; }
  double b() const { return b_; }
  double eta() const { return eta_; }
  double lo() const { return a_; }
  double hi() const { return a_ + eta_; }
  double midpoint() const { return a_ + 0.5 * eta_; }
  bool contains(double x) const;
  int grazed_points() const { return grazed_; }

 private:
  InvexSegment(double a, double b, double eta, int grazed)
      : a_(a), b_(b), eta_(eta), grazed_(grazed) {}
  double a_;
  double b_;
  double eta_;
  int grazed_;
};

/// Plain interval over which a certifier samples pairs of points.
struct Region {
  double lo = 0.0;
  double hi = 0.0;
};

/// Grid resolution for the sampling certifiers. The window bounds the
/// spatial axes when the map's domain is unbounded.
struct SamplingPlan {
  double window_lo = -5.0;
  double window_hi = 5.0;
  int spatial_points = 64;
  int t_points = 32;
};

enum class Verdict { certified, refuted, inconclusive };

const char* to_string(Verdict v);

/// Sample coordinates of a violation. t2 is set only for violations of the
/// two-parameter displacement identity.
struct CertWitness {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;
  std::optional<double> t2;
};

struct CertReport {
  Verdict verdict = Verdict::inconclusive;
  long samples_used = 0;
  long samples_skipped = 0;    // evaluation point left the domain
  long samples_perturbed = 0;  // grid/evaluation points that grazed an excluded point
  double worst_violation = 0.0;
  std::optional<CertWitness> witness;  // present when refuted
};

/// n >= 2: uniform inclusive grid; n == 1: the midpoint.
std::vector<double> linspace(double lo, double hi, int n);

/// Uniform grid over window ∩ domain. Points that fall on an excluded point
/// are nudged by +kExcludedNudge and counted in *perturbed; points outside
/// the domain are dropped.
std::vector<double> domain_grid(const Domain& domain, double lo, double hi,
                                int n, long* perturbed);

}  // namespace ostrinv
