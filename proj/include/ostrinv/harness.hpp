#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ostrinv/bounds.hpp"
#include "ostrinv/sharpness.hpp"

namespace ostrinv {

struct SegmentSpec {
  double a = 0.0;
  double b = 1.0;
};

struct ExperimentConfig {
  std::vector<std::string> functions;
  std::vector<std::string> etas;
  std::vector<SegmentSpec> segments;
  std::vector<BoundId> bounds;
  std::vector<double> qs;        // used by the q-dependent bounds only
  int x_resolution = kSweepPoints;
  std::vector<std::string> checks;  // see all_check_names()
  std::uint64_t seed = 42;
  double tol_ineq_abs = kIneqTolAbs;  // holds-classification overrides
  double tol_ineq_rel = kIneqTolRel;
  std::string output_path;    // empty: caller decides
  std::string output_format;  // "csv", "text", or empty
};

const std::vector<std::string>& all_check_names();

/// Parses a JSON object with keys: functions (required), eta_maps, segments
/// ([[a,b],...]), bounds, q_values, x_resolution, checks, seed, tolerances
/// ({ineq_abs, ineq_rel}), output ({path, format}). "etas" and "qs" are
/// accepted as aliases. Missing keys fall back to defaults (eta_maps:
/// trivial; segments: [0,1]; bounds: all; q_values: 1 and 2; checks: none).
/// x_resolution must be >= 3 and every q >= 1. Unknown keys and malformed
/// values raise std::runtime_error naming the offending field.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

/// The built-in suite exercised by `run --suite paper`.
ExperimentConfig paper_suite_config();

/// Canonical JSON rendering (sorted keys, shortest round-trip doubles);
/// the run id is the FNV-1a hash of this string.
std::string config_to_json(const ExperimentConfig& config);
std::uint64_t config_hash(const ExperimentConfig& config);

/// One evaluated (or skipped) case. Skipped rows carry a reason and leave
/// the inapplicable numeric fields unset.
struct RunRow {
  std::string function;
  std::string eta;
  double a = 0.0;
  double b = 0.0;
  BoundId bound_id{};
  std::optional<double> x;
  std::optional<double> q;
  std::optional<double> lhs;
  std::optional<double> rhs;
  std::optional<double> slack;
  std::optional<bool> holds;
  std::string skip_reason;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct RunSummary {
  long rows = 0;
  long evaluated = 0;
  long skipped = 0;
  long violations = 0;
  long checks_passed = 0;
  long checks_failed = 0;
  double max_ratio = 0.0;  // worst lhs/rhs over evaluated rows with rhs > 0
};

struct RunReport {
  std::uint64_t config_fingerprint = 0;
  std::string tool_version;
  std::vector<RunRow> rows;
  std::vector<CheckResult> checks;
  RunSummary summary;
};

/// Runs every (function, eta, segment, bound, x, q) combination the config
/// spans, certifying hypotheses once per (function, eta, segment) and
/// skipping (with a reason) the combinations whose hypotheses fail or whose
/// parameters are out of range for the bound. Then runs the requested
/// whole-suite checks. Deterministic for a fixed config.
RunReport run_experiment(const ExperimentConfig& config);

/// Shortest round-trip decimal rendering.
std::string format_double(double v);

/// CSV with the fixed header
///   function,eta,a,b,bound_id,x,q,lhs,rhs,slack,holds,skip_reason
/// rows sorted by (function, eta, bound_id, x, q, a, b).
void write_csv(const RunReport& report, std::ostream& os);
void write_csv_file(const RunReport& report, const std::string& path);

/// Human-readable summary (per-bound tallies, check outcomes, fingerprint).
void write_text(const RunReport& report, std::ostream& os);

/// 0: all evaluated rows hold and all checks pass; 2: a violation or a
/// failed check; never 1 (reserved for usage and I/O errors).
int exit_code(const RunReport& report);

}  // namespace ostrinv
