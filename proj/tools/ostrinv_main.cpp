#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ostrinv/harness.hpp"
#include "ostrinv/registry.hpp"
#include "ostrinv/version.hpp"

namespace {

using namespace ostrinv;

void print_cert(const CertReport& report) {
  std::cout << "verdict: " << to_string(report.verdict) << "\n"
            << "samples: " << report.samples_used << " used, "
            << report.samples_skipped << " skipped, "
            << report.samples_perturbed << " perturbed\n"
            << "worst violation: " << format_double(report.worst_violation)
            << "\n";
  if (report.witness) {
    std::cout << "witness: x=" << format_double(report.witness->x)
              << " y=" << format_double(report.witness->y)
              << " t=" << format_double(report.witness->t);
    if (report.witness->t2) {
      std::cout << " t2=" << format_double(*report.witness->t2);
    }
    std::cout << "\n";
  }
}

int cert_exit(const CertReport& report) {
  switch (report.verdict) {
    case Verdict::certified:
      return 0;
    case Verdict::refuted:
      return 2;
    case Verdict::inconclusive:
      return 3;
  }
  return 3;
}

void print_bound(const BoundReport& report) {
  std::cout << "bound: " << to_string(report.bound_id) << "\n"
            << "lhs: " << format_double(report.lhs) << "\n"
            << "rhs: " << format_double(report.rhs) << "\n"
            << "slack: " << format_double(report.slack) << "\n"
            << "holds: " << (report.holds ? "true" : "false") << "\n";
}

// Certifies the hypotheses a bound needs. Returns a reason when one fails.
struct Hypotheses {
  CertReport condition_c;
  std::optional<std::string> failure;
};

Hypotheses certify_for(BoundId id, const ScalarFn& fn, const EtaMap& map,
                       const InvexSegment& seg, double q) {
  SamplingPlan plan;
  Hypotheses h;
  bool classical = false;
  switch (id) {
    case BoundId::ostrowski_1a:
    case BoundId::lipschitz_1b:
    case BoundId::kirmaci_1c:
    case BoundId::kirmaci_1d:
    case BoundId::kirmaci_1e:
    case BoundId::kirmaci_1ee:
      classical = true;
      break;
    default:
      break;
  }

  if (classical) {
    if (id == BoundId::kirmaci_1c || id == BoundId::kirmaci_1d ||
        id == BoundId::kirmaci_1e || id == BoundId::kirmaci_1ee) {
      const EtaMap trivial = eta_map("trivial");
      RealFn target = id == BoundId::kirmaci_1c ? abs_deriv(fn)
                                                : abs_deriv_pow(fn, q);
      auto cert = check_preinvex(target, trivial, Region{seg.a(), seg.b()},
                                 plan);
      if (cert.verdict != Verdict::certified) {
        h.failure = "convexity of the derivative target on [a b]: " +
                    std::string(to_string(cert.verdict));
      }
    }
    return h;
  }

  auto invex = check_invex_set(map, plan);
  if (invex.verdict != Verdict::certified) {
    h.failure = "invex set: " + std::string(to_string(invex.verdict));
    return h;
  }
  switch (id) {
    case BoundId::thm22_2b:
    case BoundId::thm23_22:
    case BoundId::thm23_cor_m:
    case BoundId::thm23_cor_s1:
    case BoundId::thm24_remark_b:
      h.condition_c = check_condition_c(map, plan);
      if (h.condition_c.verdict != Verdict::certified) {
        h.failure =
            "condition C: " + std::string(to_string(h.condition_c.verdict));
        return h;
      }
      break;
    default:
      break;
  }
  RealFn target = (id == BoundId::thm22_21 || id == BoundId::thm22_2b)
                      ? abs_deriv(fn)
                      : abs_deriv_pow(fn, q);
  auto pre = check_preinvex(target, map, seg, plan);
  if (pre.verdict != Verdict::certified) {
    h.failure = "preinvexity of the derivative target: " +
                std::string(to_string(pre.verdict));
  }
  return h;
}

double auto_M(const ScalarFn& fn, double lo, double hi) {
  double worst = 0.0;
  for (double x : linspace(lo, hi, 129)) {
    worst = std::max(worst, std::abs(fn.deriv(x)));
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Midpoint-error bound evaluator for generalized convexity"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  // certify
  auto* certify = app.add_subcommand(
      "certify", "Sample-certify an eta map property or a preinvexity claim");
  std::string c_eta = "trivial";
  std::string c_check;
  std::string c_fn;
  std::string c_target = "abs_deriv";
  double c_q = 2.0;
  double c_lo = 0.0;
  double c_hi = 1.0;
  certify->add_option("--eta", c_eta, "eta map label")->required();
  certify
      ->add_option("--check", c_check,
                   "one of: invex, condition_c, preinvex")
      ->required();
  certify->add_option("--fn", c_fn, "function label (preinvex check)");
  certify->add_option("--target", c_target,
                      "fn, abs_deriv, or abs_deriv_pow (preinvex check)");
  certify->add_option("--q", c_q, "exponent for abs_deriv_pow");
  certify->add_option("--lo", c_lo, "region lower end (preinvex check)");
  certify->add_option("--hi", c_hi, "region upper end (preinvex check)");

  // bound
  auto* bound = app.add_subcommand(
      "bound", "Evaluate one bound, certifying its hypotheses first");
  std::string b_id;
  std::string b_fn;
  std::string b_eta = "trivial";
  double b_a = 0.0;
  double b_b = 1.0;
  std::optional<double> b_x;
  double b_q = 2.0;
  std::optional<double> b_M;
  bound->add_option("--id", b_id, "bound identifier, e.g. THM22_21")
      ->required();
  bound->add_option("--fn", b_fn, "function label")->required();
  bound->add_option("--eta", b_eta, "eta map label");
  bound->add_option("--a", b_a, "anchor a")->required();
  bound->add_option("--b", b_b, "anchor b")->required();
  bound->add_option("--x", b_x, "evaluation point (default: midpoint)");
  bound->add_option("--q", b_q, "exponent for the q-dependent bounds");
  bound->add_option("--M", b_M, "derivative bound (default: grid maximum)");

  // sharpness
  auto* sharp = app.add_subcommand(
      "sharpness", "Sweep lhs/rhs over x and report the supremum ratio");
  std::string s_id;
  std::string s_fn;
  std::string s_eta = "trivial";
  double s_a = 0.0;
  double s_b = 1.0;
  double s_q = 2.0;
  int s_points = kSweepPoints;
  sharp->add_option("--id", s_id, "bound identifier")->required();
  sharp->add_option("--fn", s_fn, "function label")->required();
  sharp->add_option("--eta", s_eta, "eta map label");
  sharp->add_option("--a", s_a, "anchor a")->required();
  sharp->add_option("--b", s_b, "anchor b")->required();
  sharp->add_option("--q", s_q, "exponent for the q-dependent bounds");
  sharp->add_option("--points", s_points, "grid resolution");

  // run
  auto* run = app.add_subcommand(
      "run", "Run an experiment config and emit CSV or a text report");
  std::string r_suite;
  std::string r_config;
  std::string r_out;
  std::string r_format = "csv";
  std::optional<std::uint64_t> r_seed;
  run->add_option("--suite", r_suite, "built-in suite name: paper");
  run->add_option("--config", r_config, "path to a JSON config");
  run->add_option("--out", r_out, "write CSV here instead of stdout");
  run->add_option("--format", r_format, "csv or text")
      ->check(CLI::IsMember({"csv", "text"}));
  run->add_option("--seed", r_seed, "override the config seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (certify->parsed()) {
      EtaMap map = eta_map(c_eta);
      SamplingPlan plan;
      CertReport report;
      if (c_check == "invex") {
        report = check_invex_set(map, plan);
      } else if (c_check == "condition_c") {
        report = check_condition_c(map, plan);
      } else if (c_check == "preinvex") {
        if (c_fn.empty()) {
          std::cerr << "--fn is required for the preinvex check\n";
          return 1;
        }
        ScalarFn fn = fn_from_label(c_fn);
        RealFn target;
        if (c_target == "fn") {
          target = as_fn(fn);
        } else if (c_target == "abs_deriv") {
          target = abs_deriv(fn);
        } else if (c_target == "abs_deriv_pow") {
          target = abs_deriv_pow(fn, c_q);
        } else {
          std::cerr << "unknown target: " << c_target << "\n";
          return 1;
        }
        report = check_preinvex(target, map, Region{c_lo, c_hi}, plan);
      } else {
        std::cerr << "unknown check: " << c_check << "\n";
        return 1;
      }
      print_cert(report);
      return cert_exit(report);
    }

    if (bound->parsed()) {
      BoundId id = bound_id_from_string(b_id);
      ScalarFn fn = fn_from_label(b_fn);
      EtaMap map = eta_map(b_eta);

      bool classical = id == BoundId::ostrowski_1a ||
                       id == BoundId::lipschitz_1b ||
                       id == BoundId::kirmaci_1c || id == BoundId::kirmaci_1d ||
                       id == BoundId::kirmaci_1e || id == BoundId::kirmaci_1ee;
      BoundReport report;
      if (classical) {
        if (!(b_b > b_a)) {
          std::cerr << "classical bounds need b > a\n";
          return 1;
        }
        auto seg = InvexSegment::make(eta_map("trivial"), b_a, b_b);
        auto hyp = certify_for(id, fn, map, seg, b_q);
        if (hyp.failure) {
          std::cout << "hypothesis failed: " << *hyp.failure << "\n";
          return 2;
        }
        BoundParams params;
        params.q = b_q;
        if (id == BoundId::ostrowski_1a || id == BoundId::lipschitz_1b) {
          params.M = b_M ? *b_M : auto_M(fn, b_a, b_b);
        }
        double x = b_x.value_or(0.5 * (b_a + b_b));
        report = classical_bound(fn, b_a, b_b, x, id, params);
      } else {
        auto seg = InvexSegment::make(map, b_a, b_b);
        auto hyp = certify_for(id, fn, map, seg, b_q);
        if (hyp.failure) {
          std::cout << "hypothesis failed: " << *hyp.failure << "\n";
          return 2;
        }
        double x = b_x.value_or(seg.midpoint());
        switch (id) {
          case BoundId::thm22_21:
            report = preinvex_derivative_bound(fn, map, seg, x);
            break;
          case BoundId::thm22_2b:
            report = preinvex_derivative_bound_improved(fn, map, seg, x,
                                                        hyp.condition_c);
            break;
          case BoundId::thm23_22: {
            BoundParams params;
            params.q = b_q;
            report = holder_bound(fn, map, seg, x, params, hyp.condition_c);
            break;
          }
          case BoundId::thm23_cor_m: {
            double M = b_M ? *b_M : auto_M(fn, seg.lo(), seg.hi());
            report = bounded_derivative_bound(fn, map, seg, x, M, b_q,
                                              hyp.condition_c);
            break;
          }
          case BoundId::thm23_cor_s1:
            report = holder_midpoint_bound(fn, map, seg, b_q, hyp.condition_c);
            break;
          case BoundId::thm24:
            report = power_mean_bound(fn, map, seg, x, b_q);
            break;
          case BoundId::thm24_cor_s2:
            report = power_mean_midpoint_bound(fn, map, seg, b_q);
            break;
          case BoundId::thm24_remark_b:
            report = power_mean_bound_endpoint_variant(fn, map, seg, x, b_q,
                                                       hyp.condition_c);
            break;
          default:
            break;
        }
      }
      print_bound(report);
      return report.holds ? 0 : 2;
    }

    if (sharp->parsed()) {
      BoundId id = bound_id_from_string(s_id);
      ScalarFn fn = fn_from_label(s_fn);
      EtaMap map = eta_map(s_eta);
      auto seg = InvexSegment::make(map, s_a, s_b);
      auto hyp = certify_for(id, fn, map, seg, s_q);
      if (hyp.failure) {
        std::cout << "hypothesis failed: " << *hyp.failure << "\n";
        return 2;
      }
      BoundParams params;
      params.q = s_q;
      auto surface =
          ratio_sweep(fn, map, seg, id, params, hyp.condition_c, s_points);
      std::cout << "bound: " << to_string(surface.bound_id) << "\n"
                << "samples: " << surface.samples.size() << " ("
                << surface.excluded_count << " excluded)\n";
      if (!surface.conclusive) {
        std::cout << "inconclusive: the bound vanished at every sample\n";
        return 3;
      }
      std::cout << "sup ratio: " << format_double(surface.sup_ratio) << "\n"
                << "at x: " << format_double(surface.sup_x) << "\n";
      return surface.sup_ratio <= 1.0 + 1e-9 ? 0 : 2;
    }

    if (run->parsed()) {
      if (r_suite.empty() == r_config.empty()) {
        std::cerr << "pass exactly one of --suite or --config\n";
        return 1;
      }
      ExperimentConfig config;
      if (!r_suite.empty()) {
        if (r_suite != "paper") {
          std::cerr << "unknown suite: " << r_suite << "\n";
          return 1;
        }
        config = paper_suite_config();
      } else {
        config = load_config(r_config);
      }
      if (r_seed) config.seed = *r_seed;
      // Command-line flags win over the config's output block.
      if (r_out.empty()) r_out = config.output_path;
      if (run->count("--format") == 0 && !config.output_format.empty()) {
        r_format = config.output_format;
      }

      auto report = run_experiment(config);
      if (!r_out.empty()) {
        write_csv_file(report, r_out);
      }
      if (r_format == "text") {
        write_text(report, std::cout);
      } else if (r_out.empty()) {
        write_csv(report, std::cout);
      }
      return exit_code(report);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
