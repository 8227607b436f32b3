#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ostrinv/harness.hpp"
#include "ostrinv/registry.hpp"
#include "ostrinv/version.hpp"

namespace py = pybind11;
using namespace ostrinv;

namespace {

RealFn make_target(const ScalarFn& fn, const std::string& target, double q) {
  if (target == "fn") return as_fn(fn);
  if (target == "abs_deriv") return abs_deriv(fn);
  if (target == "abs_deriv_pow") return abs_deriv_pow(fn, q);
  throw std::invalid_argument("unknown target: " + target);
}

bool id_is_classical(BoundId id) {
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

double grid_M(const ScalarFn& fn, double lo, double hi) {
  double worst = 0.0;
  for (double x : linspace(lo, hi, 129)) {
    worst = std::max(worst, std::abs(fn.deriv(x)));
  }
  return worst;
}

// Mirrors the command-line `bound` verb: certify the hypotheses, then
// evaluate. Raises on refuted or inconclusive hypotheses.
BoundReport evaluate_bound_by_label(const std::string& id_str,
                                    const std::string& fn_label,
                                    const std::string& eta_label, double a,
                                    double b, std::optional<double> x,
                                    double q, std::optional<double> M) {
  BoundId id = bound_id_from_string(id_str);
  ScalarFn fn = fn_from_label(fn_label);
  EtaMap map = eta_map(eta_label);
  SamplingPlan plan;

  if (id_is_classical(id)) {
    if (!(b > a)) throw std::invalid_argument("classical bounds need b > a");
    const EtaMap trivial = eta_map("trivial");
    if (id == BoundId::kirmaci_1c || id == BoundId::kirmaci_1d ||
        id == BoundId::kirmaci_1e || id == BoundId::kirmaci_1ee) {
      RealFn target =
          id == BoundId::kirmaci_1c ? abs_deriv(fn) : abs_deriv_pow(fn, q);
      auto cert = check_preinvex(target, trivial, Region{a, b}, plan);
      if (cert.verdict != Verdict::certified) {
        throw std::domain_error(
            std::string("convexity hypothesis on [a, b]: ") +
            to_string(cert.verdict));
      }
    }
    BoundParams params;
    params.q = q;
    if (id == BoundId::ostrowski_1a || id == BoundId::lipschitz_1b) {
      params.M = M ? *M : grid_M(fn, a, b);
    }
    return classical_bound(fn, a, b, x.value_or(0.5 * (a + b)), id, params);
  }

  auto seg = InvexSegment::make(map, a, b);
  auto invex = check_invex_set(map, plan);
  if (invex.verdict != Verdict::certified) {
    throw std::domain_error(std::string("invex set: ") +
                            to_string(invex.verdict));
  }
  CertReport condc;
  bool needs_c = id == BoundId::thm22_2b || id == BoundId::thm23_22 ||
                 id == BoundId::thm23_cor_m || id == BoundId::thm23_cor_s1 ||
                 id == BoundId::thm24_remark_b;
  if (needs_c) {
    condc = check_condition_c(map, plan);
    if (condc.verdict != Verdict::certified) {
      throw std::domain_error(std::string("condition C: ") +
                              to_string(condc.verdict));
    }
  }
  RealFn target = (id == BoundId::thm22_21 || id == BoundId::thm22_2b)
                      ? abs_deriv(fn)
                      : abs_deriv_pow(fn, q);
  auto pre = check_preinvex(target, map, seg, plan);
  if (pre.verdict != Verdict::certified) {
    throw std::domain_error(
        std::string("preinvexity of the derivative target: ") +
        to_string(pre.verdict));
  }

  double at = x.value_or(seg.midpoint());
  switch (id) {
    case BoundId::thm22_21:
      return preinvex_derivative_bound(fn, map, seg, at);
    case BoundId::thm22_2b:
      return preinvex_derivative_bound_improved(fn, map, seg, at, condc);
    case BoundId::thm23_22: {
      BoundParams params;
      params.q = q;
      return holder_bound(fn, map, seg, at, params, condc);
    }
    case BoundId::thm23_cor_m:
      return bounded_derivative_bound(fn, map, seg, at,
                                      M ? *M : grid_M(fn, seg.lo(), seg.hi()),
                                      q, condc);
    case BoundId::thm23_cor_s1:
      return holder_midpoint_bound(fn, map, seg, q, condc);
    case BoundId::thm24:
      return power_mean_bound(fn, map, seg, at, q);
    case BoundId::thm24_cor_s2:
      return power_mean_midpoint_bound(fn, map, seg, q);
    case BoundId::thm24_remark_b:
      return power_mean_bound_endpoint_variant(fn, map, seg, at, q, condc);
    default:
      throw std::invalid_argument("unknown bound id");
  }
}

}  // namespace

PYBIND11_MODULE(_ostrinv, m) {
  m.doc() = "Numerical evaluation of midpoint-error bounds for functions "
            "whose derivatives are preinvex";
  m.attr("__version__") = kVersion;

  py::class_<CertWitness>(m, "CertWitness")
      .def_readonly("x", &CertWitness::x)
      .def_readonly("y", &CertWitness::y)
      .def_readonly("t", &CertWitness::t)
      .def_readonly("t2", &CertWitness::t2)
      .def("__repr__", [](const CertWitness& w) {
        std::ostringstream os;
        os << "CertWitness(x=" << w.x << ", y=" << w.y << ", t=" << w.t << ")";
        return os.str();
      });

  py::class_<CertReport>(m, "CertReport")
      .def_property_readonly(
          "verdict", [](const CertReport& r) { return to_string(r.verdict); })
      .def_readonly("samples_used", &CertReport::samples_used)
      .def_readonly("samples_skipped", &CertReport::samples_skipped)
      .def_readonly("samples_perturbed", &CertReport::samples_perturbed)
      .def_readonly("worst_violation", &CertReport::worst_violation)
      .def_readonly("witness", &CertReport::witness)
      .def("__repr__", [](const CertReport& r) {
        std::ostringstream os;
        os << "CertReport(" << to_string(r.verdict)
           << ", worst_violation=" << r.worst_violation << ")";
        return os.str();
      });

  py::class_<QuadResult>(m, "QuadResult")
      .def_readonly("value", &QuadResult::value)
      .def_readonly("err_estimate", &QuadResult::err_estimate)
      .def_readonly("evals", &QuadResult::evals)
      .def_readonly("converged", &QuadResult::converged);

  py::class_<IdentityResidual>(m, "IdentityResidual")
      .def_readonly("lhs", &IdentityResidual::lhs)
      .def_readonly("rhs", &IdentityResidual::rhs)
      .def_readonly("residual", &IdentityResidual::residual)
      .def_readonly("err_bound", &IdentityResidual::err_bound);

  py::class_<BoundReport>(m, "BoundReport")
      .def_property_readonly(
          "bound_id",
          [](const BoundReport& r) { return to_string(r.bound_id); })
      .def_readonly("lhs", &BoundReport::lhs)
      .def_readonly("rhs", &BoundReport::rhs)
      .def_readonly("slack", &BoundReport::slack)
      .def_readonly("holds", &BoundReport::holds)
      .def_readonly("bracket_a", &BoundReport::bracket_a)
      .def_readonly("bracket_b", &BoundReport::bracket_b)
      .def("__repr__", [](const BoundReport& r) {
        std::ostringstream os;
        os << "BoundReport(" << to_string(r.bound_id) << ", lhs=" << r.lhs
           << ", rhs=" << r.rhs << ", holds=" << (r.holds ? "True" : "False")
           << ")";
        return os.str();
      });

  py::class_<ReductionReport>(m, "ReductionReport")
      .def_property_readonly(
          "reduction_id",
          [](const ReductionReport& r) { return to_string(r.id); })
      .def_readonly("max_abs_diff", &ReductionReport::max_abs_diff)
      .def_readonly("min_dominance_slack", &ReductionReport::min_dominance_slack)
      .def_readonly("cases", &ReductionReport::cases)
      .def_readonly("pass_", &ReductionReport::pass)
      .def_property_readonly("ok",
                             [](const ReductionReport& r) { return r.pass; });

  py::class_<SubadditivityReport>(m, "SubadditivityReport")
      .def_readonly("lhs", &SubadditivityReport::lhs)
      .def_readonly("rhs", &SubadditivityReport::rhs)
      .def_readonly("slack", &SubadditivityReport::slack)
      .def_readonly("holds", &SubadditivityReport::holds);

  py::class_<IntegratedMeanReport>(m, "IntegratedMeanReport")
      .def_readonly("mean_lhs", &IntegratedMeanReport::mean_lhs)
      .def_readonly("mean_rhs", &IntegratedMeanReport::mean_rhs)
      .def_readonly("mean_slack", &IntegratedMeanReport::mean_slack)
      .def_readonly("partial_lo_worst_slack",
                    &IntegratedMeanReport::partial_lo_worst_slack)
      .def_readonly("partial_hi_worst_slack",
                    &IntegratedMeanReport::partial_hi_worst_slack)
      .def_readonly("quad_err", &IntegratedMeanReport::quad_err)
      .def_readonly("holds", &IntegratedMeanReport::holds);

  py::class_<RatioSample>(m, "RatioSample")
      .def_readonly("x", &RatioSample::x)
      .def_readonly("lhs", &RatioSample::lhs)
      .def_readonly("rhs", &RatioSample::rhs)
      .def_readonly("ratio", &RatioSample::ratio)
      .def_readonly("excluded", &RatioSample::excluded);

  py::class_<RatioSurface>(m, "RatioSurface")
      .def_property_readonly(
          "bound_id",
          [](const RatioSurface& r) { return to_string(r.bound_id); })
      .def_readonly("q", &RatioSurface::q)
      .def_readonly("samples", &RatioSurface::samples)
      .def_readonly("sup_ratio", &RatioSurface::sup_ratio)
      .def_readonly("sup_x", &RatioSurface::sup_x)
      .def_readonly("excluded_count", &RatioSurface::excluded_count)
      .def_readonly("conclusive", &RatioSurface::conclusive);

  py::class_<BestConstant>(m, "BestConstant")
      .def_readonly("estimate", &BestConstant::estimate)
      .def_readonly("attained_x", &BestConstant::attained_x)
      .def_readonly("attained_fn", &BestConstant::attained_fn)
      .def_readonly("reference", &BestConstant::reference);

  py::class_<RunRow>(m, "RunRow")
      .def_readonly("function", &RunRow::function)
      .def_readonly("eta", &RunRow::eta)
      .def_readonly("a", &RunRow::a)
      .def_readonly("b", &RunRow::b)
      .def_property_readonly(
          "bound_id", [](const RunRow& r) { return to_string(r.bound_id); })
      .def_readonly("x", &RunRow::x)
      .def_readonly("q", &RunRow::q)
      .def_readonly("lhs", &RunRow::lhs)
      .def_readonly("rhs", &RunRow::rhs)
      .def_readonly("slack", &RunRow::slack)
      .def_readonly("holds", &RunRow::holds)
      .def_readonly("skip_reason", &RunRow::skip_reason);

  py::class_<CheckResult>(m, "CheckResult")
      .def_readonly("name", &CheckResult::name)
      .def_readonly("passed", &CheckResult::pass)
      .def_readonly("detail", &CheckResult::detail);

  py::class_<RunSummary>(m, "RunSummary")
      .def_readonly("rows", &RunSummary::rows)
      .def_readonly("evaluated", &RunSummary::evaluated)
      .def_readonly("skipped", &RunSummary::skipped)
      .def_readonly("violations", &RunSummary::violations)
      .def_readonly("checks_passed", &RunSummary::checks_passed)
      .def_readonly("checks_failed", &RunSummary::checks_failed)
      .def_readonly("max_ratio", &RunSummary::max_ratio);

  py::class_<RunReport>(m, "RunReport")
      .def_readonly("config_fingerprint", &RunReport::config_fingerprint)
      .def_readonly("tool_version", &RunReport::tool_version)
      .def_readonly("rows", &RunReport::rows)
      .def_readonly("checks", &RunReport::checks)
      .def_readonly("summary", &RunReport::summary);

  m.def("eta_map_labels", &eta_map_labels);
  m.def("scalar_fn_labels", &scalar_fn_labels);
  m.def("bound_ids", [] {
    std::vector<std::string> out;
    for (BoundId id : all_bound_ids()) out.push_back(to_string(id));
    return out;
  });
  m.def("reduction_ids", [] {
    std::vector<std::string> out;
    for (ReductionId id : all_reduction_ids()) out.push_back(to_string(id));
    return out;
  });
  m.def("check_names", [] { return all_check_names(); });

  m.def(
      "eval_eta",
      [](const std::string& eta, double x, double y) {
        EtaMap map = eta_map(eta);
        return eval_eta(map, x, y);
      },
      py::arg("eta"), py::arg("x"), py::arg("y"),
      "Evaluate a registered eta map at (x, y)");

  m.def(
      "check_invex_set",
      [](const std::string& eta) {
        return check_invex_set(eta_map(eta), SamplingPlan{});
      },
      py::arg("eta"));
  m.def(
      "check_condition_c",
      [](const std::string& eta) {
        return check_condition_c(eta_map(eta), SamplingPlan{});
      },
      py::arg("eta"));
  m.def(
      "check_preinvex",
      [](const std::string& fn, const std::string& eta, double lo, double hi,
         const std::string& target, double q) {
        ScalarFn f = fn_from_label(fn);
        return check_preinvex(make_target(f, target, q), eta_map(eta),
                              Region{lo, hi}, SamplingPlan{});
      },
      py::arg("fn"), py::arg("eta"), py::arg("lo"), py::arg("hi"),
      py::arg("target") = "abs_deriv", py::arg("q") = 2.0);

  m.def(
      "integrate",
      [](const std::function<double(double)>& f, double lo, double hi,
         double tol) { return integrate(f, lo, hi, tol); },
      py::arg("f"), py::arg("lo"), py::arg("hi"), py::arg("tol") = kQuadTol);
  m.def(
      "mean_value",
      [](const std::string& fn, const std::string& eta, double a, double b) {
        EtaMap map = eta_map(eta);
        auto seg = InvexSegment::make(map, a, b);
        return mean_value(fn_from_label(fn), seg);
      },
      py::arg("fn"), py::arg("eta"), py::arg("a"), py::arg("b"));
  m.def(
      "lemma21_residual",
      [](const std::string& fn, const std::string& eta, double a, double b,
         double x) {
        EtaMap map = eta_map(eta);
        auto seg = InvexSegment::make(map, a, b);
        return lemma21_residual(fn_from_label(fn), map, seg, x);
      },
      py::arg("fn"), py::arg("eta"), py::arg("a"), py::arg("b"), py::arg("x"));

  m.def("evaluate_bound", &evaluate_bound_by_label, py::arg("bound_id"),
        py::arg("fn"), py::arg("eta"), py::arg("a"), py::arg("b"),
        py::arg("x") = std::nullopt, py::arg("q") = 2.0,
        py::arg("M") = std::nullopt,
        "Certify the bound's hypotheses, then evaluate it");

  m.def(
      "verify_reduction",
      [](const std::string& id) {
        return verify_reduction(reduction_id_from_string(id));
      },
      py::arg("reduction_id"));

  m.def(
      "check_subadditivity",
      [](const std::vector<std::pair<double, double>>& pairs, double s) {
        return check_subadditivity(pairs, s);
      },
      py::arg("pairs"), py::arg("s"));

  m.def(
      "check_integrated_mean",
      [](const std::string& fn, const std::string& eta, double a, double b,
         double q) {
        EtaMap map = eta_map(eta);
        auto seg = InvexSegment::make(map, a, b);
        auto condc = check_condition_c(map, SamplingPlan{});
        return check_integrated_mean_bound(fn_from_label(fn), map, seg, q,
                                           condc);
      },
      py::arg("fn"), py::arg("eta"), py::arg("a"), py::arg("b"),
      py::arg("q") = 2.0);

  m.def(
      "ratio_sweep",
      [](const std::string& id, const std::string& fn, const std::string& eta,
         double a, double b, double q, int points) {
        BoundId bid = bound_id_from_string(id);
        EtaMap map = eta_map(eta);
        ScalarFn f = fn_from_label(fn);
        auto seg = InvexSegment::make(map, a, b);
        CertReport condc;
        switch (bid) {
          case BoundId::thm22_2b:
          case BoundId::thm23_22:
          case BoundId::thm23_cor_m:
          case BoundId::thm23_cor_s1:
          case BoundId::thm24_remark_b:
            condc = check_condition_c(map, SamplingPlan{});
            break;
          default:
            break;
        }
        BoundParams params;
        params.q = q;
        return ratio_sweep(f, map, seg, bid, params, condc, points);
      },
      py::arg("bound_id"), py::arg("fn"), py::arg("eta"), py::arg("a"),
      py::arg("b"), py::arg("q") = 2.0, py::arg("points") = kSweepPoints);

  m.def(
      "best_constant",
      [](const std::vector<std::string>& fns, const std::string& eta, double a,
         double b) {
        std::vector<ScalarFn> fs;
        for (const auto& label : fns) fs.push_back(fn_from_label(label));
        return best_constant_estimate(fs, eta_map(eta), a, b);
      },
      py::arg("fns"), py::arg("eta"), py::arg("a"), py::arg("b"));

  m.def("paper_suite_config",
        [] { return config_to_json(paper_suite_config()); });
  m.def(
      "run_experiment",
      [](const std::string& config_json) {
        return run_experiment(parse_config(config_json));
      },
      py::arg("config_json"),
      "Run an experiment from a JSON config string; see also run_suite()");
  m.def("run_suite", [](const std::string& name) {
    if (name != "paper") throw std::invalid_argument("unknown suite: " + name);
    return run_experiment(paper_suite_config());
  });

  m.def("write_csv", [](const RunReport& report) {
    std::ostringstream os;
    write_csv(report, os);
    return os.str();
  });
  m.def("write_csv_file", &write_csv_file, py::arg("report"), py::arg("path"));
  m.def("write_text", [](const RunReport& report) {
    std::ostringstream os;
    write_text(report, os);
    return os.str();
  });
  m.def("exit_code", &exit_code, py::arg("report"));
  m.def("format_double", &format_double, py::arg("value"));
}
