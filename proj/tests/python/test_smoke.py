import json

import pytest

import ostrinv


def test_version():
    assert ostrinv.__version__ == "0.1.0"


def test_registries():
    assert len(ostrinv.eta_map_labels()) == 5
    assert "nonzero_reals" in ostrinv.eta_map_labels()
    assert len(ostrinv.scalar_fn_labels()) == 6
    ids = ostrinv.bound_ids()
    assert len(ids) == 14
    assert "THM22_21" in ids
    assert "KIRMACI_1EE" in ids
    assert len(ostrinv.reduction_ids()) == 5
    assert len(ostrinv.check_names()) == 6


def test_eta_and_certifiers():
    assert ostrinv.eval_eta("trivial", 3.0, 1.0) == 2.0
    assert ostrinv.check_invex_set("trivial").verdict == "certified"
    report = ostrinv.check_condition_c("double_step")
    assert report.verdict == "refuted"
    assert report.witness is not None


def test_preinvex_check():
    good = ostrinv.check_preinvex("square", "trivial", 0.0, 1.0)
    assert good.verdict == "certified"
    bad = ostrinv.check_preinvex("poly[0;0;-1]", "trivial", -2.0, 2.0,
                                 target="fn")
    assert bad.verdict == "refuted"


def test_quadrature_and_identity():
    quad = ostrinv.integrate(lambda x: x * x, 0.0, 1.0)
    assert abs(quad.value - 1.0 / 3.0) < 1e-12
    assert quad.converged
    assert abs(ostrinv.mean_value("square", "trivial", 0.0, 1.0) - 1.0 / 3.0) < 1e-10
    res = ostrinv.lemma21_residual("cube", "trivial", 0.0, 1.0, 0.25)
    assert res.residual < 1e-8


def test_evaluate_bound():
    report = ostrinv.evaluate_bound("THM22_21", "square", "trivial", 0.0, 1.0)
    assert report.holds
    assert abs(report.lhs - 1.0 / 12.0) < 1e-10
    assert abs(report.rhs - 0.25) < 1e-12
    with pytest.raises(ValueError):
        ostrinv.evaluate_bound("THM22_21", "quartic_plus_x", "trivial", -2.0, 1.0)


def test_reduction_and_best_constant():
    assert ostrinv.verify_reduction("THM22_MID_TO_1C").ok
    best = ostrinv.best_constant(["identity", "square", "cube"], "trivial",
                                 0.0, 1.0)
    assert abs(best.estimate - 1.0 / 6.0) < 1e-12


def test_run_experiment_dict_and_csv():
    report = ostrinv.run_experiment({
        "functions": ["square"],
        "bounds": ["THM22_21"],
        "x_resolution": 3,
    })
    assert report.summary.rows == 3
    assert report.summary.violations == 0
    assert all(row.holds for row in report.rows)
    assert ostrinv.exit_code(report) == 0
    csv = ostrinv.write_csv(report)
    header = csv.splitlines()[0]
    assert header == "function,eta,a,b,bound_id,x,q,lhs,rhs,slack,holds,skip_reason"
    assert report.tool_version == ostrinv.__version__


def test_paper_suite_config_round_trips():
    config = json.loads(ostrinv.paper_suite_config())
    assert config["functions"][0] == "identity"
    assert config["x_resolution"] == 129
