"""Numerical evaluation of midpoint-error bounds for functions whose
derivatives are preinvex with respect to an eta map.

Thin wrapper over the `_ostrinv` extension; `run_experiment` additionally
accepts a config dict.
"""

import json as _json

from ._ostrinv import (  # noqa: F401
    BestConstant,
    BoundReport,
    CertReport,
    CertWitness,
    CheckResult,
    IdentityResidual,
    IntegratedMeanReport,
    QuadResult,
    RatioSample,
    RatioSurface,
    ReductionReport,
    RunReport,
    RunRow,
    RunSummary,
    SubadditivityReport,
    __version__,
    best_constant,
    bound_ids,
    check_condition_c,
    check_integrated_mean,
    check_invex_set,
    check_names,
    check_preinvex,
    check_subadditivity,
    eta_map_labels,
    eval_eta,
    evaluate_bound,
    exit_code,
    format_double,
    integrate,
    lemma21_residual,
    mean_value,
    paper_suite_config,
    ratio_sweep,
    reduction_ids,
    run_suite,
    scalar_fn_labels,
    verify_reduction,
    write_csv,
    write_csv_file,
    write_text,
)
from ._ostrinv import run_experiment as _run_experiment


def run_experiment(config):
    """Run an experiment from a JSON string or a config dict."""
    if isinstance(config, dict):
        config = _json.dumps(config)
    return _run_experiment(config)
