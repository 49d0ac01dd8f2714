import json

from ._core import (
    CertificateReport,
    EstimationResult,
    Instance,
    SolveResult,
    build_and_check_certificate,
    condition_report,
    estimate_parameters,
    generate_gsbm,
    is_cluster_matrix,
    lrps,
    misclassified_pairs,
    round_by_mean,
    slink,
    solve,
    spectral_cluster,
)
from ._core import _run_sweep


def run_sweep(config):
    """Runs a sweep described by a dict (or JSON string) with SweepSpec field names.

    Returns one dict per (method, q) row; p_min_success is None when no p succeeded.
    """
    if not isinstance(config, str):
        config = json.dumps(config)
    return _run_sweep(config)


__all__ = [
    "CertificateReport",
    "EstimationResult",
    "Instance",
    "SolveResult",
    "build_and_check_certificate",
    "condition_report",
    "estimate_parameters",
    "generate_gsbm",
    "is_cluster_matrix",
    "lrps",
    "misclassified_pairs",
    "round_by_mean",
    "run_sweep",
    "slink",
    "solve",
    "spectral_cluster",
]
