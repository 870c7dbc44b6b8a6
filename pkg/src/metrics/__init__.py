"""Quality measures, Err estimators, theoretical bounds and inequality checks."""

from metrics.bounds import (
    kz_bound,
    kz_ratio_bound,
    theorem_bound_cn_alpha,
    theoretical_bound,
    theoretical_cn_alpha_size,
    theoretical_cn_size,
)
from metrics.checks import (
    CompositionReport,
    ErrToRReport,
    MergeReport,
    check_composition,
    check_err_to_r,
    check_merge_bound,
    merge_pass_rate,
)
from metrics.err import (
    DEFAULT_CANDIDATES,
    CandidateCenters,
    CenterGrid,
    ErrAlphaEstimate,
    alpha_candidates,
    brute_force_err_1d,
    candidate_costs,
    estimate_err,
    estimate_err_alpha,
    grid_candidates,
    per_candidate_err,
    sample_candidates,
)
from metrics.quality import QualityReport, empirical_ratio, quality_report

__all__ = [
    "DEFAULT_CANDIDATES",
    "CandidateCenters",
    "CenterGrid",
    "CompositionReport",
    "ErrAlphaEstimate",
    "ErrToRReport",
    "MergeReport",
    "QualityReport",
    "alpha_candidates",
    "brute_force_err_1d",
    "candidate_costs",
    "check_composition",
    "check_err_to_r",
    "check_merge_bound",
    "empirical_ratio",
    "estimate_err",
    "estimate_err_alpha",
    "grid_candidates",
    "kz_bound",
    "kz_ratio_bound",
    "merge_pass_rate",
    "per_candidate_err",
    "quality_report",
    "sample_candidates",
    "theorem_bound_cn_alpha",
    "theoretical_bound",
    "theoretical_cn_alpha_size",
    "theoretical_cn_size",
]
