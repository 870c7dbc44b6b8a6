"""The CN and CN-alpha coreset constructions."""

from coreset.cn import Algorithm, ConstructionError, build_cn, cn_size, sensitivities
from coreset.cn_alpha import (
    ClusterTrace,
    CnAlphaTrace,
    build_cn_alpha,
    cn_alpha_cap,
    filter_radius,
    uniform_sample_with_replacement,
)
from coreset.summary import ClusterSummary, CoresetSummary, coreset_summary

__all__ = [
    "Algorithm",
    "ClusterSummary",
    "ClusterTrace",
    "CnAlphaTrace",
    "ConstructionError",
    "CoresetSummary",
    "build_cn",
    "build_cn_alpha",
    "cn_alpha_cap",
    "cn_size",
    "coreset_summary",
    "filter_radius",
    "sensitivities",
    "uniform_sample_with_replacement",
]
