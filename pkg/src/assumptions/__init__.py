"""Cost-stability and limited-outlier checks on observed data."""

from assumptions.stability import (
    RADIUS_RATIO_LIMIT,
    AssumptionReport,
    GammaEstimate,
    RadiusReport,
    StabilityVerdict,
    assumption_report,
    check_stability,
    estimate_gamma,
    radius_ratios,
    stability_threshold,
    trimmed_radius_ratios,
)

__all__ = [
    "RADIUS_RATIO_LIMIT",
    "AssumptionReport",
    "GammaEstimate",
    "RadiusReport",
    "StabilityVerdict",
    "assumption_report",
    "check_stability",
    "estimate_gamma",
    "radius_ratios",
    "stability_threshold",
    "trimmed_radius_ratios",
]
