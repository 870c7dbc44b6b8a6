"""Worked instances with known optima."""

from synthetic.instances import (
    beta_sites,
    gen_beta_grid,
    gen_lower_bound_instance,
    gen_outlier_median,
    gen_separated_clusters,
    gen_two_point,
    lower_bound_candidates,
)

__all__ = [
    "beta_sites",
    "gen_beta_grid",
    "gen_lower_bound_instance",
    "gen_outlier_median",
    "gen_separated_clusters",
    "gen_two_point",
    "lower_bound_candidates",
]
