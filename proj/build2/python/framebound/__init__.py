"""Generalized tight p-frame constants and sharp spectral bounds for
linearly transformed symmetric domains."""

from ._core import (
    buckling_bound,
    chi2_moment,
    chi2_moment_exact,
    cycle_index_string,
    ellipse_perimeter,
    enumerate_partitions,
    fp,
    fp_exact,
    fp_from_matrix,
    fp_montecarlo,
    fp_sphere_2d,
    fractional_bound,
    group_order,
    john_bound,
    klein_gordon_bound,
    max_frame_order,
    molien,
    molien_polynomial,
    moment,
    moment_ratio,
    multiplier_transform,
    orbit_average,
    perimeter_bound,
    plate_bound,
    sandwich,
    schatten,
    squared_singular_values,
    subordinator_bound,
    tables,
    transformed_moment,
    two_dim_reciprocity,
    verify_frame,
)

__all__ = [
    "buckling_bound",
    "chi2_moment",
    "chi2_moment_exact",
    "cycle_index_string",
    "ellipse_perimeter",
    "enumerate_partitions",
    "fp",
    "fp_exact",
    "fp_from_matrix",
    "fp_montecarlo",
    "fp_sphere_2d",
    "fractional_bound",
    "group_order",
    "john_bound",
    "klein_gordon_bound",
    "max_frame_order",
    "molien",
    "molien_polynomial",
    "moment",
    "moment_ratio",
    "multiplier_transform",
    "orbit_average",
    "perimeter_bound",
    "plate_bound",
    "sandwich",
    "schatten",
    "squared_singular_values",
    "subordinator_bound",
    "tables",
    "transformed_moment",
    "two_dim_reciprocity",
    "verify_frame",
]
