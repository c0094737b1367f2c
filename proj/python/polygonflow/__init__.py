"""Python bindings for the polygonflow C++ library."""

from ._core import (
    DivisionScheme,
    Polygon,
    PolygonflowError,
    center_and_normalize,
    centroid,
    closed_power_C,
    closed_power_S,
    coefficient_matrix,
    continued_fraction,
    damping_argmin_scan,
    damping_factor,
    eigenpair,
    exact_period,
    fit_ellipse,
    hetero_period_lcm,
    iterate,
    left_fixed_vector,
    near_periods,
    paper_sigma,
    predict_limit_point,
    predict_vertex_vectors,
    predicted_norm,
    project_D2,
    random_polygon,
    rational_multiple_of_pi,
    roots_of_unity,
    rotation_number,
    svd_2x2,
)

__all__ = [name for name in dir() if not name.startswith("_")]
