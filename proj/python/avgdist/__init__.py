"""Python bindings for the average-distance toolkit."""

from ._core import (  # noqa: F401
    FiniteMetric,
    RegularGraph,
    ValidationError,
    adversary_game,
    apply_transform,
    average_distance,
    cesaro_average,
    complete_graph,
    conductance,
    cone_distance,
    cone_space,
    cone_truncation_distortion,
    cycle_graph,
    decompose,
    diameter,
    distortion,
    edge_completion,
    girth,
    metric_to_3regular_distortion,
    normalized_spectrum,
    p_barycentric_check,
    p_barycentric_counterexample,
    poincare_estimate,
    random_regular,
    sandwich_check,
    shortest_path_metric,
    small_alpha_adversary,
    three_regularize,
    transform_cone_distortion,
    universal_query_set,
    validate_metric,
    zigzag_iterate,
    zigzag_product,
)

__all__ = [name for name in dir() if not name.startswith("_")]
