"""Zero-sum cycle analysis of flexible polyhedra."""

from flexcycle._core import (
    FlexcycleError,
    SampledFlex,
    Skeleton,
    __version__,
    analyze_json,
    classify_edges,
    constant_distance_pairs,
    edge_length_map,
    find_zero_sum_cycle,
    flex_dimension,
    flip,
    sign_assignment,
    trace_flex,
    triangulate_fan,
    verify_certificate,
)

__all__ = [
    "FlexcycleError",
    "SampledFlex",
    "Skeleton",
    "__version__",
    "analyze_json",
    "classify_edges",
    "constant_distance_pairs",
    "edge_length_map",
    "find_zero_sum_cycle",
    "flex_dimension",
    "flip",
    "sign_assignment",
    "trace_flex",
    "triangulate_fan",
    "verify_certificate",
]
