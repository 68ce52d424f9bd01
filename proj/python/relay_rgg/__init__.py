"""Relay random geometric graphs: constructions, bounds, and experiments."""

from relay_rgg._core import (
    ConfigError,
    DetGraph,
    GLocGraph,
    InvariantViolation,
    build_gloc,
    build_max_weight_relay_rgg,
    build_relay_rgg,
    check_eup,
    chernoff_upper,
    distance_events,
    exact_two_sided_tail,
    exp_weight,
    graph_distance,
    stretch_tail_bound,
    two_point_tail_bound,
    oracle_max_weight_path,
    relay_distance,
    run_and_write,
    run_experiment,
    sample_points,
    tail_bound_calculators,
    two_point_target,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "DetGraph",
    "GLocGraph",
    "InvariantViolation",
    "build_gloc",
    "build_max_weight_relay_rgg",
    "build_relay_rgg",
    "check_eup",
    "chernoff_upper",
    "distance_events",
    "exact_two_sided_tail",
    "exp_weight",
    "graph_distance",
    "stretch_tail_bound",
    "two_point_tail_bound",
    "oracle_max_weight_path",
    "relay_distance",
    "run_and_write",
    "run_experiment",
    "sample_points",
    "tail_bound_calculators",
    "two_point_target",
]
