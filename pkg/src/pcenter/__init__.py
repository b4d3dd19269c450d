"""Compact MILP formulations and a two-step exact method for the discrete p-center problem."""

from .algorithm import AlgorithmTrace, step1, two_step_solve
from .bounds import Bounds, clamp_distances, fixture_bounds, initial_bounds, lb0, lb_star, snap_bounds, ub0
from .formulations import FORMULATIONS, Model, ModelStats, build, extract_radius, model_stats
from .instance import (
    GraphInstance,
    Instance,
    format_matrix,
    graph_to_instance,
    parse_matrix,
    parse_orlib,
    random_instance,
    read_matrix,
    read_orlib,
)
from .ladder import DistanceLadder, build_ladder, critical_indices, rank_transform
from .reduction import reduce
from .solver import SolverConfig, brute_force_radius, make_solver, solve_lp_relaxation, solve_mip, write_lp_file

__version__ = "0.1.0"

__all__ = [
    "AlgorithmTrace",
    "Bounds",
    "DistanceLadder",
    "FORMULATIONS",
    "GraphInstance",
    "Instance",
    "Model",
    "ModelStats",
    "SolverConfig",
    "brute_force_radius",
    "build",
    "build_ladder",
    "clamp_distances",
    "critical_indices",
    "extract_radius",
    "fixture_bounds",
    "format_matrix",
    "graph_to_instance",
    "initial_bounds",
    "lb0",
    "lb_star",
    "make_solver",
    "model_stats",
    "parse_matrix",
    "parse_orlib",
    "random_instance",
    "rank_transform",
    "read_matrix",
    "read_orlib",
    "reduce",
    "snap_bounds",
    "solve_lp_relaxation",
    "solve_mip",
    "step1",
    "two_step_solve",
    "ub0",
    "write_lp_file",
]
