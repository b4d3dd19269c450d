"""Pluggable LP/MIP solving plus the brute-force oracle.

A solver is any object with ``solve(model, relax=False) -> SolveOutcome``.
:func:`make_solver` picks one from a :class:`SolverConfig`; with
``backend="auto"`` it prefers the CBC executable and falls back to HiGHS.
"""

from __future__ import annotations

from ..errors import SolverNotFoundError
from ..formulations import Model
from .base import SolveOutcome, SolverConfig, Status
from .command import CommandSolver, find_cbc, parse_cbc_solution, parse_highs_solution
from .highs import HighsSolver, highs_available
from .lpfile import relaxed_lp_file, write_lp_file
from .oracle import brute_force_radius

__all__ = [
    "SolveOutcome",
    "SolverConfig",
    "Status",
    "CommandSolver",
    "HighsSolver",
    "make_solver",
    "default_solver",
    "solve_lp_relaxation",
    "solve_mip",
    "write_lp_file",
    "relaxed_lp_file",
    "brute_force_radius",
    "parse_cbc_solution",
    "parse_highs_solution",
]


def make_solver(config: SolverConfig | None = None):
    config = config or SolverConfig.from_env()
    backend = config.backend
    if backend == "auto":
        if find_cbc() is not None:
            backend = "cbc"
        elif highs_available():
            backend = "highs"
        else:
            raise SolverNotFoundError("no solver available: install pulp (bundles CBC) or highspy")
    if backend == "highs":
        return HighsSolver(config)
    if backend == "command" and not config.command:
        raise ValueError("backend 'command' needs a command template")
    return CommandSolver(config)


_default = None


def default_solver():
    global _default
    if _default is None:
        _default = make_solver()
    return _default


def _resolve(solver):
    if solver is None:
        return default_solver()
    if isinstance(solver, SolverConfig):
        return make_solver(solver)
    return solver


def solve_lp_relaxation(model: Model, solver=None) -> SolveOutcome:
    """Optimal value of ``model`` with integrality dropped."""
    return _resolve(solver).solve(model, relax=True)


def solve_mip(model: Model, solver=None) -> SolveOutcome:
    return _resolve(solver).solve(model, relax=False)
