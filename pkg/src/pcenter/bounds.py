"""Radius bounds: max-min / min-max initial bounds, clamping, fixtures, and LB*.

Clamping with bounds ``lb <= ub`` raises every distance below ``lb`` to
``lb`` and every distance above ``ub`` to the sentinel ``ub + 1``. When
``lb <= opt <= ub`` the optimal radius is unchanged and the distance ladder
shrinks to the values in ``[lb, ub]`` plus the sentinel.
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numpy as np

from .errors import InvalidBoundsError, SolverError
from .formulations import build
from .instance import Instance
from .ladder import DistanceLadder, build_ladder, next_distance_at_least
from .solver import Status, solve_lp_relaxation

__all__ = [
    "Provenance",
    "Bounds",
    "lb0",
    "ub0",
    "initial_bounds",
    "trivial_bounds",
    "snap_bounds",
    "clamp_distances",
    "lp_value_to_lower_bound",
    "lb_star",
    "orlib_table",
    "fixture_bounds",
]

LP_SNAP_TOL = 1e-6


class Provenance(str, enum.Enum):
    NONE = "none"
    LB0UB0 = "lb0ub0"
    FIXTURE = "fixture"
    USER = "user"
    LP_ROUNDING = "lp_rounding"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Bounds:
    lb: int | float
    ub: int | float
    provenance: Provenance = Provenance.USER

    def __post_init__(self):
        if self.lb > self.ub:
            raise InvalidBoundsError(f"lower bound {self.lb} exceeds upper bound {self.ub}")


def lb0(inst: Instance):
    """Largest distance from a client to its nearest facility."""
    return inst.distances.min(axis=1).max().item()


def ub0(inst: Instance):
    """Best single-facility radius."""
    return inst.distances.max(axis=0).min().item()


def initial_bounds(inst: Instance) -> Bounds:
    return Bounds(lb0(inst), ub0(inst), Provenance.LB0UB0)


def trivial_bounds(inst: Instance) -> Bounds:
    d = inst.distances
    return Bounds(d.min().item(), d.max().item(), Provenance.NONE)


def snap_bounds(b: Bounds, ladder: DistanceLadder) -> Bounds:
    """Move both bounds up onto ladder distances; an ub above the top becomes the top."""
    top = ladder[ladder.K]
    if b.lb > top:
        raise InvalidBoundsError(f"lower bound {b.lb} exceeds every distance (max {top})")
    lb = next_distance_at_least(ladder, b.lb)
    ub = top if b.ub >= top else next_distance_at_least(ladder, b.ub)
    return Bounds(lb, ub, b.provenance)


def clamp_distances(inst: Instance, b: Bounds) -> Instance:
    d = inst.distances
    clamped = np.where(d < b.lb, b.lb, d)
    clamped = np.where(clamped > b.ub, b.ub + 1, clamped)
    return inst.with_distances(clamped)


def lp_value_to_lower_bound(formulation: str, value: float, ladder: DistanceLadder):
    """Smallest ladder distance not below an LP relaxation value.

    ``cp2`` reports a ladder position rather than a distance, so its value is
    rounded up to a position first. A slack of 1e-6 absorbs solver noise.
    """
    if formulation == "cp2":
        k = max(0, math.ceil(value - LP_SNAP_TOL))
        if k > ladder.K:
            raise InvalidBoundsError(f"LP radius index {value} exceeds K={ladder.K}")
        return ladder[k]
    return next_distance_at_least(ladder, value - LP_SNAP_TOL * max(1.0, abs(value)))


def _lp_value(formulation, inst, ladder, solver):
    out = solve_lp_relaxation(build(formulation, inst, ladder), solver)
    if out.status != Status.OPTIMAL:
        raise SolverError(f"LP relaxation of {formulation} ended with status {out.status}")
    return out.objective


def lb_star(formulation: str, inst: Instance, b: Bounds | None = None, solver=None):
    """Fixed point of: clamp, solve the LP relaxation, lift lb to the next distance.

    Returns a ladder distance that is a valid lower bound on the optimal radius
    whenever the starting bounds are valid.
    """
    b = snap_bounds(b or initial_bounds(inst), build_ladder(inst))
    lb, ub = b.lb, b.ub
    while True:
        current = clamp_distances(inst, Bounds(lb, ub))
        ladder = build_ladder(current)
        value = _lp_value(formulation, current, ladder, solver)
        new_lb = lp_value_to_lower_bound(formulation, value, ladder)
        if new_lb <= lb:
            return lb
        if new_lb > ub:
            raise InvalidBoundsError(f"LP bound {value} exceeds the upper bound {ub}; ub is not valid")
        lb = new_lb


@lru_cache(maxsize=None)
def orlib_table() -> dict:
    """Published optimum and (lb, ub) pair for OR-Library pmed1..pmed40, keyed by number."""
    text = resources.files("pcenter.data").joinpath("orlib_table3.csv").read_text()
    rows = {}
    for rec in csv.DictReader(text.splitlines()):
        rows[int(rec["instance"])] = {k: int(v) for k, v in rec.items()}
    return rows


@lru_cache(maxsize=None)
def orlib_step1_table() -> dict:
    """Published post-Step-1 bounds (CP1) for pmed1..pmed40."""
    text = resources.files("pcenter.data").joinpath("orlib_table4.csv").read_text()
    return {int(r["instance"]): (int(r["step1_lb"]), int(r["step1_ub"])) for r in csv.DictReader(text.splitlines())}


def fixture_bounds(number: int) -> Bounds:
    row = orlib_table()[number]
    return Bounds(row["lb"], row["ub"], Provenance.FIXTURE)
