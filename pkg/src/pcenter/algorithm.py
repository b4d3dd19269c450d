"""Two-step exact method: bound tightening by reduction and LP rounding, then one MIP solve.

Step 1 repeats, until the LP relaxation value is itself the current lower
bound:

* remove dominated clients/facilities and recompute the max-min / min-max
  bounds on the clamped instance, until nothing changes;
* solve the LP relaxation of the chosen formulation and lift ``lb`` to the
  smallest distance not below the LP value.

Step 2 solves the formulation exactly on the reduced, clamped instance.
"""

from __future__ import annotations

import csv
import io
import logging
import time
from dataclasses import dataclass, field

from .bounds import (
    Bounds,
    Provenance,
    clamp_distances,
    initial_bounds,
    lb0,
    lp_value_to_lower_bound,
    snap_bounds,
    ub0,
)
from .errors import AlgorithmError, InvalidBoundsError, SolverError
from .formulations import build, extract_radius
from .instance import Instance
from .ladder import build_ladder
from .reduction import reduce
from .solver import Status, solve_lp_relaxation, solve_mip

__all__ = ["IterationRecord", "AlgorithmTrace", "step1", "two_step_solve", "MAX_OUTER_ITERATIONS"]

logger = logging.getLogger(__name__)

MAX_OUTER_ITERATIONS = 1000
TRACE_COLUMNS = ("iteration", "lb", "ub", "n_clients", "n_facilities", "lp_value")


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    lb: int | float
    ub: int | float
    n_clients: int
    n_facilities: int
    lp_value: float
    lifted_lb: int | float  # smallest distance not below lp_value


@dataclass
class AlgorithmTrace:
    formulation: str
    iterations: list = field(default_factory=list)
    t1: float = 0.0
    t2: float = 0.0
    radius: int | float | None = None
    status: Status | None = None
    final_bounds: Bounds | None = None

    def to_csv(self, target=None) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(TRACE_COLUMNS)
        for r in self.iterations:
            writer.writerow([r.iteration, r.lb, r.ub, r.n_clients, r.n_facilities, repr(r.lp_value)])
        text = buf.getvalue()
        if target is not None:
            with open(target, "w", newline="", encoding="utf-8") as fh:
                fh.write(text)
        return text


def _reduce_and_bound(current: Instance, lb, ub):
    while True:
        reduced, report = reduce(current)
        new_lb = max(lb, lb0(reduced))
        new_ub = min(ub, ub0(reduced))
        changed = bool(report.removed_clients or report.removed_facilities) or new_lb != lb or new_ub != ub
        lb, ub = new_lb, new_ub
        if lb > ub:
            raise InvalidBoundsError(f"bounds crossed ({lb} > {ub}); the supplied bounds are not valid")
        current = clamp_distances(reduced, Bounds(lb, ub))
        if not changed:
            return current, lb, ub


def step1(
    formulation: str,
    inst: Instance,
    bounds: Bounds | None = None,
    solver=None,
    max_iterations: int = MAX_OUTER_ITERATIONS,
    use_reduction: bool = True,
):
    """Tighten the bounds; returns ``(instance, bounds, trace)``.

    The returned instance is reduced and clamped to the returned bounds and
    has the same optimal radius as ``inst`` whenever the input bounds are valid.
    """
    started = time.perf_counter()
    b = snap_bounds(bounds or initial_bounds(inst), build_ladder(inst))
    lb, ub = b.lb, b.ub
    current = clamp_distances(inst, Bounds(lb, ub))
    trace = AlgorithmTrace(formulation)

    for iteration in range(1, max_iterations + 1):
        if use_reduction:
            current, lb, ub = _reduce_and_bound(current, lb, ub)
        ladder = build_ladder(current)
        out = solve_lp_relaxation(build(formulation, current, ladder), solver)
        if out.status != Status.OPTIMAL:
            raise SolverError(f"LP relaxation of {formulation} ended with status {out.status}")
        lifted = lp_value_to_lower_bound(formulation, out.objective, ladder)
        trace.iterations.append(
            IterationRecord(iteration, lb, ub, current.n_clients, current.n_facilities, out.objective, lifted)
        )
        logger.debug("step1 it=%d lb=%s ub=%s lp=%s", iteration, lb, ub, out.objective)
        if lifted <= lb:
            break
        if lifted > ub:
            raise InvalidBoundsError(f"LP bound {out.objective} exceeds the upper bound {ub}; ub is not valid")
        lb = lifted
        current = clamp_distances(current, Bounds(lb, ub))
    else:
        raise AlgorithmError(f"step 1 did not converge within {max_iterations} iterations")

    trace.t1 = time.perf_counter() - started
    trace.final_bounds = Bounds(lb, ub, Provenance.LP_ROUNDING)
    return current, trace.final_bounds, trace


def two_step_solve(
    formulation: str,
    inst: Instance,
    bounds: Bounds | None = None,
    solver=None,
    use_reduction: bool = True,
):
    """Exact optimal radius of ``inst``; returns ``(radius, trace)``."""
    started = time.perf_counter()
    current, b, trace = step1(formulation, inst, bounds, solver, use_reduction=use_reduction)
    if b.lb == b.ub:
        trace.radius = b.lb
        trace.status = Status.OPTIMAL
    else:
        model = build(formulation, current)
        out = solve_mip(model, solver)
        if not out.has_solution:
            raise SolverError(f"MIP solve of {formulation} ended with status {out.status}")
        trace.status = out.status
        trace.radius = extract_radius(model, out.assignment)
        if trace.radius > b.ub:
            raise AlgorithmError(
                f"no solution with radius <= {b.ub} exists; widen the initial upper bound"
            )
    trace.t2 = time.perf_counter() - started
    return trace.radius, trace
