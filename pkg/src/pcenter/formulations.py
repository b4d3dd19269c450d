"""Solver-agnostic MILP models for the p-center problem.

Seven builders share one :class:`Model` container:

======== ==========================================================
p1       assignment model (y, x, R)
p2       radius-indicator covering model (y, z)
p2prime  p2 plus the ordering rows z^k >= z^{k+1}
p3, p4   exact-radius indicators u_k, weak and strong linking rows
cp1      p2prime restricted to the critical covering rows
cp2      cp1 rows aggregated onto one integer radius index r
======== ==========================================================

Conventions: a two-sided range ``1 <= sum(y) <= p`` is stored as two rows;
variable bounds are never rows. Variable order is y, then z/u/r, then x/R.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping

import numpy as np

from .instance import Instance
from .ladder import CriticalIndexSet, DistanceLadder, build_ladder, critical_indices

__all__ = [
    "Variable",
    "Constraint",
    "Model",
    "ModelStats",
    "FORMULATIONS",
    "build",
    "build_p1",
    "build_p2",
    "build_p2_prime",
    "build_p3",
    "build_p4",
    "build_cp1",
    "build_cp2",
    "model_stats",
    "extract_radius",
]

BINARY, INTEGER, CONTINUOUS = "binary", "integer", "continuous"
SENSES = ("<=", ">=", "=")


@dataclass(frozen=True)
class Variable:
    name: str
    kind: str
    lower: float = 0.0
    upper: float | None = None

    def __post_init__(self):
        if self.kind == BINARY and self.upper is None:
            object.__setattr__(self, "upper", 1)


@dataclass(frozen=True)
class Constraint:
    name: str
    terms: tuple  # ((variable position, coefficient), ...)
    sense: str
    rhs: float


@dataclass(frozen=True, eq=False)
class Model:
    name: str
    variables: tuple
    constraints: tuple
    objective: tuple  # ((variable position, coefficient), ...), minimized
    objective_constant: float = 0.0
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        seen = set()
        for v in self.variables:
            if v.name in seen:
                raise ValueError(f"variable {v.name!r} declared twice")
            seen.add(v.name)
            if v.kind not in (BINARY, INTEGER, CONTINUOUS):
                raise ValueError(f"unknown variable kind {v.kind!r}")
            if v.kind == BINARY and (v.lower, v.upper) != (0, 1):
                raise ValueError(f"binary {v.name!r} must have bounds [0, 1]")
        n = len(self.variables)
        for c in self.constraints:
            if c.sense not in SENSES:
                raise ValueError(f"row {c.name!r} has unknown sense {c.sense!r}")
            if any(not 0 <= j < n for j, _ in c.terms):
                raise ValueError(f"row {c.name!r} references an undeclared variable")
        if any(not 0 <= j < n for j, _ in self.objective):
            raise ValueError("objective references an undeclared variable")

    @property
    def var_index(self) -> dict:
        return {v.name: j for j, v in enumerate(self.variables)}

    def relaxed(self) -> "Model":
        """Same model with every variable continuous (bounds kept)."""
        variables = tuple(replace(v, kind=CONTINUOUS) for v in self.variables)
        return replace(self, variables=variables, metadata={**self.metadata, "relaxed": True})

    def objective_value(self, values: Mapping[str, float]) -> float:
        names = [v.name for v in self.variables]
        return self.objective_constant + sum(c * values.get(names[j], 0.0) for j, c in self.objective)

    def is_feasible(self, values: Mapping[str, float], tol: float = 1e-6) -> bool:
        names = [v.name for v in self.variables]
        x = np.array([values.get(nm, 0.0) for nm in names], dtype=float)
        for v, xv in zip(self.variables, x):
            if xv < v.lower - tol or (v.upper is not None and xv > v.upper + tol):
                return False
            if v.kind != CONTINUOUS and abs(xv - round(xv)) > tol:
                return False
        for c in self.constraints:
            lhs = sum(coef * x[j] for j, coef in c.terms)
            if c.sense == "<=" and lhs > c.rhs + tol:
                return False
            if c.sense == ">=" and lhs < c.rhs - tol:
                return False
            if c.sense == "=" and abs(lhs - c.rhs) > tol:
                return False
        return True

    def __repr__(self):
        return f"Model({self.name!r}, variables={len(self.variables)}, constraints={len(self.constraints)})"


@dataclass(frozen=True)
class ModelStats:
    n_variables: int
    n_constraints: int
    n_nonzeros: int


class _Builder:
    def __init__(self, name):
        self.name = name
        self.variables = []
        self.constraints = []
        self.index = {}

    def var(self, name, kind=BINARY, lower=0, upper=1):
        self.index[name] = len(self.variables)
        self.variables.append(Variable(name, kind, lower, upper))
        return self.index[name]

    def row(self, name, terms, sense, rhs):
        terms = tuple((j, c) for j, c in terms if c != 0)
        self.constraints.append(Constraint(name, terms, sense, rhs))

    def model(self, objective, constant=0.0, **metadata):
        objective = tuple((j, c) for j, c in objective if c != 0)
        return Model(self.name, tuple(self.variables), tuple(self.constraints), objective, constant, metadata)


def _num(x):
    return x.item() if hasattr(x, "item") else x


def _facility_vars(b, inst):
    return [b.var(f"y_{j + 1}") for j in range(inst.n_facilities)]


def _cardinality_rows(b, y, inst, lower=True):
    if lower:
        b.row("card_lo", [(j, 1) for j in y], ">=", 1)
    b.row("card_hi", [(j, 1) for j in y], "<=", inst.p)


def _meta(inst, ladder):
    return dict(
        n_clients=inst.n_clients,
        n_facilities=inst.n_facilities,
        p=inst.p,
        ladder=None if ladder is None else tuple(ladder.values.tolist()),
    )


def build_p1(inst: Instance, ladder: DistanceLadder | None = None) -> Model:
    b = _Builder("p1")
    n, m = inst.n_clients, inst.n_facilities
    d = inst.distances
    y = _facility_vars(b, inst)
    x = [[b.var(f"x_{i + 1}_{j + 1}") for j in range(m)] for i in range(n)]
    R = b.var("R", CONTINUOUS, 0, None)
    _cardinality_rows(b, y, inst, lower=False)
    for i in range(n):
        b.row(f"assign_{i + 1}", [(x[i][j], 1) for j in range(m)], "=", 1)
    for i in range(n):
        for j in range(m):
            b.row(f"link_{i + 1}_{j + 1}", [(x[i][j], 1), (y[j], -1)], "<=", 0)
    for i in range(n):
        b.row(f"radius_{i + 1}", [(x[i][j], _num(d[i, j])) for j in range(m)] + [(R, -1)], "<=", 0)
    return b.model([(R, 1)], **_meta(inst, ladder or build_ladder(inst)))


def _z_model(name, inst, ladder, rows_for, ordering):
    b = _Builder(name)
    d = inst.distances
    D = ladder.values
    K = ladder.K
    y = _facility_vars(b, inst)
    z = {k: b.var(f"z_{k}") for k in range(1, K + 1)}
    _cardinality_rows(b, y, inst)
    for i in range(inst.n_clients):
        row = d[i]
        for k in rows_for(i):
            near = np.flatnonzero(row < D[k])
            b.row(f"cover_{i + 1}_{k}", [(z[k], 1)] + [(y[j], 1) for j in near], ">=", 1)
    if ordering:
        for k in range(1, K):
            b.row(f"order_{k}", [(z[k], 1), (z[k + 1], -1)], ">=", 0)
    objective = [(z[k], _num(D[k] - D[k - 1])) for k in range(1, K + 1)]
    return b.model(objective, _num(D[0]), **_meta(inst, ladder))


def build_p2(inst: Instance, ladder: DistanceLadder | None = None) -> Model:
    ladder = build_ladder(inst) if ladder is None else ladder
    every_k = range(1, ladder.K + 1)
    return _z_model("p2", inst, ladder, lambda i: every_k, ordering=False)


def build_p2_prime(inst: Instance, ladder: DistanceLadder | None = None) -> Model:
    ladder = build_ladder(inst) if ladder is None else ladder
    every_k = range(1, ladder.K + 1)
    return _z_model("p2prime", inst, ladder, lambda i: every_k, ordering=True)


def build_cp1(
    inst: Instance, ladder: DistanceLadder | None = None, critical: CriticalIndexSet | None = None
) -> Model:
    ladder = build_ladder(inst) if ladder is None else ladder
    critical = critical_indices(inst, ladder) if critical is None else critical
    return _z_model("cp1", inst, ladder, critical.constraint_indices, ordering=True)


def build_cp2(
    inst: Instance, ladder: DistanceLadder | None = None, critical: CriticalIndexSet | None = None
) -> Model:
    ladder = build_ladder(inst) if ladder is None else ladder
    critical = critical_indices(inst, ladder) if critical is None else critical
    b = _Builder("cp2")
    d = inst.distances
    D = ladder.values
    y = _facility_vars(b, inst)
    r = b.var("r", INTEGER, 0, ladder.K)
    _cardinality_rows(b, y, inst)
    for i in range(inst.n_clients):
        for k in critical.constraint_indices(i):
            near = np.flatnonzero(d[i] < D[k])
            b.row(f"rank_{i + 1}_{k}", [(r, 1)] + [(y[j], k) for j in near], ">=", k)
    return b.model([(r, 1)], **_meta(inst, ladder))


def _u_model(name, inst, ladder, strong):
    # u_k flags "radius == D^k" for k = 0..K; position 0 is needed whenever
    # the optimum is the smallest distance (e.g. after lower-bound clamping).
    b = _Builder(name)
    d = inst.distances
    D = ladder.values
    K = ladder.K
    y = _facility_vars(b, inst)
    u = [b.var(f"u_{k}") for k in range(K + 1)]
    _cardinality_rows(b, y, inst)
    for i in range(inst.n_clients):
        for k in range(K + 1):
            within = np.flatnonzero(d[i] <= D[k])
            lhs = [(y[j], 1) for j in within]
            if strong:
                b.row(f"reach_{i + 1}_{k}", lhs + [(u[q], -1) for q in range(k + 1)], ">=", 0)
            else:
                b.row(f"reach_{i + 1}_{k}", lhs + [(u[k], -1)], ">=", 0)
    b.row("choose_one", [(uk, 1) for uk in u], "=", 1)
    return b.model([(u[k], _num(D[k])) for k in range(K + 1)], **_meta(inst, ladder))


def build_p3(inst: Instance, ladder: DistanceLadder | None = None) -> Model:
    ladder = build_ladder(inst) if ladder is None else ladder
    return _u_model("p3", inst, ladder, strong=False)


def build_p4(inst: Instance, ladder: DistanceLadder | None = None) -> Model:
    ladder = build_ladder(inst) if ladder is None else ladder
    return _u_model("p4", inst, ladder, strong=True)


FORMULATIONS = {
    "p1": build_p1,
    "p2": build_p2,
    "p2prime": build_p2_prime,
    "p3": build_p3,
    "p4": build_p4,
    "cp1": build_cp1,
    "cp2": build_cp2,
}


def build(formulation: str, inst: Instance, ladder: DistanceLadder | None = None) -> Model:
    try:
        builder = FORMULATIONS[formulation]
    except KeyError:
        raise ValueError(f"unknown formulation {formulation!r}; choose from {sorted(FORMULATIONS)}") from None
    return builder(inst, build_ladder(inst) if ladder is None else ladder)


def model_stats(m: Model) -> ModelStats:
    return ModelStats(len(m.variables), len(m.constraints), sum(len(c.terms) for c in m.constraints))


def _snap(value, ladder_values, tol=1e-6):
    k = int(np.argmin(np.abs(ladder_values - value)))
    nearest = ladder_values[k].item()
    if abs(nearest - value) <= tol * max(1.0, abs(value)):
        return nearest
    return value


def extract_radius(m: Model, solution: Mapping[str, float], ladder: DistanceLadder | None = None):
    """Radius encoded by a feasible solution of ``m``.

    Results within 1e-6 of a ladder distance are returned as that exact distance.
    """
    D = np.asarray(ladder.values if ladder is not None else m.metadata["ladder"])
    K = D.size - 1
    if m.name == "p1":
        value = solution["R"]
    elif m.name in ("p2", "p2prime", "cp1"):
        value = D[0] + sum((D[k] - D[k - 1]) * solution.get(f"z_{k}", 0.0) for k in range(1, K + 1))
    elif m.name in ("p3", "p4"):
        value = sum(D[k] * solution.get(f"u_{k}", 0.0) for k in range(K + 1))
    elif m.name == "cp2":
        r = solution.get("r", 0.0)
        k = int(round(r))
        if abs(r - k) > 1e-6:
            raise ValueError(f"radius index r={r} is not integral")
        if not 0 <= k <= K:
            raise ValueError(f"radius index r={k} outside [0, {K}]")
        return D[k].item()
    else:
        raise ValueError(f"unknown formulation {m.name!r}")
    return _snap(float(value), D)
