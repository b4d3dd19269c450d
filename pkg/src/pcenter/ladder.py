"""Distinct-distance ladder, coverage sets and critical indices.

The ladder ``D^0 < D^1 < ... < D^K`` lists every distinct entry of the
distance matrix. Covering rows are indexed by ladder position ``k`` in
``1..K``; position 0 never needs a row because nothing is closer than ``D^0``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoFeasibleRadiusError
from .instance import Instance

__all__ = [
    "DistanceLadder",
    "CriticalIndexSet",
    "build_ladder",
    "coverage_set",
    "critical_indices",
    "rank_matrix",
    "rank_transform",
    "next_distance_at_least",
]


@dataclass(frozen=True, eq=False)
class DistanceLadder:
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.ndim != 1 or v.size == 0:
            raise ValueError("ladder needs at least one value")
        if np.any(np.diff(v) <= 0):
            raise ValueError("ladder values must be strictly increasing")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def K(self) -> int:
        return self.values.size - 1

    def __len__(self):
        return self.values.size

    def __getitem__(self, k):
        return self.values[k].item()

    @property
    def rank_of(self) -> dict:
        return {v: k for k, v in enumerate(self.values.tolist())}

    def rank(self, value) -> int:
        """Ladder position of an exact ladder value."""
        k = int(np.searchsorted(self.values, value))
        if k > self.K or self.values[k] != value:
            raise KeyError(f"{value} is not a ladder distance")
        return k

    def __contains__(self, value):
        k = int(np.searchsorted(self.values, value))
        return k <= self.K and self.values[k] == value

    def __repr__(self):
        return f"DistanceLadder(K={self.K}, D0={self[0]}, DK={self[self.K]})"


@dataclass(frozen=True)
class CriticalIndexSet:
    """``sets[i]`` is S_i: the positions k in 1..K-1 where client i's coverage set grows."""

    sets: tuple
    K: int

    def __getitem__(self, i):
        return self.sets[i]

    def __len__(self):
        return len(self.sets)

    def constraint_indices(self, i) -> list[int]:
        """S_i plus the sentinel K, sorted; empty when the ladder has a single value."""
        if self.K == 0:
            return []
        return sorted(self.sets[i] | {self.K})

    def total_rows(self) -> int:
        return sum(len(self.constraint_indices(i)) for i in range(len(self.sets)))


def build_ladder(inst: Instance) -> DistanceLadder:
    return DistanceLadder(np.unique(inst.distances))


def rank_matrix(inst: Instance, ladder: DistanceLadder | None = None) -> np.ndarray:
    """Ladder position of every d_ij."""
    ladder = build_ladder(inst) if ladder is None else ladder
    return np.searchsorted(ladder.values, inst.distances)


def coverage_set(inst: Instance, ladder: DistanceLadder, i: int, k: int) -> frozenset:
    """Facilities strictly closer than D^k to client i."""
    if not 0 <= i < inst.n_clients:
        raise IndexError(f"client {i} out of range")
    if not 1 <= k <= ladder.K:
        raise IndexError(f"ladder index {k} outside [1, {ladder.K}]")
    return frozenset(np.flatnonzero(inst.distances[i] < ladder[k]).tolist())


def critical_indices(inst: Instance, ladder: DistanceLadder | None = None) -> CriticalIndexSet:
    ladder = build_ladder(inst) if ladder is None else ladder
    ranks = rank_matrix(inst, ladder)
    K = ladder.K
    # N_i^k != N_i^{k+1} exactly when some facility sits at distance D^k
    sets = tuple(frozenset(k for k in np.unique(row).tolist() if 1 <= k <= K - 1) for row in ranks)
    return CriticalIndexSet(sets, K)


def rank_transform(inst: Instance) -> Instance:
    """Replace each distance by its ladder position (D^0 = 0, unit gaps)."""
    return inst.with_distances(rank_matrix(inst))


def next_distance_at_least(ladder: DistanceLadder, v) -> int | float:
    """Smallest ladder value >= v."""
    k = int(np.searchsorted(ladder.values, v, side="left"))
    if k > ladder.K:
        raise NoFeasibleRadiusError(f"{v} exceeds the largest distance {ladder[ladder.K]}")
    return ladder[k]
