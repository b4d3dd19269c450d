"""Dominated client / facility removal.

Facility ``b`` beats facility ``a`` when its column is entrywise <= column
``a`` (every client is at least as close to ``b``). Client ``b`` beats client
``a`` when its row is entrywise >= row ``a`` (``b`` is at least as hard to
cover). Identical columns/rows are broken in favour of the lowest position,
which makes "beats" a strict partial order: every beaten entity has an
unbeaten one beating it, so removing all beaten entities at once is the same
as removing them one at a time against the survivors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .instance import Instance

__all__ = ["ReductionReport", "dominated_facilities", "dominated_clients", "reduce"]


@dataclass(frozen=True)
class ReductionReport:
    removed_clients: tuple
    removed_facilities: tuple
    rounds: int


def _beaten(vectors: np.ndarray) -> set:
    """Positions a such that some b has vectors[b] <= vectors[a] entrywise, ties to the lower index."""
    out = set()
    count = vectors.shape[0]
    for a in range(count):
        le = np.all(vectors <= vectors[a], axis=1)
        le[a] = False
        if not le.any():
            continue
        equal = np.all(vectors == vectors[a], axis=1)
        strict = le & ~equal
        if strict.any() or (le & equal)[:a].any():
            out.add(a)
    return out


def dominated_facilities(inst: Instance) -> set:
    """Column positions whose facility is never closer than some other facility."""
    return _beaten(inst.distances.T)


def dominated_clients(inst: Instance) -> set:
    """Row positions whose client is covered whenever some other client is."""
    return _beaten(-inst.distances)


def reduce(inst: Instance) -> tuple[Instance, ReductionReport]:
    """Alternate facility and client removal until neither finds anything.

    ``p`` is capped at the number of surviving facilities.
    """
    removed_clients, removed_facilities = [], []
    rounds = 0
    current = inst
    while True:
        rounds += 1
        changed = False
        drop = dominated_facilities(current)
        if drop:
            keep = [j for j in range(current.n_facilities) if j not in drop]
            removed_facilities += [current.facility_labels[j] for j in sorted(drop)]
            current = current.subset(range(current.n_clients), keep)
            changed = True
        drop = dominated_clients(current)
        if drop:
            keep = [i for i in range(current.n_clients) if i not in drop]
            removed_clients += [current.client_labels[i] for i in sorted(drop)]
            current = current.subset(keep, range(current.n_facilities))
            changed = True
        if not changed:
            break
    return current, ReductionReport(tuple(removed_clients), tuple(removed_facilities), rounds)
