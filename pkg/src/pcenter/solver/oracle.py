"""Exhaustive p-center oracle, independent of every MILP code path."""

from __future__ import annotations

from itertools import combinations
from math import comb

import numpy as np

from ..errors import EnumerationCapError
from ..instance import Instance

DEFAULT_CAP = 2_000_000


def brute_force_radius(inst: Instance, p: int | None = None, cap: int = DEFAULT_CAP):
    """Optimal radius and center set by enumerating every facility subset of size 1..p.

    Ties go to the lexicographically smallest tuple of facility positions.
    """
    p = inst.p if p is None else p
    m = inst.n_facilities
    if not 1 <= p <= m:
        raise ValueError(f"p={p} outside [1, {m}]")
    total = sum(comb(m, s) for s in range(1, p + 1))
    if total > cap:
        raise EnumerationCapError(f"{total} subsets exceed the enumeration cap {cap}")

    d = inst.distances
    best_radius, best_set = None, None
    for size in range(1, p + 1):
        subsets = np.array(list(combinations(range(m), size)), dtype=np.int64)
        for chunk in np.array_split(subsets, max(1, len(subsets) // 50_000)):
            radii = d[:, chunk].min(axis=2).max(axis=0)
            pos = int(np.argmin(radii))
            candidate = (radii[pos].item(), tuple(chunk[pos].tolist()))
            if best_radius is None or candidate[0] < best_radius or (
                candidate[0] == best_radius and candidate[1] < best_set
            ):
                best_radius, best_set = candidate
    return best_radius, best_set
