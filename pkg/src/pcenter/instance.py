"""p-center instances: OR-Library pmed graphs, raw distance matrices, random draws.

Clients index rows and facilities index columns of ``Instance.distances``.
Array positions are 0-based; ``client_labels``/``facility_labels`` keep the
original 1-based numbering so reductions can be traced back.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DisconnectedGraphError, InstanceError, ParseError

__all__ = [
    "GraphInstance",
    "Instance",
    "parse_orlib",
    "read_orlib",
    "graph_to_instance",
    "parse_matrix",
    "read_matrix",
    "format_matrix",
    "random_instance",
    "orlib_number",
]


@dataclass(frozen=True)
class GraphInstance:
    """Undirected weighted graph with a center budget, as in OR-Library pmed files.

    ``edges`` holds ``(u, v, weight)`` with 1-based vertex indices.
    """

    vertex_count: int
    edges: tuple
    p: int

    def __post_init__(self):
        if self.vertex_count < 1:
            raise InstanceError("vertex_count must be positive")
        if not 1 <= self.p <= self.vertex_count:
            raise InstanceError(f"p={self.p} outside [1, {self.vertex_count}]")
        for u, v, w in self.edges:
            if not (1 <= u <= self.vertex_count and 1 <= v <= self.vertex_count):
                raise InstanceError(f"edge ({u}, {v}) has a vertex index out of range")
            if u == v:
                raise InstanceError(f"self-loop on vertex {u}")
            if w < 0:
                raise InstanceError(f"edge ({u}, {v}) has negative weight {w}")


@dataclass(frozen=True, eq=False)
class Instance:
    """Clients x facilities distance matrix plus the number of centers ``p``."""

    distances: np.ndarray
    p: int
    client_labels: tuple = field(default=None)
    facility_labels: tuple = field(default=None)

    def __post_init__(self):
        d = np.array(self.distances)
        if d.ndim != 2 or d.shape[0] < 1 or d.shape[1] < 1:
            raise InstanceError(f"distance matrix must be a non-empty 2-D array, got shape {d.shape}")
        if d.dtype.kind in "iub":
            d = d.astype(np.int64)
        elif d.dtype.kind == "f":
            if not np.all(np.isfinite(d)):
                raise InstanceError("distances must be finite")
            if np.all(d == np.round(d)) and np.all(np.abs(d) < 2**53):
                d = d.astype(np.int64)
        else:
            raise InstanceError(f"unsupported distance dtype {d.dtype}")
        if np.any(d < 0):
            raise InstanceError("distances must be nonnegative")
        d.setflags(write=False)
        object.__setattr__(self, "distances", d)

        n, m = d.shape
        if not 1 <= self.p <= m:
            raise InstanceError(f"p={self.p} outside [1, {m}]")
        clients = tuple(range(1, n + 1)) if self.client_labels is None else tuple(self.client_labels)
        facilities = tuple(range(1, m + 1)) if self.facility_labels is None else tuple(self.facility_labels)
        if len(clients) != n or len(set(clients)) != n:
            raise InstanceError("client_labels must hold N distinct values")
        if len(facilities) != m or len(set(facilities)) != m:
            raise InstanceError("facility_labels must hold M distinct values")
        object.__setattr__(self, "client_labels", clients)
        object.__setattr__(self, "facility_labels", facilities)

    @property
    def n_clients(self) -> int:
        return self.distances.shape[0]

    @property
    def n_facilities(self) -> int:
        return self.distances.shape[1]

    def with_distances(self, distances, p=None) -> "Instance":
        return Instance(distances, self.p if p is None else p, self.client_labels, self.facility_labels)

    def subset(self, clients, facilities) -> "Instance":
        """Keep only the given row and column positions (labels follow along)."""
        clients = list(clients)
        facilities = list(facilities)
        d = self.distances[np.ix_(clients, facilities)]
        return Instance(
            d,
            min(self.p, len(facilities)),
            tuple(self.client_labels[i] for i in clients),
            tuple(self.facility_labels[j] for j in facilities),
        )

    def radius(self, centers) -> int | float:
        """Radius obtained by opening the facilities at positions ``centers``."""
        centers = list(centers)
        if not centers:
            raise InstanceError("at least one center is needed")
        return self.distances[:, centers].min(axis=1).max().item()

    def same_data(self, other: "Instance") -> bool:
        return (
            self.p == other.p
            and self.distances.shape == other.distances.shape
            and bool(np.array_equal(self.distances, other.distances))
        )

    def __repr__(self):
        return f"Instance(N={self.n_clients}, M={self.n_facilities}, p={self.p})"


def _data_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _int_token(token, lineno, what):
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{what} {token!r} is not an integer", lineno) from None


def _number_token(token, lineno):
    try:
        return int(token)
    except ValueError:
        pass
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"non-numeric entry {token!r}", lineno) from None
    if not np.isfinite(value):
        raise ParseError(f"non-finite entry {token!r}", lineno)
    return value


def parse_orlib(text: str, duplicates: str = "min") -> GraphInstance:
    """Parse an OR-Library pmed file: header ``n e p`` then ``e`` lines ``u v w``.

    Repeated vertex pairs keep the smallest weight (``duplicates="min"``) or the
    last one read (``duplicates="last"``).
    """
    if duplicates not in ("min", "last"):
        raise ValueError("duplicates must be 'min' or 'last'")
    lines = list(_data_lines(text))
    if not lines:
        raise ParseError("empty input", 1)
    lineno, header = lines[0]
    if len(header) != 3:
        raise ParseError(f"header must be 'n e p', got {' '.join(header)!r}", lineno)
    n, e, p = (_int_token(t, lineno, "header field") for t in header)
    if n < 1 or e < 0:
        raise ParseError(f"bad header values n={n} e={e}", lineno)
    if not 1 <= p <= n:
        raise ParseError(f"p={p} outside [1, {n}]", lineno)
    body = lines[1:]
    if len(body) != e:
        where = body[e][0] if len(body) > e else (body[-1][0] if body else lineno)
        raise ParseError(f"expected {e} edge lines, found {len(body)}", where)

    weights = {}
    for lineno, tokens in body:
        if len(tokens) != 3:
            raise ParseError(f"edge line must be 'u v w', got {' '.join(tokens)!r}", lineno)
        u = _int_token(tokens[0], lineno, "vertex")
        v = _int_token(tokens[1], lineno, "vertex")
        w = _number_token(tokens[2], lineno)
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"vertex index out of range in edge ({u}, {v})", lineno)
        if u == v:
            raise ParseError(f"self-loop on vertex {u}", lineno)
        if w < 0:
            raise ParseError(f"negative weight {w}", lineno)
        key = (min(u, v), max(u, v))
        if duplicates == "min" and key in weights:
            w = min(w, weights[key])
        weights[key] = w
    edges = tuple((u, v, w) for (u, v), w in sorted(weights.items()))
    return GraphInstance(n, edges, p)


def read_orlib(path, duplicates: str = "min") -> GraphInstance:
    return parse_orlib(Path(path).read_text(), duplicates=duplicates)


def graph_to_instance(g: GraphInstance) -> Instance:
    """All-pairs shortest-path distances; every vertex is both client and facility."""
    n = g.vertex_count
    rows, cols, vals = [], [], []
    for u, v, w in g.edges:
        rows += [u - 1, v - 1]
        cols += [v - 1, u - 1]
        vals += [w, w]
    dist = _floyd_warshall(n, np.array(rows, dtype=np.int64), np.array(cols, dtype=np.int64), np.array(vals, dtype=np.float64))
    if not np.all(np.isfinite(dist)):
        i, j = np.argwhere(~np.isfinite(dist))[0]
        raise DisconnectedGraphError(int(i) + 1, int(j) + 1)
    return Instance(dist, g.p)


def _floyd_warshall(n, rows, cols, vals):
    d = np.full((n, n), np.inf)
    np.fill_diagonal(d, 0.0)
    np.minimum.at(d, (rows, cols), vals)
    for k in range(n):
        np.minimum(d, d[:, k, None] + d[None, k, :], out=d)
    return d


def parse_matrix(text: str) -> Instance:
    """Parse ``N M p`` followed by N rows of M distances; ``#`` starts a comment."""
    lines = list(_data_lines(text))
    if not lines:
        raise ParseError("empty input", 1)
    lineno, header = lines[0]
    if len(header) != 3:
        raise ParseError(f"header must be 'N M p', got {' '.join(header)!r}", lineno)
    n, m, p = (_int_token(t, lineno, "header field") for t in header)
    if n < 1 or m < 1:
        raise ParseError(f"bad dimensions N={n} M={m}", lineno)
    if not 1 <= p <= m:
        raise ParseError(f"p={p} outside [1, {m}]", lineno)
    body = lines[1:]
    if len(body) != n:
        where = body[n][0] if len(body) > n else (body[-1][0] if body else lineno)
        raise ParseError(f"expected {n} matrix rows, found {len(body)}", where)
    matrix = []
    for row_no, (lineno, tokens) in enumerate(body, start=1):
        if len(tokens) != m:
            raise ParseError(f"row {row_no} has {len(tokens)} of {m} expected entries", lineno)
        row = [_number_token(t, lineno) for t in tokens]
        if any(x < 0 for x in row):
            raise ParseError(f"row {row_no} has a negative distance", lineno)
        matrix.append(row)
    return Instance(np.array(matrix), p)


def read_matrix(path) -> Instance:
    return parse_matrix(Path(path).read_text())


def format_matrix(inst: Instance) -> str:
    """Inverse of :func:`parse_matrix`; floats are written with ``repr`` precision."""
    out = [f"{inst.n_clients} {inst.n_facilities} {inst.p}"]
    for row in inst.distances.tolist():
        out.append(" ".join(repr(x) for x in row))
    return "\n".join(out) + "\n"


def random_instance(n: int, m: int, p: int, seed: int, high: int = 100) -> Instance:
    """Integer distances drawn uniformly from ``0..high`` (inclusive)."""
    if n < 1 or m < 1:
        raise InstanceError(f"invalid dimensions n={n} m={m}")
    if not 1 <= p <= m:
        raise InstanceError(f"p={p} outside [1, {m}]")
    rng = np.random.default_rng(seed)
    return Instance(rng.integers(0, high + 1, size=(n, m)), p)


def orlib_number(path) -> int | None:
    """OR-Library instance number from a file name like ``pmed12.txt``."""
    match = re.search(r"pmed0*(\d+)", Path(path).name, flags=re.IGNORECASE)
    return int(match.group(1)) if match else None
