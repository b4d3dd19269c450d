import os
from pathlib import Path

import numpy as np
import pytest

from pcenter.instance import Instance, graph_to_instance, parse_matrix, random_instance, read_orlib
from pcenter.solver import make_solver

ROOT = Path(__file__).resolve().parents[1]
ORLIB_DIR = Path(os.environ.get("PCENTER_ORLIB_DIR", ROOT / "data" / "orlib"))

T3_TEXT = "3 3 1\n0 2 5\n2 0 4\n5 4 0"


@pytest.fixture
def t3():
    return parse_matrix(T3_TEXT)


@pytest.fixture(scope="session")
def solver():
    return make_solver()


def pmed_path(number: int) -> Path:
    for name in (f"pmed{number}.txt", f"pmed{number}"):
        path = ORLIB_DIR / name
        if path.exists():
            return path
    pytest.fail(
        f"pmed{number}.txt not found in {ORLIB_DIR}; download the OR-Library p-median "
        "files and set PCENTER_ORLIB_DIR",
        pytrace=False,
    )


_cache = {}


def load_pmed(number: int) -> Instance:
    if number not in _cache:
        _cache[number] = graph_to_instance(read_orlib(pmed_path(number)))
    return _cache[number]


def synthetic_pmed_text(n=100, extra_edges=100, p=5, seed=0) -> str:
    """Random connected graph written in OR-Library pmed format."""
    rng = np.random.default_rng(seed)
    edges = []
    order = rng.permutation(n) + 1
    for pos in range(1, n):
        edges.append((int(order[pos]), int(order[rng.integers(0, pos)])))
    while len(edges) < n - 1 + extra_edges:
        u, v = (int(x) for x in rng.integers(1, n + 1, size=2))
        if u != v:
            edges.append((u, v))
    lines = [f"{n} {len(edges)} {p}"]
    lines += [f"{u} {v} {int(rng.integers(1, 100))}" for u, v in edges]
    return "\n".join(lines) + "\n"


def instances(max_n=8, max_m=8, high=12):
    """Hypothesis strategy: small Instance with integer distances in [0, high]."""
    from hypothesis import strategies as st

    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_n))
        m = draw(st.integers(1, max_m))
        p = draw(st.integers(1, m))
        flat = draw(st.lists(st.integers(0, high), min_size=n * m, max_size=n * m))
        return Instance(np.array(flat, dtype=np.int64).reshape(n, m), p)

    return build()


def seeded_instances(count, max_n=10, max_m=10, seed=12345):
    """Deterministic stream of random instances with N, M in 1..max and p = 1."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n, m = int(rng.integers(1, max_n + 1)), int(rng.integers(1, max_m + 1))
        high = int(rng.choice([5, 20, 100]))
        out.append(Instance(rng.integers(0, high + 1, size=(n, m)), 1))
    return out


def acceptance_instances(count, max_n, max_m, seed):
    """Random instances with N, M drawn in 1..max; value range varies so ties are common."""
    rng = np.random.default_rng(seed)
    out = []
    for k in range(count):
        n, m = int(rng.integers(1, max_n + 1)), int(rng.integers(1, max_m + 1))
        high = int(rng.choice([3, 10, 100]))
        out.append(random_instance(n, m, 1, seed=seed * 100_000 + k, high=high))
    return out


# one summary line per acceptance criterion, printed after the test run
_criteria = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if not name.startswith("test_criterion_"):
        return
    number = int(name.split("_")[2])
    if report.when == "call" or report.failed:
        message = ""
        if report.failed:
            crash = getattr(report.longrepr, "reprcrash", None)
            message = (crash.message if crash else str(report.longrepr)).splitlines()[0][:160]
        previous = _criteria.get(number)
        if previous is None or previous[0] == "PASS":
            _criteria[number] = ("PASS" if report.passed else "FAIL", round(report.duration, 1), message)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        status, seconds, message = _criteria[number]
        tail = f" ({message})" if message else ""
        terminalreporter.write_line(f"criterion {number}: {status} in {seconds}s{tail}")
