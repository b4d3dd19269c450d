"""Subprocess adapter: write the LP file, run a solver command, parse its solution file.

Two solution-file dialects are understood.

``cbc`` (``cbc model.lp ... solve solu sol.txt``)
    First line ``<status text> - objective value <number>`` where the status
    text starts with ``Optimal``, ``Infeasible``, ``Integer infeasible``,
    ``Unbounded`` or ``Stopped on ...``. Each further line is
    ``[**] <index> <name> <value> <reduced cost>``; columns not listed are zero.
    The bound of a stopped MIP is read from ``Lower bound:`` on stdout.

``highs`` (``highs --model_file model.lp --solution_file sol.txt``)
    ``Model status`` followed by the status text on the next line,
    ``Objective <number>`` under ``# Primal solution values``, then
    ``# Columns <n>`` and ``n`` lines ``<name> <value>``.
"""

from __future__ import annotations

import importlib.util
import logging
import os
import re
import shlex
import shutil
import subprocess
import sys
import tempfile
import time
from pathlib import Path

from ..errors import SolutionParseError, SolverFailedError, SolverNotFoundError
from ..formulations import Model
from .base import SolveOutcome, SolverConfig, Status
from .lpfile import write_lp_file

logger = logging.getLogger(__name__)

CBC_TEMPLATE = (
    "{executable} {model} sec {time_limit} threads {threads} ratio {mip_gap} "
    "primalT {lp_tolerance} solve solu {solution}"
)
HIGHS_TEMPLATE = (
    "{executable} --model_file {model} --solution_file {solution} "
    "--time_limit {time_limit} --threads {threads} --mip_rel_gap {mip_gap}"
)


def find_cbc() -> str | None:
    """CBC executable: ``$PCENTER_CBC``, then ``cbc`` on PATH, then the copy bundled with pulp."""
    candidate = os.environ.get("PCENTER_CBC")
    if candidate:
        return candidate
    on_path = shutil.which("cbc")
    if on_path:
        return on_path
    # the pulp wheel ships a CBC build next to its own sources
    spec = importlib.util.find_spec("pulp")
    if spec is None or not spec.submodule_search_locations:
        return None
    arch = "i64" if sys.maxsize > 2**32 else "i32"
    system = {"linux": "linux", "darwin": "osx", "win32": "win"}.get(sys.platform, sys.platform)
    name = "cbc.exe" if system == "win" else "cbc"
    for root in spec.submodule_search_locations:
        path = os.path.join(root, "solverdir", "cbc", system, arch, name)
        if os.path.exists(path):
            return path
    return None


def _float(token, context):
    try:
        return float(token)
    except ValueError:
        raise SolutionParseError(f"cannot read a number from {token!r} in {context}") from None


def parse_cbc_solution(text: str, stdout: str = "", is_mip: bool = True):
    """Return ``(status, objective, values, best_bound)`` from a CBC solution file."""
    lines = text.splitlines()
    if not lines:
        raise SolutionParseError("empty CBC solution file")
    head = lines[0].strip()
    match = re.match(r"^(?P<status>.*?)\s*-\s*objective value\s+(?P<obj>\S+)\s*$", head)
    if not match:
        raise SolutionParseError(f"unrecognised CBC status line {head!r}")
    label = match.group("status")
    objective = _float(match.group("obj"), "CBC status line")
    if label.startswith("Optimal"):
        status = Status.OPTIMAL
    elif label.startswith(("Infeasible", "Integer infeasible", "Unbounded")):
        status = Status.INFEASIBLE
    elif label.startswith("Stopped on time"):
        status = Status.TIME_LIMIT
        if "no integer solution" in label:
            objective = None
    elif label.startswith("Stopped"):
        status = Status.ERROR
    else:
        raise SolutionParseError(f"unrecognised CBC status {label!r}")

    values = {}
    for raw in lines[1:]:
        tokens = raw.replace("**", " ").split()
        if not tokens:
            continue
        if len(tokens) < 3:
            raise SolutionParseError(f"bad CBC solution line {raw!r}")
        values[tokens[1]] = _float(tokens[2], "CBC solution line")

    best_bound = None
    if status == Status.OPTIMAL:
        best_bound = objective
    else:
        bound = re.search(r"Lower bound:\s*(\S+)", stdout)
        if bound:
            best_bound = _float(bound.group(1), "CBC log")
    if status == Status.INFEASIBLE:
        objective = None
    return status, objective, values, best_bound


_HIGHS_STATUS = {
    "Optimal": Status.OPTIMAL,
    "Infeasible": Status.INFEASIBLE,
    "Primal infeasible or unbounded": Status.INFEASIBLE,
    "Unbounded": Status.INFEASIBLE,
    "Time limit reached": Status.TIME_LIMIT,
}


def parse_highs_solution(text: str, stdout: str = "", is_mip: bool = True):
    """Return ``(status, objective, values, best_bound)`` from a HiGHS solution file."""
    lines = [ln.rstrip() for ln in text.splitlines()]
    try:
        label = lines[lines.index("Model status") + 1].strip()
    except (ValueError, IndexError):
        raise SolutionParseError("HiGHS solution file has no 'Model status' section") from None
    status = _HIGHS_STATUS.get(label, Status.ERROR)

    objective = None
    values = {}
    for pos, line in enumerate(lines):
        if line.startswith("Objective "):
            objective = _float(line.split()[1], "HiGHS objective line")
        elif line.startswith("# Columns "):
            count = int(line.split()[2])
            for raw in lines[pos + 1 : pos + 1 + count]:
                tokens = raw.split()
                if len(tokens) != 2:
                    raise SolutionParseError(f"bad HiGHS column line {raw!r}")
                values[tokens[0]] = _float(tokens[1], "HiGHS column line")
            break
    best_bound = objective if status == Status.OPTIMAL else None
    if status == Status.INFEASIBLE:
        objective = None
    return status, objective, values, best_bound


DIALECTS = {"cbc": parse_cbc_solution, "highs": parse_highs_solution}


class CommandSolver:
    """Run an external solver executable on an LP file."""

    def __init__(self, config: SolverConfig | None = None, executable: str | None = None):
        config = config or SolverConfig(backend="cbc")
        if config.dialect not in DIALECTS:
            raise ValueError(f"unknown solution dialect {config.dialect!r}; choose from {sorted(DIALECTS)}")
        self.config = config
        if config.command:
            self.template = config.command
            self.executable = executable
        else:
            self.executable = executable or find_cbc()
            if self.executable is None:
                raise SolverNotFoundError("no CBC executable found; install pulp or put cbc on PATH")
            self.template = CBC_TEMPLATE if config.dialect == "cbc" else HIGHS_TEMPLATE
        self.name = config.dialect

    def __repr__(self):
        return f"CommandSolver({self.template!r})"

    def solve(self, model: Model, relax: bool = False) -> SolveOutcome:
        cfg = self.config
        if relax:
            model = model.relaxed()
        is_mip = any(v.kind != "continuous" for v in model.variables)
        started = time.perf_counter()
        with tempfile.TemporaryDirectory(prefix="pcenter-") as tmp:
            model_path = Path(tmp) / "model.lp"
            solution_path = Path(tmp) / "solution.txt"
            model_path.write_text(write_lp_file(model))
            command = self.template.format(
                executable=self.executable or "",
                model=shlex.quote(str(model_path)),
                solution=shlex.quote(str(solution_path)),
                time_limit=cfg.time_limit,
                threads=cfg.threads,
                mip_gap=cfg.mip_gap,
                lp_tolerance=cfg.lp_tolerance,
            )
            argv = shlex.split(command)
            logger.debug("running %s", command)
            try:
                proc = subprocess.run(
                    argv, capture_output=True, text=True, timeout=cfg.time_limit + 120, cwd=tmp
                )
            except FileNotFoundError as exc:
                raise SolverNotFoundError(f"solver executable not found: {argv[0]}") from exc
            except subprocess.TimeoutExpired as exc:
                raise SolverFailedError(f"solver did not return within {cfg.time_limit + 120:.0f}s") from exc
            if cfg.keep_files:
                keep = Path(cfg.keep_files)
                keep.mkdir(parents=True, exist_ok=True)
                shutil.copy(model_path, keep / f"{model.name}.lp")
            if proc.returncode != 0:
                raise SolverFailedError(
                    f"solver exited with status {proc.returncode}", stderr=(proc.stderr or proc.stdout)[-2000:]
                )
            if not solution_path.exists():
                raise SolverFailedError("solver wrote no solution file", stderr=(proc.stderr or proc.stdout)[-2000:])
            text = solution_path.read_text()
        status, objective, values, bound = DIALECTS[cfg.dialect](text, proc.stdout, is_mip)
        names = {v.name for v in model.variables}
        unknown = set(values) - names
        if unknown:
            raise SolutionParseError(f"solution mentions unknown variables {sorted(unknown)[:5]}")
        assignment = {v.name: values.get(v.name, 0.0) for v in model.variables}
        shift = model.objective_constant
        return SolveOutcome(
            status=status,
            objective=None if objective is None else objective + shift,
            best_bound=None if bound is None else bound + shift,
            assignment=assignment if objective is not None else {},
            elapsed=time.perf_counter() - started,
        )
