"""Command-line front end: ``pcenter build | solve | bench``.

Exit codes: 0 success, 1 instance parse error, 2 bad flags or empty
instance set, 3 file I/O error, 4 solver failure.
"""

from __future__ import annotations

import argparse
import csv
import glob
import logging
import re
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from .algorithm import two_step_solve
from .bounds import (
    Bounds,
    Provenance,
    clamp_distances,
    fixture_bounds,
    initial_bounds,
    orlib_table,
    snap_bounds,
    trivial_bounds,
)
from .errors import InvalidBoundsError, ParseError, PCenterError, SolverError
from .formulations import FORMULATIONS, build, extract_radius, model_stats
from .instance import Instance, graph_to_instance, orlib_number, parse_matrix, parse_orlib
from .ladder import build_ladder
from .solver import SolverConfig, Status, make_solver, solve_lp_relaxation, solve_mip, write_lp_file

logger = logging.getLogger("pcenter")

EXIT_OK, EXIT_PARSE, EXIT_FLAGS, EXIT_IO, EXIT_SOLVER = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, float) and x.is_integer():
        return str(int(x))
    if isinstance(x, float):
        return format(x, ".10g")
    return str(x)


def load_instance(path, fmt: str) -> Instance:
    text = Path(path).read_text()
    if fmt == "orlib":
        return graph_to_instance(parse_orlib(text))
    return parse_matrix(text)


def guess_format(path) -> str:
    return "orlib" if orlib_number(path) is not None else "matrix"


def resolve_bounds(spec: str, inst: Instance, path) -> Bounds:
    if spec == "none":
        b = trivial_bounds(inst)
    elif spec == "lb0ub0":
        b = initial_bounds(inst)
    elif spec == "fixture":
        number = orlib_number(path)
        if number is None or number not in orlib_table():
            logger.warning("no fixture bounds for %s; falling back to lb0ub0", path)
            b = initial_bounds(inst)
        else:
            b = fixture_bounds(number)
    else:
        match = re.fullmatch(r"\s*([-+0-9.eE]+)\s*,\s*([-+0-9.eE]+)\s*", spec)
        if not match:
            raise UsageError(f"--bounds must be none, lb0ub0, fixture or LB,UB; got {spec!r}")
        lo, hi = (float(g) for g in match.groups())
        lo, hi = (int(v) if v.is_integer() else v for v in (lo, hi))
        try:
            b = Bounds(lo, hi, Provenance.USER)
        except InvalidBoundsError as exc:
            raise UsageError(str(exc)) from None
    return snap_bounds(b, build_ladder(inst))


def _solver_config(args) -> SolverConfig:
    overrides = dict(time_limit=args.time_limit, threads=args.threads)
    if args.solver_cmd:
        overrides.update(backend="command", command=args.solver_cmd, dialect=args.solver_dialect)
    elif args.solver:
        overrides["backend"] = args.solver
    return SolverConfig.from_env(**overrides)


def _add_model_flags(p, with_out=True):
    p.add_argument("--input", required=True, help="instance file")
    p.add_argument("--format", choices=("orlib", "matrix"), help="default: orlib for pmed* names, else matrix")
    p.add_argument("--formulation", choices=sorted(FORMULATIONS), default="cp1")
    p.add_argument("--bounds", default="lb0ub0", help="none | lb0ub0 | fixture | LB,UB")
    if with_out:
        p.add_argument("--out", help="write the LP model here")


def _add_solver_flags(p):
    p.add_argument("--time-limit", type=float, default=3600.0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--solver", choices=("auto", "cbc", "highs"), help="default: $PCENTER_SOLVER or auto")
    p.add_argument("--solver-cmd", help="command template, e.g. 'cbc {model} solve solu {solution}'")
    p.add_argument("--solver-dialect", choices=("cbc", "highs"), default="cbc")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pcenter", description="p-center MILP formulations and two-step solver")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="write a formulation as an LP file and print its size")
    _add_model_flags(p)

    p = sub.add_parser("solve", help="solve an instance")
    _add_model_flags(p)
    p.add_argument("--algorithm", choices=("direct", "two-step"), default="direct")
    p.add_argument("--relax", action="store_true", help="solve the LP relaxation only (direct)")
    p.add_argument("--trace", help="trace CSV path for --algorithm two-step")
    _add_solver_flags(p)

    p = sub.add_parser("bench", help="run formulations over a set of instances and write a CSV report")
    p.add_argument("--instances", required=True, help="glob, e.g. 'data/orlib/pmed*.txt'")
    p.add_argument("--formulations", default="p1,p2,cp1,cp2")
    p.add_argument("--bounds", default="fixture")
    p.add_argument("--format", choices=("orlib", "matrix"))
    p.add_argument("--algorithm", choices=("direct", "two-step"), default="direct")
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=1)
    _add_solver_flags(p)
    return parser


def cmd_build(args) -> int:
    inst = load_instance(args.input, args.format or guess_format(args.input))
    b = resolve_bounds(args.bounds, inst, args.input)
    clamped = clamp_distances(inst, b)
    model = build(args.formulation, clamped)
    stats = model_stats(model)
    if args.out:
        Path(args.out).write_text(write_lp_file(model))
    print(f"variables={stats.n_variables} constraints={stats.n_constraints}")
    return EXIT_OK


def cmd_solve(args) -> int:
    if args.relax and args.algorithm != "direct":
        raise UsageError("--relax only applies to --algorithm direct")
    inst = load_instance(args.input, args.format or guess_format(args.input))
    b = resolve_bounds(args.bounds, inst, args.input)
    solver = make_solver(_solver_config(args))

    if args.algorithm == "two-step":
        radius, trace = two_step_solve(args.formulation, inst, b, solver)
        trace_path = args.trace or f"{Path(args.input).stem}.{args.formulation}.trace.csv"
        trace.to_csv(trace_path)
        print(f"radius={_fmt(radius)}")
        print(f"trace={trace_path}")
        return EXIT_OK

    clamped = clamp_distances(inst, b)
    model = build(args.formulation, clamped)
    if args.out:
        Path(args.out).write_text(write_lp_file(model))
    if args.relax:
        out = solve_lp_relaxation(model, solver)
        if out.status != Status.OPTIMAL:
            raise SolverError(f"LP relaxation ended with status {out.status}")
        print(f"lp={_fmt(out.objective)}")
        return EXIT_OK
    out = solve_mip(model, solver)
    if not out.has_solution:
        raise SolverError(f"MIP solve ended with status {out.status}")
    radius = extract_radius(model, out.assignment)
    if radius > b.ub:
        raise SolverError(f"no solution with radius <= {b.ub}; the upper bound is not valid")
    print(f"radius={_fmt(radius)}")
    if out.status != Status.OPTIMAL:
        print(f"status={out.status}")
    return EXIT_OK


@dataclass
class BenchRow:
    instance: str
    n: int | None = None
    p: int | None = None
    formulation: str = ""
    n_variables: int | None = None
    n_constraints: int | None = None
    lp_bound: float | None = None
    radius: float | None = None
    status: str = ""
    t1: float | None = None
    t2: float | None = None
    total_seconds: float | None = None
    message: str = ""


def _natural_key(path):
    number = orlib_number(path)
    return (0, number, str(path)) if number is not None else (1, 0, str(path))


def bench_one(path, formulation, bounds_spec, fmt, algorithm, solver) -> BenchRow:
    row = BenchRow(instance=Path(path).stem, formulation=formulation)
    started = time.perf_counter()
    try:
        inst = load_instance(path, fmt or guess_format(path))
        row.n, row.p = inst.n_clients, inst.p
        b = resolve_bounds(bounds_spec, inst, path)
        clamped = clamp_distances(inst, b)
        model = build(formulation, clamped)
        stats = model_stats(model)
        row.n_variables, row.n_constraints = stats.n_variables, stats.n_constraints
        lp = solve_lp_relaxation(model, solver)
        row.lp_bound = lp.objective
        if algorithm == "two-step":
            radius, trace = two_step_solve(formulation, inst, b, solver)
            row.radius, row.status, row.t1, row.t2 = radius, str(trace.status), trace.t1, trace.t2
        else:
            row.t1 = lp.elapsed
            out = solve_mip(model, solver)
            row.t2 = out.elapsed
            row.status = str(out.status)
            if out.has_solution:
                row.radius = extract_radius(model, out.assignment)
    except (PCenterError, OSError) as exc:
        row.status = str(Status.ERROR)
        row.radius = None
        row.message = str(exc)[:200]
    row.total_seconds = time.perf_counter() - started
    return row


def cmd_bench(args) -> int:
    paths = sorted(glob.glob(args.instances), key=_natural_key)
    if not paths:
        raise UsageError(f"no instance matches {args.instances!r}")
    formulations = [f.strip() for f in args.formulations.split(",") if f.strip()]
    unknown = [f for f in formulations if f not in FORMULATIONS]
    if unknown or not formulations:
        raise UsageError(f"unknown formulations {unknown}; choose from {sorted(FORMULATIONS)}")
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    solver = make_solver(_solver_config(args))
    tasks = [(path, f) for path in paths for f in formulations]
    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        rows = list(pool.map(lambda t: bench_one(t[0], t[1], args.bounds, args.format, args.algorithm, solver), tasks))
    order = {f: i for i, f in enumerate(formulations)}
    key = {Path(p).stem: _natural_key(p) for p in paths}
    rows.sort(key=lambda r: (key[r.instance], order[r.formulation]))
    names = [f.name for f in fields(BenchRow)]
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(names)
        for r in rows:
            d = asdict(r)
            writer.writerow([_fmt(d[n]) for n in names])
    failed = sum(r.status == str(Status.ERROR) for r in rows)
    print(f"rows={len(rows)} failed={failed} report={args.out}")
    return EXIT_OK


COMMANDS = {"build": cmd_build, "solve": cmd_solve, "bench": cmd_bench}


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FLAGS
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PCenterError as exc:
        if isinstance(exc, SolverError):
            detail = getattr(exc, "stderr", "")
            print(f"solver error: {exc}", file=sys.stderr)
            if detail:
                print(detail[-1000:], file=sys.stderr)
            return EXIT_SOLVER
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
