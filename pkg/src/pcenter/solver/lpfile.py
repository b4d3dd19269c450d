"""Writer for the CPLEX-style LP text format read by CBC, HiGHS, GLPK, SCIP and others.

Output is deterministic: rows and variables keep model order, one row per
line, integers printed as integers and floats with ``repr`` precision. The
objective constant is not written (not every reader accepts one); adapters add
``Model.objective_constant`` back to the reported objective.
"""

from __future__ import annotations

from ..formulations import BINARY, CONTINUOUS, INTEGER, Model


def _fmt(x) -> str:
    if isinstance(x, float) and x.is_integer() and abs(x) < 2**53:
        return str(int(x))
    return repr(x)


def _expr(terms, names) -> str:
    parts = []
    for j, c in terms:
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        coef = "" if mag == 1 else _fmt(mag) + " "
        parts.append(f"{sign} {coef}{names[j]}")
    if not parts:
        return ""
    first = parts[0]
    parts[0] = first[2:] if first.startswith("+ ") else "-" + first[2:]
    return " ".join(parts)


def write_lp_file(m: Model) -> str:
    names = [v.name for v in m.variables]
    out = [f"\\ model {m.name}"]
    if m.objective_constant:
        out.append(f"\\ objective constant {_fmt(m.objective_constant)} (not included below)")
    out.append("Minimize")
    objective = _expr(m.objective, names) if m.objective else f"0 {names[0]}"
    out.append(f" obj: {objective}")
    out.append("Subject To")
    for c in m.constraints:
        lhs = _expr(c.terms, names) if c.terms else f"0 {names[0]}"
        out.append(f" {c.name}: {lhs} {c.sense} {_fmt(c.rhs)}")

    bounds = []
    for v in m.variables:
        if v.kind == BINARY:
            continue
        lower = "-inf" if v.lower is None else _fmt(v.lower)
        if v.upper is None:
            if v.lower != 0:
                bounds.append(f" {v.name} >= {lower}")
        else:
            bounds.append(f" {lower} <= {v.name} <= {_fmt(v.upper)}")
    out.append("Bounds")
    out.extend(bounds)

    generals = [v.name for v in m.variables if v.kind == INTEGER]
    binaries = [v.name for v in m.variables if v.kind == BINARY]
    if generals:
        out.append("Generals")
        out.extend(f" {nm}" for nm in generals)
    if binaries:
        out.append("Binaries")
        out.extend(f" {nm}" for nm in binaries)
    out.append("End")
    return "\n".join(out) + "\n"


def relaxed_lp_file(m: Model) -> str:
    """LP text with every integrality marker dropped; binaries keep their [0, 1] box."""
    relaxed = m.relaxed()
    assert all(v.kind == CONTINUOUS for v in relaxed.variables)
    return write_lp_file(relaxed)
