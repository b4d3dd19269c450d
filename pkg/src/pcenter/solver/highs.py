"""In-process HiGHS backend.

The model still crosses the same boundary as the subprocess adapters: it is
written as LP text and read back by HiGHS's own LP reader, so both backends
see byte-identical models.
"""

from __future__ import annotations

import tempfile
import time
from pathlib import Path

from ..errors import SolverFailedError, SolverNotFoundError
from ..formulations import Model
from .base import SolveOutcome, SolverConfig, Status
from .lpfile import write_lp_file


def highs_available() -> bool:
    try:
        import highspy  # noqa: F401
    except ImportError:
        return False
    return True


class HighsSolver:
    name = "highs"

    def __init__(self, config: SolverConfig | None = None):
        try:
            import highspy
        except ImportError as exc:
            raise SolverNotFoundError("highspy is not installed") from exc
        self._highspy = highspy
        self.config = config or SolverConfig(backend="highs")

    def __repr__(self):
        return "HighsSolver()"

    def solve(self, model: Model, relax: bool = False) -> SolveOutcome:
        hs = self._highspy
        cfg = self.config
        if relax:
            model = model.relaxed()
        started = time.perf_counter()
        h = hs.Highs()
        h.setOptionValue("output_flag", False)
        h.setOptionValue("time_limit", float(cfg.time_limit))
        h.setOptionValue("mip_rel_gap", float(cfg.mip_gap))
        h.setOptionValue("primal_feasibility_tolerance", max(float(cfg.lp_tolerance), 1e-10))
        with tempfile.TemporaryDirectory(prefix="pcenter-") as tmp:
            path = Path(tmp) / "model.lp"
            path.write_text(write_lp_file(model))
            if h.readModel(str(path)) != hs.HighsStatus.kOk:
                raise SolverFailedError("HiGHS rejected the LP file")
        if h.run() == hs.HighsStatus.kError:
            raise SolverFailedError("HiGHS reported an error")

        ms = h.getModelStatus()
        info = h.getInfo()
        status = {
            hs.HighsModelStatus.kOptimal: Status.OPTIMAL,
            hs.HighsModelStatus.kInfeasible: Status.INFEASIBLE,
            hs.HighsModelStatus.kUnboundedOrInfeasible: Status.INFEASIBLE,
            hs.HighsModelStatus.kUnbounded: Status.INFEASIBLE,
            hs.HighsModelStatus.kTimeLimit: Status.TIME_LIMIT,
        }.get(ms, Status.ERROR)
        has_primal = info.primal_solution_status == 2  # kSolutionStatusFeasible
        objective = info.objective_function_value if has_primal and status != Status.INFEASIBLE else None
        is_mip = any(v.kind != "continuous" for v in model.variables)
        if status == Status.OPTIMAL:
            bound = objective
        elif is_mip and status == Status.TIME_LIMIT:
            bound = info.mip_dual_bound
        else:
            bound = None

        assignment = {}
        if objective is not None:
            lp = h.getLp()
            values = h.getSolution().col_value
            assignment = dict(zip(lp.col_names_, values))
            assignment = {v.name: float(assignment.get(v.name, 0.0)) for v in model.variables}
        shift = model.objective_constant
        return SolveOutcome(
            status=status,
            objective=None if objective is None else objective + shift,
            best_bound=None if bound is None else bound + shift,
            assignment=assignment,
            elapsed=time.perf_counter() - started,
            message=h.modelStatusToString(ms),
        )
