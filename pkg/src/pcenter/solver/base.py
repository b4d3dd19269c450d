from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field


class Status(str, enum.Enum):
    OPTIMAL = "optimal"
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    TIME_LIMIT = "time_limit"
    ERROR = "error"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class SolveOutcome:
    status: Status
    objective: float | None = None
    best_bound: float | None = None
    assignment: dict = field(default_factory=dict)
    elapsed: float = 0.0
    message: str = ""

    @property
    def has_solution(self) -> bool:
        return self.status in (Status.OPTIMAL, Status.FEASIBLE) or (
            self.status == Status.TIME_LIMIT and self.objective is not None
        )


ENV_SOLVER = "PCENTER_SOLVER"
ENV_SOLVER_CMD = "PCENTER_SOLVER_CMD"
ENV_SOLVER_DIALECT = "PCENTER_SOLVER_DIALECT"


@dataclass(frozen=True)
class SolverConfig:
    """How to run a solver.

    ``backend`` is ``"cbc"`` (CBC executable), ``"highs"`` (in-process highspy
    on the written LP file) or ``"command"`` (any executable described by
    ``command`` whose solution file follows ``dialect``). ``command`` is a
    template with placeholders ``{model}``, ``{solution}``, ``{time_limit}``,
    ``{threads}``, ``{mip_gap}`` and ``{lp_tolerance}``.
    """

    backend: str = "auto"
    command: str | None = None
    dialect: str = "cbc"
    time_limit: float = 3600.0
    threads: int = 1
    mip_gap: float = 0.0
    lp_tolerance: float = 1e-9
    keep_files: str | None = None

    def __post_init__(self):
        if self.time_limit <= 0:
            raise ValueError("time_limit must be positive")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")
        if self.backend not in ("auto", "cbc", "highs", "command"):
            raise ValueError(f"unknown backend {self.backend!r}")

    @classmethod
    def from_env(cls, **overrides) -> "SolverConfig":
        env = {}
        if os.environ.get(ENV_SOLVER_CMD):
            env.update(backend="command", command=os.environ[ENV_SOLVER_CMD])
            if os.environ.get(ENV_SOLVER_DIALECT):
                env["dialect"] = os.environ[ENV_SOLVER_DIALECT]
        elif os.environ.get(ENV_SOLVER):
            env["backend"] = os.environ[ENV_SOLVER]
        env.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**env)
