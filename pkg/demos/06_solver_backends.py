"""
Talking to solvers
==================

Models are written in LP format and handed to a solver. CBC (bundled with
pulp) runs as a subprocess, HiGHS can run in-process, and any other program
can be plugged in with a command template.
"""

import sys
import tempfile
from pathlib import Path

from pcenter import SolverConfig, build, make_solver, parse_matrix, write_lp_file
from pcenter.solver import solve_mip

t3 = parse_matrix("3 3 1\n0 2 5\n2 0 4\n5 4 0")
m = build("cp2", t3)
print(write_lp_file(m))

for backend in ("cbc", "highs"):
    out = solve_mip(m, make_solver(SolverConfig(backend=backend)))
    print(backend, out.status, out.objective, f"{out.elapsed * 1000:.0f} ms")

# any executable works if it writes a CBC- or HiGHS-style solution file.
# Here a few lines of Python stand in for a "highs" binary.
script = Path(tempfile.mkdtemp()) / "my_highs.py"
script.write_text(
    "import sys, highspy\n"
    "h = highspy.Highs(); h.setOptionValue('output_flag', False)\n"
    "h.readModel(sys.argv[1]); h.run(); h.writeSolution(sys.argv[2], 0)\n"
)
cfg = SolverConfig(backend="command", command=f"{sys.executable} {script} {{model}} {{solution}}", dialect="highs")
print("command", solve_mip(m, make_solver(cfg)).assignment)
