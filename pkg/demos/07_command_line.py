"""
The command line
================

``pcenter build | solve | bench`` wraps the library. The same entry point is
callable from Python, which is what this script does.
"""

import tempfile
from pathlib import Path

from pcenter import format_matrix, random_instance
from pcenter.cli import main

work = Path(tempfile.mkdtemp())
for seed in range(3):
    (work / f"rand{seed}.txt").write_text(format_matrix(random_instance(9, 9, 2, seed=seed)))

main(["build", "--input", str(work / "rand0.txt"), "--formulation", "cp1", "--out", str(work / "rand0.lp")])
main(["solve", "--input", str(work / "rand0.txt"), "--formulation", "cp2", "--algorithm", "two-step",
      "--trace", str(work / "trace.csv")])
main(["solve", "--input", str(work / "rand0.txt"), "--formulation", "p2", "--relax"])

report = work / "report.csv"
main(["bench", "--instances", str(work / "rand*.txt"), "--formulations", "p1,p2,cp1,cp2",
      "--bounds", "lb0ub0", "--out", str(report)])
print(report.read_text())
