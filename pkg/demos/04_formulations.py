"""
Seven formulations, one optimum
===============================

Each builder returns a plain Model: variables, rows and an objective. They
share the integer optimum but differ in size and in LP relaxation strength.
"""

from pcenter import FORMULATIONS, build, clamp_distances, initial_bounds, model_stats, random_instance, rank_transform
from pcenter import extract_radius, solve_lp_relaxation, solve_mip

inst = random_instance(12, 12, 3, seed=5, high=40)
inst = clamp_distances(inst, initial_bounds(inst))

print(f"{'model':8} {'vars':>5} {'rows':>5} {'LP':>9} {'radius':>7}")
for name in FORMULATIONS:
    m = build(name, inst)
    stats = model_stats(m)
    lp = solve_lp_relaxation(m).objective
    radius = extract_radius(m, solve_mip(m).assignment)
    print(f"{name:8} {stats.n_variables:5} {stats.n_constraints:5} {lp:9.4f} {radius:7}")

# CP2 reports a ladder position. On ranked data it is comparable with CP1
ranked = rank_transform(inst)
print("ranked LP: cp1", solve_lp_relaxation(build("cp1", ranked)).objective,
      "cp2", solve_lp_relaxation(build("cp2", ranked)).objective)
