"""
The two-step method
===================

Step 1 alternates dominance reduction with LP rounding until the LP value
stops lifting the lower bound. Step 2 solves what is left exactly.
"""

import numpy as np

from pcenter import graph_to_instance, parse_orlib, two_step_solve

# a random connected 60-vertex graph in pmed format
rng = np.random.default_rng(3)
n = 60
edges = [(v, int(rng.integers(1, v)), int(rng.integers(1, 60))) for v in range(2, n + 1)]
edges += [(int(u), int(v), int(rng.integers(1, 60))) for u, v in rng.integers(1, n + 1, size=(60, 2)) if u != v]
text = f"{n} {len(edges)} 4\n" + "\n".join(f"{u} {v} {w}" for u, v, w in edges)
inst = graph_to_instance(parse_orlib(text))

radius, trace = two_step_solve("cp1", inst)
print("radius", radius, "status", trace.status)
print(trace.to_csv())
print(f"step 1 {trace.t1:.2f}s, total {trace.t2:.2f}s")
