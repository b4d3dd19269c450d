"""
Bounds, clamping and dominance
==============================

Any lb <= opt <= ub lets us flatten distances outside [lb, ub]. The
flattened matrix often has facilities that are never better than another one,
and clients that are covered whenever another client is; dropping them keeps
the optimum.
"""

from pcenter import Bounds, brute_force_radius, clamp_distances, initial_bounds, random_instance, reduce
from pcenter.reduction import dominated_clients, dominated_facilities

inst = random_instance(10, 10, 3, seed=11, high=30)
radius, _ = brute_force_radius(inst)
b = initial_bounds(inst)
print("LB0", b.lb, "opt", radius, "UB0", b.ub)

# below lb -> lb, above ub -> ub + 1
clamped = clamp_distances(inst, b)
print("distinct values before/after:", len(set(inst.distances.ravel())), len(set(clamped.distances.ravel())))

print("dominated facilities", sorted(dominated_facilities(clamped)))
print("dominated clients", sorted(dominated_clients(clamped)))

reduced, report = reduce(clamped)
print(f"{inst.n_clients}x{inst.n_facilities} -> {reduced.n_clients}x{reduced.n_facilities} in {report.rounds} rounds")
print("optimum still", brute_force_radius(reduced)[0])

# a tighter valid window shrinks things further
tight, _ = reduce(clamp_distances(inst, Bounds(radius, radius)))
print("with lb = ub = opt:", tight.n_clients, "x", tight.n_facilities)
