"""
Reading and generating instances
================================

A p-center instance is a client-by-facility distance matrix plus a budget p.
"""

import numpy as np

from pcenter import Instance, brute_force_radius, graph_to_instance, parse_matrix, parse_orlib, random_instance

# a distance matrix written by hand: header "N M p", then N rows
t3 = parse_matrix("3 3 1\n0 2 5\n2 0 4\n5 4 0")
print(t3)
print(t3.distances)

# OR-Library pmed files describe a graph; distances are shortest paths
g = parse_orlib("4 4 2\n1 2 3\n2 3 4\n3 4 1\n1 4 9")
inst = graph_to_instance(g)
print(inst.distances)          # 1 -> 4 goes through 2 and 3: 3 + 4 + 1 = 8 < 9

# random instances are reproducible from their seed
a = random_instance(6, 6, 3, seed=2)
assert np.array_equal(a.distances, random_instance(6, 6, 3, seed=2).distances)

# the exhaustive oracle: best radius and the centers achieving it (0-based)
radius, centers = brute_force_radius(a)
print("radius", radius, "centers", centers, "check", a.radius(centers))

# labels survive sub-instances
sub = Instance(a.distances, 2).subset([0, 2, 4], [1, 3, 5])
print(sub.client_labels, sub.facility_labels)
