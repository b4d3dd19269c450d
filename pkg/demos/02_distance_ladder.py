"""
The distance ladder and critical indices
========================================

Every radius is one of the distinct distances D^0 < ... < D^K. For client i,
only the ladder positions where a facility sits exactly at D^k change which
facilities are "close enough"; those are its critical indices S_i.
"""

from pcenter import build_ladder, critical_indices, parse_matrix, rank_transform
from pcenter.ladder import coverage_set, next_distance_at_least

t3 = parse_matrix("3 3 1\n0 2 5\n2 0 4\n5 4 0")
ladder = build_ladder(t3)
print("ladder", ladder.values, "K =", ladder.K)

# facilities strictly closer than D^k, for client 0
for k in range(1, ladder.K + 1):
    print(f"k={k} D^k={ladder[k]}", sorted(coverage_set(t3, ladder, 0, k)))

# S_i and the rows actually generated (S_i plus K)
s = critical_indices(t3, ladder)
for i in range(t3.n_clients):
    print("client", i, "S_i", sorted(s.sets[i]), "rows", s.constraint_indices(i))
print("covering rows in total:", s.total_rows(), "instead of", t3.n_clients * ladder.K)

# ranks instead of distances: consecutive gaps become 1
print(rank_transform(t3).distances)

# LP values are rounded up onto the ladder
print(next_distance_at_least(ladder, 3.2))
