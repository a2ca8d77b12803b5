"""Dyadic cells, the canonical interval family, and the two metrics d and a.

Run:  python demos/01_measure_and_metrics.py
"""
from __future__ import annotations

from leash.measure import canonical_family, family_size, make_space
from leash.metrics import THETA, metric_a, metric_d
from leash.transforms import Transformation, identity, rotation

space = make_space(2)
print(f"X_2 has {space.cell_count} cells; the interval family has {family_size(2)} members")
for index, interval in enumerate(canonical_family(space).sets(), start=1):
    print(f"  interval {index}: cells {interval.members()}, measure {interval.measure()}")

rot, ident = rotation(space), identity(space)
print("d(rotation, identity) =", metric_d(rot, ident))
print("a(rotation, identity) =", metric_a(rot, ident))

# a measures correlation against the independent coupling Theta
swap = Transformation(make_space(1), [1, 0])
print("a(swap, Theta) =", metric_a(swap, THETA))

# the truncated metric climbs monotonically towards the full value
print("a_n(rotation, identity), n = 1..6:", [str(metric_a(rot, ident, n=n)) for n in range(1, 7)])
