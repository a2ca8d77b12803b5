"""Orbit-leash distances m, w, s between two actions, exact and truncated.

Run:  python demos/03_leash_distances.py
"""
from __future__ import annotations

from leash.actions import make_action
from leash.distances import certified_m_bound, gamma_sup, leash_m, leash_s, leash_w
from leash.groups import GammaSpec, make_group
from leash.measure import make_space
from leash.transforms import identity, rotation

Z = make_group("Z")
space = make_space(2)
t = make_action(Z, [rotation(space)])
s = make_action(Z, [identity(space)])
whole = GammaSpec.whole()

exact = gamma_sup(t, s, whole, mode="exact")
print(f"exact Gamma supremum {exact.value} (pair period {exact.period})")
for R in (1, 2, 4):
    print(f"  truncated at radius {R}: {gamma_sup(t, s, whole, radius=R).value}")

for name, fn in (("m", leash_m), ("w", leash_w), ("s", leash_s)):
    rep = fn(t, s, whole, n=2, k=6, mode="exact")
    print(f"{name}^(2,6) = {rep.value}  [{rep.exactness}]")

# w adds cover terms to the Gamma supremum that s takes a max with, so w can exceed s
print("certified bound on m at radius 4:", certified_m_bound(t, s, whole, n=2, k=6, radius=4).certified_bound)
