"""Finitely generated groups acting by permutations of dyadic cells.

Run:  python demos/02_groups_and_actions.py
"""
from __future__ import annotations

from leash.actions import make_action, random_action
from leash.groups import GammaSpec, enumerate_gamma, make_group
from leash.measure import make_space
from leash.transforms import rotation

Z = make_group("Z")
H2 = make_group("H", n=2)
print("ball of radius 2 in Z:", [Z.format(g) for g in Z.ball(2)])
print("ball of radius 1 in H(2):", [H2.format(g) for g in H2.ball(1)])
print("2Z elements with norm in (0, 6]:", [Z.format(g) for g in enumerate_gamma(Z, GammaSpec.lattice(2), 0, 6)])

space = make_space(3)
t = make_action(Z, [rotation(space)])
print("T^3 sends cell 0 to", t(3).forward[0])

# random actions satisfy the group relators by construction
h = random_action(H2, space, seed=7)
h.check_relators()
print("random H(2) action: relators hold; g1 image =", h.generator_images["g1"].forward.tolist())
