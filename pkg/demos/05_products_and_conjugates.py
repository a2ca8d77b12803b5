"""Products see only their first factor at coarse depth; block reordering reaches every factor.

Run:  python demos/05_products_and_conjugates.py
"""
from __future__ import annotations

from leash.actions import make_action, random_action
from leash.approximation import greedy_eps_net, product_approx_witness, product_cutoff_gap, rokhlin_experiment
from leash.distances import d_G
from leash.dyadic import Dyadic
from leash.groups import make_group
from leash.measure import family_size, make_space
from leash.transforms import Transformation, identity, rotation

Z = make_group("Z")
sp = make_space(2)
t = make_action(Z, [rotation(sp)])
s = random_action(Z, sp, seed=3)

w = product_approx_witness(t, s, k=family_size(2), radius=4)
print(f"T x S against T on level <= 2 intervals: max {w.max_value} over {len(w.entries)} elements")
print("one level deeper the second factor shows:",
      product_cutoff_gap(make_action(Z, [identity(make_space(1))]),
                         make_action(Z, [Transformation(make_space(1), [1, 0])]), family_size(1) + 1, 1))

actions = [t, s, make_action(Z, [identity(sp)]), make_action(Z, [Transformation(sp, [1, 0, 2, 3])])]
rep = rokhlin_experiment(actions, k=6, radius=3)
print(f"4-fold product on X_8: every factor reached at depth 6: {all(rep.reached())}")

net = greedy_eps_net(actions, Dyadic(1, 2), d_G)
print("greedy 1/4-net centers:", net.centers, "assignment", net.assignment)
