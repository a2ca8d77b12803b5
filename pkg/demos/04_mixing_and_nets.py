"""Mixing profiles over norm annuli, and transport along an H-net G = H Gamma.

Run:  python demos/04_mixing_and_nets.py
"""
from __future__ import annotations

from leash.actions import make_action
from leash.groups import GammaSpec, make_group
from leash.measure import make_space
from leash.metrics import THETA, metric_a
from leash.mixing import h_net_bound, h_net_transport, mixing_profile
from leash.transforms import rotation

Z = make_group("Z")
t = make_action(Z, [rotation(make_space(2))])

# a periodic action repeats its profile: annuli (0,4] and (4,8] agree
for r1, r2 in ((0, 4), (4, 8)):
    prof = mixing_profile(t, GammaSpec.whole(), None, r1, r2)
    print(f"profile on ({r1},{r2}]:", [str(v) for v in prof.values], "deficiency", prof.deficiency)

net, gamma = [0, 1], GammaSpec.lattice(2)
for h in net:
    for g in (2, 4):
        moved = h_net_transport(t, h, g)
        print(f"h={h}, gamma={g}: transported {moved} == direct {metric_a(t(h + g), THETA)}")

rep = h_net_bound(t, net, gamma, None, 0, 8)
print(f"H-net deficiency {rep.deficiency} over {rep.pairs} pairs; ball({rep.coverage_radius}) fully factored")
