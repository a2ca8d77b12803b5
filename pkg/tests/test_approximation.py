from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from leash.actions import conjugate_action, make_action, random_action
from leash.approximation import (
    greedy_eps_net,
    product_approx_witness,
    product_cutoff_gap,
    rokhlin_experiment,
)
from leash.distances import leash_m
from leash.dyadic import Dyadic
from leash.errors import DepthTooDeep, ResolutionTooLarge
from leash.groups import GammaSpec, make_group
from leash.measure import approx_index, canonical_family, make_space, measure
from leash.metrics import max_entry_gap, metric_a
from leash.transforms import Transformation, apply, identity, near_identity, rotation

Z = make_group("Z")
H2 = make_group("H", n=2)
seeds = st.integers(0, 2**32 - 1)


@pytest.mark.parametrize("model", [Z, H2])
def test_product_witness_zero(model):
    sp = make_space(2)
    for seed in range(5):
        t, s = random_action(model, sp, seed), random_action(model, sp, seed + 7)
        for k in range(7):
            assert product_approx_witness(t, s, k, radius=4).all_zero
        assert product_approx_witness(t, t, 6, radius=4).all_zero


def test_product_witness_covers_gamma_annulus():
    sp = make_space(2)
    t, s = random_action(Z, sp, 1), random_action(Z, sp, 2)
    rep = product_approx_witness(t, s, 6, radius=1, gamma=GammaSpec.lattice(3), annulus=(0, 9))
    assert {g for g, _ in rep.entries} == {-1, 0, 1, -3, 3, -6, 6, -9, 9}
    assert rep.all_zero


def test_product_witness_depth_limit():
    sp = make_space(2)
    t = random_action(Z, sp, 1)
    with pytest.raises(DepthTooDeep):
        product_approx_witness(t, t, 7)


def test_cutoff_counterexample():
    triv = make_action(Z, [identity(make_space(1))])
    swap = make_action(Z, [Transformation.from_forward([1, 0])])
    assert product_cutoff_gap(triv, swap, 2, 1) == 0
    assert product_cutoff_gap(triv, swap, 3, 1) == Dyadic(1, 8)
    assert product_cutoff_gap(triv, swap, 6, 1) > 0


def test_rokhlin_experiment():
    sp = make_space(2)
    acts = [make_action(Z, [rotation(sp, j)]) for j in range(4)]
    rep = rokhlin_experiment(acts, 6, radius=3)
    assert rep.all_zero and rep.reached() == [True] * 4 and len(rep.entries) == 4 * 7
    with pytest.raises(ResolutionTooLarge):
        rokhlin_experiment([random_action(Z, make_space(5), s) for s in range(4)], 6)


def test_rokhlin_without_reordering_misses_factors():
    from leash.actions import product_action_many
    from leash.metrics import metric_a_cross
    sp = make_space(2)
    acts = [make_action(Z, [rotation(sp, j)]) for j in range(4)]
    prod = product_action_many(acts)
    assert metric_a_cross(prod(1), acts[1](1), 6) > 0


def test_greedy_net_rules():
    sp = make_space(2)
    t = make_action(Z, [rotation(sp)])
    s = make_action(Z, [identity(sp)])

    def dist(x, y):
        return leash_m(x, y, GammaSpec.whole(), mode="exact").value

    assert greedy_eps_net([t, t, t], Dyadic(1, 1), dist).centers == (0,)
    assert greedy_eps_net([t, s, t, s], 0, dist).centers == (0, 1)
    net = greedy_eps_net([t, s], Dyadic(1, 2), dist)
    assert net.centers == (0, 1) and dist(t, s) > Dyadic(1, 2)
    assert net.assignment == (0, 1)


@given(seeds, st.sampled_from([2, 4, 8]))
def test_net_covers_everything(seed, count):
    import numpy as np
    rng = np.random.default_rng(seed)
    pts = [int(x) for x in rng.integers(0, 64, count)]
    net = greedy_eps_net(pts, 10, lambda a, b: Dyadic(abs(a - b)))
    for i, c in enumerate(net.assignment):
        assert abs(pts[i] - pts[c]) < 10 or pts[i] == pts[c]
    for a in net.centers:
        for b in net.centers:
            assert a == b or abs(pts[a] - pts[b]) >= 10


@given(seeds, st.sampled_from([Dyadic(1, 2), Dyadic(1, 3)]))
def test_conjugation_continuity_nontrivial(seed, eps):
    """At L=6 the budget eps/2 allows real transpositions, so the bound is exercised."""
    sp = make_space(6)
    u = near_identity(sp, eps.shift(-1), seed, depth=6)
    t = random_action(H2, sp, seed)
    conj = conjugate_action(t, u)
    for g in H2.ball(3):
        assert metric_a(conj(g), t(g), n=6) < eps


def test_conjugation_continuity_values_are_not_all_zero():
    sp = make_space(6)
    eps = Dyadic(1, 2)
    t = random_action(Z, sp, 4)
    values = []
    for seed in range(10):
        u = near_identity(sp, eps.shift(-1), seed, depth=6)
        values += [metric_a(conjugate_action(t, u)(g), t(g), n=6) for g in Z.ball(3)]
    assert max(values) > 0 and max(values) < eps


def test_fixed_u_continuity_example():
    sp = make_space(6)
    fam = canonical_family(sp)
    eps = Dyadic(1, 1)
    u = near_identity(sp, eps.shift(-3), 1)
    n = 3
    k = max(approx_index(fam, apply(u, fam[i]), eps.shift(-3)) for i in range(1, n + 1))
    t = random_action(Z, sp, 2)
    s = conjugate_action(t, near_identity(sp, eps.shift(-3), 9))
    tu, su = conjugate_action(t, u), conjugate_action(s, u)
    for g in Z.ball(4):
        assert max_entry_gap(t(g), s(g), n=k) < eps.shift(-1)
        assert metric_a(tu(g), su(g), n=n) < eps
    for i in range(1, n + 1):
        assert measure(apply(u, fam[i]) ^ fam[i]) < eps.shift(-3)
