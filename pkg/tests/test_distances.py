from __future__ import annotations

from fractions import Fraction

import pytest

from leash.actions import make_action, random_action
from leash.distances import (
    a_G,
    certified_m_bound,
    d_G,
    deficiency_envelope,
    gamma_sup,
    leash_distance,
    leash_m,
    leash_s,
    leash_w,
)
from leash.dyadic import Dyadic
from leash.errors import ExactUnsupported, ModelMismatch, NoEnvelopeAvailable
from leash.groups import GammaSpec, make_group
from leash.measure import make_space
from leash.transforms import identity, rotation

import oracles

Z = make_group("Z")
H2 = make_group("H", n=2)


def rot_pair():
    sp = make_space(2)
    return make_action(Z, [rotation(sp)]), make_action(Z, [identity(sp)])


def test_d_G_worked_value():
    t, s = rot_pair()
    want = Fraction(1, 2) * oracles.d([1, 2, 3, 0], [0, 1, 2, 3]) + Fraction(1, 4) * oracles.d([3, 0, 1, 2], [0, 1, 2, 3])
    assert want == Fraction(189, 256)
    assert d_G(t, s) == Dyadic(189, 8)
    assert d_G(t, t) == 0 and a_G(t, t) == 0


def test_gamma_sup_rotation():
    t, s = rot_pair()
    ident = [0, 1, 2, 3]
    want = max(oracles.a(oracles.power([1, 2, 3, 0], j), ident) for j in range(4))
    exact = gamma_sup(t, s, GammaSpec.whole(), mode="exact")
    assert exact.value.as_fraction() == want and exact.period == 4 and exact.exact
    assert gamma_sup(t, s, GammaSpec.whole(), radius=4).value == exact.value
    for R in range(1, 4):
        assert gamma_sup(t, s, GammaSpec.whole(), radius=R).value <= exact.value
    assert gamma_sup(t, t, GammaSpec.whole(), mode="exact").value == 0
    assert gamma_sup(t, t, GammaSpec.whole(), radius=3).value == 0


def test_exact_needs_cyclic_gamma():
    sp = make_space(3)
    t, s = random_action(H2, sp, 1), random_action(H2, sp, 2)
    with pytest.raises(ExactUnsupported):
        gamma_sup(t, s, GammaSpec.whole(), mode="exact")
    got = gamma_sup(t, s, GammaSpec.cyclic(H2.generator(1)), mode="exact")
    assert got.exact


def test_model_mismatch():
    t, _ = rot_pair()
    other = make_action(make_group("cyclic", m=4), [rotation(make_space(2))])
    with pytest.raises(ModelMismatch):
        d_G(t, other)


def test_leash_decomposition_and_flags():
    t, s = rot_pair()
    m = leash_m(t, s, GammaSpec.whole(), mode="exact")
    sup = gamma_sup(t, s, GammaSpec.whole(), mode="exact").value
    assert m.value - d_G(t, s) == sup
    assert m.exactness == "exact"
    assert leash_m(t, t, GammaSpec.whole(), mode="exact").value == 0
    tr = leash_m(t, s, GammaSpec.lattice(2), radius=8)
    assert tr.exactness == "truncated" and tr.radius == 8
    assert leash_w(t, s, GammaSpec.whole(), mode="exact").value <= m.value


def random_pairs(count=15):
    sp = make_space(3)
    for seed in range(count):
        yield random_action(Z, sp, seed), random_action(Z, sp, seed + 1000), GammaSpec.whole()
        yield (random_action(H2, sp, seed), random_action(H2, sp, seed + 1000),
               GammaSpec.cyclic(H2.generator(1)))


def test_a_G_below_d_G_and_monotone():
    for t, s, _ in random_pairs():
        assert a_G(t, s) <= d_G(t, s)
        grid = [[a_G(t, s, n, k) for k in (0, 2, 6, 14)] for n in range(0, 5)]
        for n in range(5):
            for j in range(3):
                assert grid[n][j] <= grid[n][j + 1]
        for n in range(4):
            for j in range(4):
                assert grid[n][j] <= grid[n + 1][j]


def test_premetric_comparisons():
    """``s <= 2^n w`` holds; the lower bound only holds as ``w <= 2 s``."""
    literal_lower = 0
    for t, s, gamma in random_pairs():
        for n in (1, 2, 3):
            for k in (2, 6, 14):
                w = leash_w(t, s, gamma, n, k, mode="exact").value
                sv = leash_s(t, s, gamma, n, k, mode="exact").value
                assert sv <= w.shift(n)
                assert w <= sv.shift(1)
                literal_lower += not (w <= sv)
    assert literal_lower > 0


def test_w_exceeds_s_on_explicit_pair():
    # for Z with Gamma = Z the supremum already covers K_1 and K_2, so w = s + (cover terms) > s
    t, s = rot_pair()
    w = leash_w(t, s, GammaSpec.whole(), 2, 6, mode="exact").value
    sv = leash_s(t, s, GammaSpec.whole(), 2, 6, mode="exact").value
    assert sv < w


def test_certified_bound():
    t, s = rot_pair()
    exact = gamma_sup(t, s, GammaSpec.whole(), mode="exact").value
    for R in range(1, 7):
        rep = certified_m_bound(t, s, GammaSpec.whole(), radius=R)
        assert rep.value <= rep.certified_bound
        assert rep.exactness == "truncated-with-certificate"
    rep = certified_m_bound(t, s, GammaSpec.whole(), radius=4)
    assert rep.certified_bound == d_G(t, s) + exact
    zero = certified_m_bound(t, s, GammaSpec.whole(), radius=2, envelopes=(Dyadic(0), Dyadic(0)))
    assert zero.certified_bound == zero.value
    sp = make_space(3)
    with pytest.raises(NoEnvelopeAvailable):
        certified_m_bound(random_action(H2, sp, 1), random_action(H2, sp, 2), GammaSpec.whole(), radius=2)


def test_deficiency_envelope_bounds_tail():
    t, _ = rot_pair()
    env = deficiency_envelope(t, GammaSpec.whole(), radius=3)
    from leash.metrics import THETA, metric_a
    for g in range(4, 30):
        assert metric_a(t(g), THETA) <= env


def test_dispatch():
    t, s = rot_pair()
    assert leash_distance("d_G", t, s).value == Dyadic(189, 8)
    with pytest.raises(ValueError):
        leash_distance("nope", t, s)
