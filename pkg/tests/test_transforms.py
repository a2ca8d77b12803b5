from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from leash.dyadic import Dyadic
from leash.errors import EpsTooSmall, ResolutionTooLarge, SpaceMismatch
from leash.measure import MeasurableSet, canonical_family, family_size, make_space, measure
from leash.metrics import metric_d
from leash.transforms import (
    Transformation,
    apply,
    apply_inverse,
    compose,
    conjugate,
    identity,
    invert,
    lift_product,
    lift_product_many,
    near_identity,
    order,
    permute_blocks,
    power,
    random_periodic,
    random_transformation,
    refine,
    rotation,
)

import oracles

seeds = st.integers(0, 2**32 - 1)


def perm(*xs):
    return Transformation.from_forward(list(xs))


def test_rotation_examples():
    sp = make_space(2)
    r = rotation(sp)
    assert apply(r, sp.cells(0, 1)).members() == [1, 2]
    assert apply_inverse(r, sp.cells(0)).members() == [3]
    assert compose(r, invert(r)) == identity(sp)
    assert order(r) == 4 and power(r, 4).is_identity()
    assert power(r, -1).forward.tolist() == [3, 0, 1, 2]


def test_compose_applies_right_operand_first():
    a, b = perm(1, 0, 2, 3), perm(0, 2, 1, 3)
    assert compose(a, b).forward.tolist() == oracles.compose([1, 0, 2, 3], [0, 2, 1, 3])


def test_conjugate_examples():
    sp = make_space(2)
    r = rotation(sp)
    u = random_transformation(sp, 3)
    assert conjugate(r, identity(sp)) == r
    assert conjugate(identity(sp), u) == identity(sp)
    assert conjugate(r, r) == r
    assert conjugate(r, u) == compose(invert(u), compose(r, u))


def test_space_mismatch():
    with pytest.raises(SpaceMismatch):
        compose(identity(make_space(1)), identity(make_space(2)))


def test_rejects_non_bijection():
    with pytest.raises(ValueError):
        Transformation(make_space(1), [0, 0])
    with pytest.raises(ValueError):
        Transformation(make_space(1), [0, 2])


def test_lift_product_examples():
    swap, id1 = perm(1, 0), identity(make_space(1))
    assert lift_product(id1, id1) == identity(make_space(2))
    assert lift_product(swap, id1).forward.tolist() == [2, 3, 0, 1]
    assert lift_product_many([swap, id1, swap]).forward.tolist() == [5, 4, 7, 6, 1, 0, 3, 2]
    assert lift_product_many([swap]) == swap
    with pytest.raises(ResolutionTooLarge):
        lift_product(identity(make_space(9)), identity(make_space(9)))


def test_lift_product_formula_and_intervals():
    L = 2
    sp, big = make_space(L), make_space(2 * L)
    for seed in range(5):
        t, s = random_transformation(sp, seed), random_transformation(sp, seed + 100)
        p = lift_product(t, s)
        for c in range(16):
            assert p.forward[c] == (t.forward[c >> L] << L) | s.forward[c & 3]
        for level in range(1, L + 1):
            for pos in range(2 ** level):
                coarse = apply(t, sp.interval(level, pos))
                lifted = apply(p, big.interval(level, pos))
                want = MeasurableSet(big, 0)
                for c in coarse.members():
                    want = want | big.interval(L, c)
                assert lifted == want


@given(seeds, seeds, seeds, seeds)
def test_lift_product_homomorphism(a, b, c, d):
    sp = make_space(2)
    t1, t2, s1, s2 = (random_transformation(sp, x) for x in (a, b, c, d))
    assert lift_product(compose(t1, t2), compose(s1, s2)) == compose(lift_product(t1, s1), lift_product(t2, s2))


def test_permute_blocks_moves_factor_to_front():
    sp = make_space(1)
    swap, id1 = perm(1, 0), identity(sp)
    p = lift_product_many([id1, id1, swap])
    moved = conjugate(p, permute_blocks(1, [2, 1, 0]))
    assert moved == lift_product_many([swap, id1, id1])


def test_refine_examples():
    assert refine(perm(1, 0), 2).forward.tolist() == [2, 3, 0, 1]
    assert refine(identity(make_space(2)), 5).is_identity()


def test_refinement_keeps_d_on_coarse_subfamily():
    sp = make_space(1)
    for x, y in itertools.product(itertools.permutations(range(2)), repeat=2):
        t, s = Transformation(sp, list(x)), Transformation(sp, list(y))
        assert metric_d(refine(t, 2), refine(s, 2), n=family_size(1)) == metric_d(t, s)


def test_random_is_deterministic():
    sp = make_space(4)
    assert random_transformation(sp, 11) == random_transformation(sp, 11)
    assert near_identity(sp, Dyadic(1, 1), 5) == near_identity(sp, Dyadic(1, 1), 5)


@pytest.mark.parametrize("L, eps", [(4, Dyadic(1, 1)), (5, Dyadic(1, 3)), (6, Dyadic(1, 4)), (6, Dyadic(1, 2))])
def test_near_identity_moves_every_interval_less_than_eps(L, eps):
    sp = make_space(L)
    for seed in range(10):
        u = near_identity(sp, eps, seed)
        for a in canonical_family(sp):
            assert measure(a ^ apply(u, a)) < eps


def test_near_identity_single_transposition_witness():
    L = 4
    sp = make_space(L)
    fwd = list(range(16))
    fwd[14], fwd[15] = 15, 14
    u = Transformation(sp, fwd)
    for a in canonical_family(sp):
        assert measure(a ^ apply(u, a)) <= Dyadic(2, L)


def test_near_identity_vacuous_and_errors():
    sp = make_space(3)
    assert not near_identity(sp, 2, 0).is_identity()
    with pytest.raises(EpsTooSmall):
        near_identity(sp, 0, 0)
    with pytest.raises(EpsTooSmall):
        near_identity(sp, Dyadic(1, 4), 0, require_nontrivial=True)


def test_random_periodic_order_divides():
    sp = make_space(4)
    for m in (1, 2, 3, 5, 12):
        for seed in range(10):
            assert m % order(random_periodic(sp, m, seed)) == 0


@given(seeds, seeds, seeds)
def test_group_axioms(a, b, c):
    sp = make_space(3)
    x, y, z = (random_transformation(sp, s) for s in (a, b, c))
    e = identity(sp)
    assert compose(compose(x, y), z) == compose(x, compose(y, z))
    assert compose(x, e) == x == compose(e, x)
    assert compose(x, invert(x)) == e
    assert conjugate(conjugate(x, y), invert(y)) == x


@given(seeds, seeds, st.integers(0, 2**32 - 1))
def test_apply_is_action_and_preserves_measure(a, b, bits):
    sp = make_space(5)
    x, y = random_transformation(sp, a), random_transformation(sp, b)
    s = MeasurableSet(sp, bits)
    assert apply(compose(x, y), s) == apply(x, apply(y, s))
    assert measure(apply(x, s)) == measure(s)
    assert apply_inverse(x, apply(x, s)) == s
    assert apply(x, s).members() == sorted(oracles.image(x.forward.tolist(), s.members()))


def test_apply_exhaustive_L2():
    sp = make_space(2)
    perms = [Transformation(sp, list(p)) for p in itertools.permutations(range(4))]
    for x in perms[::3]:
        for y in perms[::5]:
            for bits in range(16):
                s = MeasurableSet(sp, bits)
                assert apply(compose(x, y), s) == apply(x, apply(y, s))


def test_transformation_arrays_are_read_only():
    t = rotation(make_space(2))
    with pytest.raises(ValueError):
        t.forward[0] = 3
    assert isinstance(t.inverse, np.ndarray)
