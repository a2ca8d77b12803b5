from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import pytest

from leash.actions import (
    Action,
    conjugate_action,
    make_action,
    product_action,
    product_action_many,
    random_action,
)
from leash.errors import ModelMismatch, RelatorViolated, SpaceMismatch
from leash.groups import make_group
from leash.measure import make_space
from leash.transforms import Transformation, compose, identity, lift_product, power, rotation

KINDS = [("Z", {}), ("Zd", {"d": 2}), ("cyclic", {"m": 6}), ("free", {"r": 2}), ("H", {"n": 2}), ("H", {"n": 3})]


def test_rotation_action():
    sp = make_space(2)
    z = make_group("Z")
    t = make_action(z, [rotation(sp)])
    assert t(4).is_identity()
    assert t(-1).forward.tolist() == [3, 0, 1, 2]
    assert t(0) == identity(sp)


def test_relator_violation_is_reported():
    with pytest.raises(RelatorViolated) as err:
        make_action(make_group("cyclic", m=3), [rotation(make_space(2))])
    assert "g0^3" in str(err.value)


def test_trivial_action_is_valid_for_every_model():
    sp = make_space(2)
    for kind, params in KINDS:
        model = make_group(kind, **params)
        t = make_action(model, [identity(sp)] * len(model.generator_names))
        assert all(t(g).is_identity() for g in model.ball(2))


def test_bad_images():
    z2 = make_group("Zd", d=2)
    with pytest.raises(SpaceMismatch):
        make_action(z2, [identity(make_space(1)), identity(make_space(2))])
    with pytest.raises(ModelMismatch):
        make_action(z2, {"g0": identity(make_space(1))})


@pytest.mark.parametrize("kind, params", KINDS)
def test_homomorphism_on_ball(kind, params):
    model = make_group(kind, **params)
    t = random_action(model, make_space(3), 17)
    ball = model.ball(3)
    for g in ball:
        for h in ball[:15]:
            assert t(model.multiply(g, h)) == compose(t(g), t(h))


def test_h2_power_consistency():
    h = make_group("H", n=2)
    t = random_action(h, make_space(4), 2)
    x = h.parse("g0*g1")
    assert t(h.multiply(x, x)) == power(t(x), 2)


def test_concurrent_evaluation_is_a_pure_memo():
    h = make_group("H", n=2)
    t = random_action(h, make_space(4), 5)
    elements = h.ball(5)
    fresh = random_action(h, make_space(4), 5)
    with ThreadPoolExecutor(max_workers=8) as pool:
        results = list(pool.map(t.evaluate, elements * 4))
    for g, value in zip(elements * 4, results):
        assert value == fresh(g)


def test_conjugate_and_product():
    sp = make_space(2)
    z = make_group("Z")
    t = random_action(z, sp, 1)
    s = random_action(z, sp, 2)
    assert conjugate_action(t, identity(sp)) == t
    p = product_action(t, s)
    for g in z.ball(4):
        assert p(g) == lift_product(t(g), s(g))
    assert product_action_many([t, s]) == p
    with pytest.raises(ModelMismatch):
        product_action(t, make_action(make_group("cyclic", m=4), [rotation(sp)]))


def test_equality_and_hash():
    sp = make_space(2)
    z = make_group("Z")
    a = make_action(z, [rotation(sp)])
    b = Action(z, {"g0": Transformation(sp, [1, 2, 3, 0])})
    assert a == b and hash(a) == hash(b)
