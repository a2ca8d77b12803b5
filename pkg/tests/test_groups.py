from __future__ import annotations

import pytest

from leash.errors import CapExceeded, InvalidParams
from leash.groups import GammaSpec, enumerate_gamma, format_word, make_group, parse_word
from leash.groups import gamma_is_unbounded

MODELS = [("Z", {}), ("Zd", {"d": 2}), ("cyclic", {"m": 5}), ("free", {"r": 2}), ("H", {"n": 2}), ("H", {"n": 3})]


def test_integer_examples():
    z = make_group("Z")
    assert z.norm(-3) == 3
    assert z.ball(2) == [0, -1, 1, -2, 2]
    assert sorted(z.ball(2)) == [-2, -1, 0, 1, 2]
    assert z.covers() == [[1], [-1]]


def test_h2_examples():
    h = make_group("H", n=2)
    g0, g1 = h.generators()
    x = h.multiply(g0, g1)
    assert h.multiply(x, x) == ((1, 1), 0)
    assert h.power(g0, 2) == h.identity
    assert h.covers() == [[g0], [h.invert(g0)], [g1], [h.invert(g1)]]


def test_h3_conjugate_commutes():
    h = make_group("H", n=3)
    g0, g1 = h.generators()
    c = h.multiply(h.multiply(h.invert(g0), g1), g0)
    assert h.multiply(c, g1) == h.multiply(g1, c)


def test_free_reduction():
    f = make_group("free", r=2)
    a, b = f.generators()
    ab = f.multiply(a, b)
    assert f.multiply(ab, f.invert(b)) == a


@pytest.mark.parametrize("kind, params", MODELS)
def test_relators_evaluate_to_identity(kind, params):
    model = make_group(kind, **params)
    for rel in model.relators():
        assert model.evaluate_word(rel) == model.identity


@pytest.mark.parametrize("kind, params", MODELS)
def test_norm_axioms_on_balls(kind, params):
    model = make_group(kind, **params)
    ball = model.ball(3)
    assert model.norm(model.identity) == 0
    for g in ball:
        assert model.norm(model.invert(g)) == model.norm(g)
        assert model.multiply(g, model.invert(g)) == model.identity
        assert model.evaluate_word(model.word(g)) == g
        for h in ball[:20]:
            assert model.norm(model.multiply(g, h)) <= model.norm(g) + model.norm(h)
    for gen in model.generators():
        assert any(gen in cover for cover in model.covers())


def test_ball_sizes():
    assert [len(make_group("Z").ball(R)) for R in range(5)] == [2 * R + 1 for R in range(5)]
    # Z^2 l1 balls: 2R^2 + 2R + 1
    assert [len(make_group("Zd", d=2).ball(R)) for R in range(5)] == [2 * R * R + 2 * R + 1 for R in range(5)]
    for r in (1, 2, 3):
        f = make_group("free", r=r)
        for R in range(4):
            want = 1 + sum(2 * r * (2 * r - 1) ** (k - 1) for k in range(1, R + 1))
            assert len(f.ball(R)) == want
    assert len(make_group("cyclic", m=5).ball(10)) == 5


def test_h2_ball_matches_brute_force():
    h = make_group("H", n=2)
    steps = h.step_set()
    seen = {h.identity: 0}
    frontier = [h.identity]
    for r in range(1, 6):
        nxt = []
        for x in frontier:
            for s in steps:
                y = h.multiply(x, s)
                if y not in seen:
                    seen[y] = r
                    nxt.append(y)
        frontier = nxt
    assert sorted(h.ball(5), key=repr) == sorted(seen, key=repr)
    for g, r in seen.items():
        assert h.norm(g) == r


def test_enumerate_examples():
    z = make_group("Z")
    assert enumerate_gamma(z, GammaSpec.lattice(2), 0, 5) == [-2, 2, -4, 4]
    assert sorted(enumerate_gamma(z, GammaSpec.whole(), 2, 4)) == [-4, -3, 3, 4]
    assert enumerate_gamma(z, GammaSpec.whole(), 3, 3) == []
    h = make_group("H", n=2)
    x = h.parse("(1,1;0)")
    got = enumerate_gamma(h, GammaSpec.cyclic(x), 0, 6)
    assert got == [((-1, -1), 0), ((1, 1), 0), ((-2, -2), 0), ((2, 2), 0)]
    with pytest.raises(CapExceeded):
        enumerate_gamma(z, GammaSpec.whole(), 0, 1000)


def test_enumeration_is_complete_against_ball():
    h = make_group("H", n=2)
    g1 = h.generator(1)
    gamma = GammaSpec.cyclic(g1)
    got = enumerate_gamma(h, gamma, 1, 6)
    want = [g for g in h.ball(6) if h.norm(g) > 1 and g[1] == 0 and g[0][1] == 0]
    assert sorted(got) == sorted(want)


def test_gamma_unbounded():
    z = make_group("Z")
    assert gamma_is_unbounded(z, GammaSpec.lattice(3))
    assert not gamma_is_unbounded(make_group("cyclic", m=4), GammaSpec.whole())


def test_parse_and_format():
    h = make_group("H", n=2)
    assert parse_word("g0*g1^-1*g0^2") == [(0, 1), (1, -1), (0, 2)]
    assert format_word([(0, 1), (1, -1)]) == "g0*g1^-1"
    assert h.parse("g0*g1") == ((0, 1), 1)
    assert make_group("Zd", d=2).parse("(1,-2)") == (1, -2)
    assert make_group("Z").parse("-2") == -2


def test_invalid_params():
    for kind, params in [("H", {"n": 1}), ("Zd", {"d": 0}), ("cyclic", {"m": 0}), ("free", {"r": 0}),
                         ("Q", {}), ("Z", {"d": 2}), ("H", {"n": "2"})]:
        with pytest.raises(InvalidParams):
            make_group(kind, **params)


def test_generating_set_cover_mode():
    z = make_group("Z", cover_mode="generating-set")
    assert z.covers() == [[1, -1]]
