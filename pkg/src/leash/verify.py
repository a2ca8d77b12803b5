"""Seeded verification suites for the metric and action invariants.

Every suite draws its randomness from ``(seed, suite index)``, so running a
subset of suites gives the same results as running all of them.  The metric
functions are injectable, which is how mutation tests check that a broken
``d`` is caught.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .actions import conjugate_action, make_action, random_action
from .approximation import product_approx_witness, product_cutoff_gap
from .distances import gamma_sup, leash_s, leash_w
from .dyadic import Dyadic
from .groups import GammaSpec, enumerate_gamma, make_group
from .measure import approx_index, canonical_family, family_size, make_space
from .metrics import THETA, max_entry_gap, metric_a, metric_d
from .mixing import h_net_coverage, h_net_transport
from .transforms import (
    Transformation,
    conjugate,
    identity,
    near_identity,
    random_periodic,
    random_transformation,
    refine,
    rotation,
)

__all__ = ["SuiteResult", "VerifyContext", "SUITE_NAMES", "run_suites", "oracle_d", "oracle_a"]


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: int = 0
    counterexample: Optional[dict] = None
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0 and self.checks > 0

    def check(self, ok: bool, **example) -> bool:
        self.checks += 1
        if not ok:
            self.failures += 1
            if self.counterexample is None:
                self.counterexample = {k: _show(v) for k, v in example.items()}
        return ok


def _show(v):
    if isinstance(v, Transformation):
        return v.forward.tolist()
    if isinstance(v, Dyadic):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_show(x) for x in v]
    return v if isinstance(v, (int, str, bool)) or v is None else str(v)


@dataclass
class VerifyContext:
    seed: int
    d: Callable = metric_d
    a: Callable = metric_a

    def rng(self, index: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, index])


# -- independent oracles --------------------------------------------------------

def _interval_cells(L: int, i: int) -> range:
    level = (i + 1).bit_length() - 1
    pos = i + 1 - (1 << level)
    width = 1 << (L - level)
    return range(pos * width, (pos + 1) * width)


def oracle_d(t: Transformation, s: Transformation) -> Dyadic:
    """``d`` by direct enumeration of cells, in plain fractions."""
    L = t.space.resolution
    total = Fraction(0)
    for i in range(1, 2 ** (L + 1) - 1):
        cells = _interval_cells(L, i)
        ft = {int(t.forward[c]) for c in cells}
        fs = {int(s.forward[c]) for c in cells}
        bt = {int(t.inverse[c]) for c in cells}
        bs = {int(s.inverse[c]) for c in cells}
        total += Fraction(len(ft ^ fs) + len(bt ^ bs), 2 ** L) / 2 ** i
    return Dyadic.from_fraction(total)


def oracle_a(t: Transformation, s: Transformation) -> Dyadic:
    L = t.space.resolution
    N = 2 ** (L + 1) - 2
    sets = [set(_interval_cells(L, i)) for i in range(1, N + 1)]
    total = Fraction(0)
    for i, A in enumerate(sets, start=1):
        ta = {int(t.forward[c]) for c in A}
        sa = {int(s.forward[c]) for c in A}
        for j, B in enumerate(sets, start=1):
            total += Fraction(abs(len(ta & B) - len(sa & B)), 2 ** L) / 2 ** (i + j)
    return Dyadic.from_fraction(total)


# -- suites ------------------------------------------------------------------------

def _all_perms(n: int) -> list[list[int]]:
    from itertools import permutations
    return [list(p) for p in permutations(range(n))]


def suite_metric_axioms(ctx: VerifyContext, samples: int = 500) -> SuiteResult:
    res = SuiteResult("metric-axioms")
    rng = ctx.rng(0)
    triples = []
    sp1 = make_space(1)
    s2 = [Transformation(sp1, p) for p in _all_perms(2)]
    triples += [(x, y, z) for x in s2 for y in s2 for z in s2]
    sp2 = make_space(2)
    s4 = [Transformation(sp2, p) for p in _all_perms(4)]
    for _ in range(samples):
        triples.append(tuple(s4[int(i)] for i in rng.integers(0, len(s4), 3)))
    sp4 = make_space(4)
    for _ in range(samples):
        triples.append(tuple(random_transformation(sp4, rng) for _ in range(3)))
    for name, f in (("d", ctx.d), ("a", ctx.a)):
        for x, y, z in triples:
            xy, yz, xz = f(x, y), f(y, z), f(x, z)
            res.check(not f(x, x), metric=name, axiom="identity", T=x)
            res.check(bool(xy) == (x != y), metric=name, axiom="separation", T=x, S=y)
            res.check(xy == f(y, x), metric=name, axiom="symmetry", T=x, S=y)
            res.check(xz <= xy + yz, metric=name, axiom="triangle", T=x, S=y, R=z)
    return res


def suite_d_dominates_a(ctx: VerifyContext, samples: int = 500) -> SuiteResult:
    res = SuiteResult("d-dominates-a")
    rng = ctx.rng(1)
    for idx in range(samples):
        space = make_space((2, 3, 4)[idx % 3])
        t, s = random_transformation(space, rng), random_transformation(space, rng)
        a, d = ctx.a(t, s), ctx.d(t, s)
        res.check(a <= d <= 2, T=t, S=s, a=a, d=d)
    return res


def suite_truncation_bound(ctx: VerifyContext, samples: int = 200) -> SuiteResult:
    res = SuiteResult("truncation-bound")
    rng = ctx.rng(2)
    space = make_space(3)
    N = family_size(3)
    for _ in range(samples):
        t, s = random_transformation(space, rng), random_transformation(space, rng)
        full = ctx.a(t, s)
        prev = Dyadic(0)
        for n in range(0, N + 1):
            an = ctx.a(t, s, n=n)
            res.check(full.abs_diff(an) <= Dyadic(1, n - 1), check="bound", n=n, T=t, S=s)
            res.check(prev <= an, check="monotone", n=n, T=t, S=s)
            prev = an
    return res


def _sandwich_pairs(rng, samples: int):
    z, h = make_group("Z"), make_group("H", n=2)
    space = make_space(3)
    g1 = h.generator(1)
    for idx in range(samples):
        t = random_action(z, space, rng)
        s = random_action(z, space, rng)
        yield "Z", t, s, GammaSpec.whole()
        t = random_action(h, space, rng)
        s = random_action(h, space, rng)
        yield "H(2)", t, s, GammaSpec.cyclic(g1)


def suite_sandwich(ctx: VerifyContext, samples: int = 100) -> SuiteResult:
    """``s <= 2^n w`` and ``w <= 2 s``; the literal ``w <= s`` is counted in the notes."""
    res = SuiteResult("sandwich")
    literal = 0
    rng = ctx.rng(3)
    for kind, t, s, gamma in _sandwich_pairs(rng, samples):
        for n in (1, 2, 3):
            for k in (2, 6, 14):
                w = leash_w(t, s, gamma, n, k, mode="exact").value
                sv = leash_s(t, s, gamma, n, k, mode="exact").value
                if not w <= sv:
                    literal += 1
                res.check(sv <= w.shift(n) and w <= sv.shift(1), group=kind, n=n, k=k,
                          T=t.images, S=s.images, w=w, s=sv)
    res.notes["literal_lower_bound_violations"] = literal
    return res


def suite_conjugation_continuity(ctx: VerifyContext, samples: int = 50) -> SuiteResult:
    res = SuiteResult("conjugation-continuity")
    rng = ctx.rng(4)
    space = make_space(4)
    k = 6
    z, h = make_group("Z"), make_group("H", n=2)
    fixtures = [
        (make_action(z, [rotation(space)]), GammaSpec.whole()),
        (random_action(z, space, rng), GammaSpec.whole()),
        (random_action(h, space, rng), GammaSpec.cyclic(h.generator(1))),
    ]
    tests = []
    for t, gamma in fixtures:
        elements = list(dict.fromkeys(t.model.ball(6) + enumerate_gamma(t.model, gamma, 0, 8)))
        tests.append((t, [t(g) for g in elements]))
    for eps in (Dyadic(1, 2), Dyadic(1, 4)):
        for _ in range(samples):
            u = near_identity(space, eps.shift(-1), rng, depth=k)
            for t, images in tests:
                for tg in images:
                    v = metric_a(conjugate(tg, u), tg, n=k)
                    res.check(v < eps, eps=eps, U=u, Tg=tg, value=v)
    return res


def suite_fixed_u_continuity(ctx: VerifyContext, samples: int = 20) -> SuiteResult:
    """Entrywise premise ``max |ΔC| < ε/2`` on the first ``k`` sets gives ``a_n < ε``
    after conjugating both actions by ``U``."""
    res = SuiteResult("fixed-u-continuity")
    rng = ctx.rng(5)
    space = make_space(6)
    fam = canonical_family(space)
    eps = Dyadic(1, 1)
    z, h = make_group("Z"), make_group("H", n=2)
    premised = 0
    for idx in range(samples):
        model = (z, h)[idx % 2]
        n = 2 + idx % 2
        u = near_identity(space, eps.shift(-3), rng)
        k = max(approx_index(fam, u(fam[i]), eps.shift(-3)) for i in range(1, n + 1))
        t = random_action(model, space, rng)
        for s in (t, conjugate_action(t, near_identity(space, eps.shift(-3), rng)), random_action(model, space, rng)):
            tu, su = conjugate_action(t, u), conjugate_action(s, u)
            for g in model.ball(3):
                if max_entry_gap(t(g), s(g), n=k) < eps.shift(-1):
                    premised += 1
                    v = metric_a(tu(g), su(g), n=n)
                    res.check(v < eps, n=n, k=k, U=u, g=model.format(g), value=v)
    res.notes["premise_holds"] = premised
    return res


def suite_product_lemma(ctx: VerifyContext, samples: int = 20) -> SuiteResult:
    res = SuiteResult("product-lemma")
    rng = ctx.rng(6)
    space = make_space(3)
    for idx in range(samples):
        model = (make_group("Z"), make_group("H", n=2))[idx % 2]
        t, s = random_action(model, space, rng), random_action(model, space, rng)
        for k in (6, 14):
            rep = product_approx_witness(t, s, k, radius=6)
            for g, v in rep.entries:
                res.check(not v, k=k, g=model.format(g), value=v)
    z = make_group("Z")
    triv = make_action(z, [identity(make_space(1))])
    swap = make_action(z, [Transformation(make_space(1), [1, 0])])
    gap = product_cutoff_gap(triv, swap, family_size(1) + 1, 1)
    res.check(bool(gap), check="cutoff counterexample is nonzero", value=gap)
    res.notes["cutoff_gap"] = str(gap)
    return res


def suite_h_net(ctx: VerifyContext, samples: int = 4) -> SuiteResult:
    res = SuiteResult("h-net")
    rng = ctx.rng(7)
    z = make_group("Z")
    net, gamma = [0, 1], GammaSpec.lattice(2)
    for g, h, rest in h_net_coverage(z, net, gamma, 8):
        res.check(z.multiply(h, rest) == g and rest % 2 == 0, check="coverage", g=g)
    for L in (2, 3):
        space = make_space(L)
        actions = [make_action(z, [rotation(space)])] + [random_action(z, space, rng) for _ in range(samples)]
        for t in actions:
            for k in (None, 3):
                for h in net:
                    for gam in range(-8, 9, 2):
                        lhs = h_net_transport(t, h, gam, k)
                        rhs = metric_a(t(z.multiply(h, gam)), THETA, n=k)
                        res.check(lhs == rhs, L=L, h=h, gamma=gam, transported=lhs, direct=rhs)
    return res


def suite_gamma_sup_exactness(ctx: VerifyContext, samples: int = 30) -> SuiteResult:
    res = SuiteResult("gamma-sup-exactness")
    rng = ctx.rng(8)
    z = make_group("Z")
    space = make_space(3)
    checked = 0
    while checked < samples:
        m1, m2 = (int(x) for x in rng.choice([1, 2, 3, 4, 6, 12], 2))
        t = make_action(z, [random_periodic(space, m1, rng)])
        s = make_action(z, [random_periodic(space, m2, rng)])
        exact = gamma_sup(t, s, GammaSpec.whole(), mode="exact")
        p = exact.period
        if p > 12:
            continue
        checked += 1
        for R in range(1, p + 3):
            tr = gamma_sup(t, s, GammaSpec.whole(), mode="truncated", radius=R).value
            ok = tr == exact.value if R >= p else tr <= exact.value
            res.check(ok, R=R, period=p, truncated=tr, exact=exact.value)
    return res


def suite_refinement_invariance(ctx: VerifyContext, samples: int = 20) -> SuiteResult:
    """Prefix of the finer family reproduces the coarse values, and both agree
    with a direct cell-enumeration oracle."""
    res = SuiteResult("refinement-invariance")
    rng = ctx.rng(9)
    for idx in range(samples):
        L = (1, 2, 3)[idx % 3]
        space = make_space(L)
        t, s = random_transformation(space, rng), random_transformation(space, rng)
        N = family_size(L)
        tf, sf = refine(t, L + 1), refine(s, L + 1)
        for name, f, oracle in (("d", ctx.d, oracle_d), ("a", ctx.a, oracle_a)):
            coarse = f(t, s)
            res.check(f(tf, sf, n=N) == coarse, metric=name, check="prefix", T=t, S=s)
            want = oracle(t, s)
            res.check(coarse == want, metric=name, check="oracle", T=t, S=s, library=coarse, oracle=want)
    return res


SUITES = {
    "metric-axioms": suite_metric_axioms,
    "d-dominates-a": suite_d_dominates_a,
    "truncation-bound": suite_truncation_bound,
    "sandwich": suite_sandwich,
    "conjugation-continuity": suite_conjugation_continuity,
    "fixed-u-continuity": suite_fixed_u_continuity,
    "product-lemma": suite_product_lemma,
    "h-net": suite_h_net,
    "gamma-sup-exactness": suite_gamma_sup_exactness,
    "refinement-invariance": suite_refinement_invariance,
}
SUITE_NAMES = tuple(SUITES)


def run_suites(seed: int, names: Optional[Sequence[str]] = None, d: Callable = metric_d,
               a: Callable = metric_a) -> list[SuiteResult]:
    ctx = VerifyContext(seed, d, a)
    selected = SUITE_NAMES if not names else names
    unknown = [n for n in selected if n not in SUITES]
    if unknown:
        raise ValueError(f"unknown suites {unknown}; choose from {list(SUITE_NAMES)}")
    return [SUITES[name](ctx) for name in SUITE_NAMES if name in selected]
