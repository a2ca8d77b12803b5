"""Approximation by products and conjugates, and greedy nets of actions.

The product ``T x S`` on ``X_2L`` restricted to intervals of level ``<= L``
only sees the first factor, so its distance to ``T`` at such depths is
exactly zero.  Reordering the blocks of a many-fold product by conjugation
brings any factor to the front, which is the finite picture of one action
whose conjugates reach a whole list.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .actions import Action, conjugate_action, product_action, product_action_many
from .dyadic import Dyadic, as_dyadic
from .errors import DepthTooDeep
from .groups import GammaSpec, enumerate_gamma
from .measure import family_size
from .metrics import metric_a, metric_a_cross
from .transforms import permute_blocks, refine

__all__ = [
    "WitnessReport",
    "product_approx_witness",
    "product_cutoff_gap",
    "RokhlinReport",
    "rokhlin_experiment",
    "NetResult",
    "greedy_eps_net",
]


@dataclass(frozen=True)
class WitnessReport:
    k: int
    entries: tuple  # ((g, a_k-cross value), ...)

    @property
    def max_value(self) -> Dyadic:
        return max((v for _, v in self.entries), default=Dyadic(0))

    @property
    def all_zero(self) -> bool:
        return all(not v for _, v in self.entries)


def _test_elements(model, radius: int, gamma: Optional[GammaSpec], annulus: Optional[tuple]) -> list:
    out = list(model.ball(radius))
    seen = set(out)
    if gamma is not None and annulus is not None:
        for g in enumerate_gamma(model, gamma, *annulus):
            if g not in seen:
                seen.add(g)
                out.append(g)
    return out


def _check_depth(k: int, resolution: int) -> None:
    limit = family_size(resolution)
    if k > limit:
        raise DepthTooDeep(f"depth {k} reaches intervals finer than level {resolution} (limit {limit})")


def product_approx_witness(t: Action, s: Action, k: int, radius: int = 6,
                           gamma: Optional[GammaSpec] = None, annulus: Optional[tuple] = None) -> WitnessReport:
    """``a_k``-cross distance between ``(T x S)^g`` and ``T^g`` over the test ball and Gamma annulus."""
    _check_depth(k, t.space.resolution)
    prod = product_action(t, s)
    entries = tuple((g, metric_a_cross(prod(g), t(g), k))
                    for g in _test_elements(t.model, radius, gamma, annulus))
    return WitnessReport(k, entries)


def product_cutoff_gap(t: Action, s: Action, k: int, g) -> Dyadic:
    """``a_k((T x S)^g, T^g refined)`` on ``X_2L``, valid for any ``k`` up to the fine family.

    Beyond the level-``L`` intervals the second factor becomes visible and
    the value is generally nonzero.
    """
    prod = product_action(t, s)
    big = prod(g)
    return metric_a(big, refine(t(g), big.space.resolution), n=k)


@dataclass(frozen=True)
class RokhlinReport:
    k: int
    factors: int
    entries: tuple  # ((j, g, value), ...)

    @property
    def all_zero(self) -> bool:
        return all(not v for _, _, v in self.entries)

    def reached(self) -> list[bool]:
        out = [True] * self.factors
        for j, _, v in self.entries:
            if v:
                out[j] = False
        return out


def rokhlin_experiment(actions: Sequence[Action], k: int, radius: int = 2) -> RokhlinReport:
    """Conjugate the product of ``actions`` so each factor in turn sits in block 0, and
    measure the ``a_k``-cross distance to that factor over ``ball(radius)``."""
    L = actions[0].space.resolution
    _check_depth(k, L)
    prod = product_action_many(actions)
    m = len(actions)
    elements = actions[0].model.ball(radius)
    entries = []
    for j, target in enumerate(actions):
        order = list(range(m))
        order[0], order[j] = order[j], order[0]
        moved = conjugate_action(prod, permute_blocks(L, order))
        for g in elements:
            entries.append((j, g, metric_a_cross(moved(g), target(g), k)))
    return RokhlinReport(k, m, tuple(entries))


@dataclass(frozen=True)
class NetResult:
    centers: tuple  # input indices of the centers
    assignment: tuple  # for each input, the index of its center
    distances: tuple  # for each input, its distance to that center


def greedy_eps_net(items: Sequence, eps, distance) -> NetResult:
    """Scan in order; join the first center at distance ``< eps`` (or ``0``), else become a center.

    ``distance(x, y)`` returns a :class:`Dyadic`.  Identical items never
    become separate centers, also for ``eps = 0``.
    """
    eps = as_dyadic(eps)
    centers: list[int] = []
    assignment, dists = [], []
    for i, x in enumerate(items):
        for c in centers:
            d = distance(items[c], x)
            if d < eps or not d:
                assignment.append(c)
                dists.append(d)
                break
        else:
            centers.append(i)
            assignment.append(i)
            dists.append(Dyadic(0))
    return NetResult(tuple(centers), tuple(assignment), tuple(dists))
