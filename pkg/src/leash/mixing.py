"""Finite-scale mixing: profiles of ``a_k(T^γ, Θ)`` over norm annuli, and H-net transport.

A permutation action is periodic, so it is never mixing in the limit.  What
can be computed is the deficiency ``a_k(T^γ, Θ)`` element by element, and the
transport identity ``μ(T^(hγ) A ∩ B) = μ(T^γ A ∩ T^(h^-1) B)`` that moves
mixing along an H-net ``G = HΓ``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .actions import Action
from .dyadic import Dyadic
from .errors import NotANet
from .groups import DEFAULT_CAP, GammaSpec, enumerate_gamma
from .measure import canonical_family
from .metrics import THETA, correlation_sum, metric_a

__all__ = [
    "MixingProfile",
    "mixing_profile",
    "mixing_deficiency",
    "h_net_transport",
    "HNetReport",
    "h_net_coverage",
    "h_net_bound",
]

ZERO = Dyadic(0)


@dataclass(frozen=True)
class MixingProfile:
    entries: tuple  # ((γ, a_k(T^γ, Θ)), ...) in enumeration order
    k: Optional[int]
    annulus: tuple[int, int]

    @property
    def values(self) -> list[Dyadic]:
        return [v for _, v in self.entries]

    @property
    def deficiency(self) -> Dyadic:
        """Largest profile value; an empty annulus has deficiency 0."""
        return max(self.values, default=ZERO)

    def __len__(self) -> int:
        return len(self.entries)


def mixing_profile(t: Action, gamma: GammaSpec, k: Optional[int], r1: int, r2: int,
                   cap: int = DEFAULT_CAP) -> MixingProfile:
    elements = enumerate_gamma(t.model, gamma, r1, r2, cap)
    entries = tuple((g, metric_a(t(g), THETA, n=k)) for g in elements)
    return MixingProfile(entries, k, (r1, r2))


def mixing_deficiency(t: Action, gamma: GammaSpec, k: Optional[int], r1: int, r2: int,
                      cap: int = DEFAULT_CAP) -> Dyadic:
    return mixing_profile(t, gamma, k, r1, r2, cap).deficiency


def h_net_transport(t: Action, h, gamma_el, k: Optional[int] = None) -> Dyadic:
    """Correlation sum of ``T^γ`` against the family moved by ``T^(h^-1)``.

    Equals ``a_k(T^(hγ), Θ)`` because ``T^h`` preserves measure.
    """
    model = t.model
    fam = canonical_family(t.space)
    first = fam.sets(k)
    back = t(model.invert(h))
    second = [back(b) for b in first]
    return correlation_sum(t(gamma_el), first, second)


@dataclass(frozen=True)
class HNetReport:
    deficiency: Dyadic
    pairs: int
    coverage_radius: int
    covered: int
    factorizations: tuple  # ((g, h, γ), ...) for the covered ball


def h_net_coverage(model, net: Sequence, gamma: GammaSpec, radius: int) -> list[tuple]:
    """Factor every ``g`` with ``|g| <= radius`` as ``h γ`` (``h`` in ``net``, ``γ`` in Gamma).

    Raises :class:`NotANet` at the first element with no factorization.
    """
    out = []
    for g in model.ball(radius):
        for h in net:
            rest = model.multiply(model.invert(h), g)
            if gamma.contains(model, rest):
                out.append((g, h, rest))
                break
        else:
            raise NotANet(model.format(g))
    return out


def h_net_bound(t: Action, net: Sequence, gamma: GammaSpec, k: Optional[int], r1: int, r2: int,
                coverage_radius: Optional[int] = None, cap: int = DEFAULT_CAP) -> HNetReport:
    """Max over ``h`` in ``net`` and ``γ`` in the Gamma annulus ``(r1, r2]`` of the
    transported sums, i.e. the deficiency of ``T`` on ``net * annulus``, after
    checking that ``net`` and Gamma factor the ball of ``coverage_radius``."""
    radius = r2 if coverage_radius is None else coverage_radius
    factors = h_net_coverage(t.model, net, gamma, radius)
    best, pairs = ZERO, 0
    for gam in enumerate_gamma(t.model, gamma, r1, r2, cap):
        for h in net:
            best = max(best, h_net_transport(t, h, gam, k))
            pairs += 1
    return HNetReport(best, pairs, radius, len(factors), tuple(factors))
