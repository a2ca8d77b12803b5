"""Distances between actions: ``d_G``, ``a_G``, the Gamma-supremum and the leash metrics.

The Gamma-supremum is either *truncated* (maximum over the norm ball of
radius ``R`` in Gamma) or *exact*.  Exact mode needs a cyclic Gamma: the pair
``(T^(γ0^j), S^(γ0^j))`` is periodic in ``j`` with period
``lcm(order(T^γ0), order(S^γ0))``, so the supremum over all of Gamma is a
maximum over one period.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .actions import Action
from .dyadic import Dyadic
from .errors import ExactUnsupported, ModelMismatch, NoEnvelopeAvailable, SpaceMismatch
from .groups import DEFAULT_CAP, GammaSpec, enumerate_gamma
from .metrics import THETA, metric_a, metric_d
from .transforms import order, power

__all__ = [
    "DistanceReport",
    "GammaSup",
    "d_G",
    "a_G",
    "gamma_sup",
    "pair_period",
    "leash_m",
    "leash_w",
    "leash_s",
    "leash_distance",
    "deficiency_envelope",
    "certified_m_bound",
    "METRICS",
]

ZERO = Dyadic(0)


@dataclass(frozen=True)
class DistanceReport:
    metric: str
    value: Dyadic
    n: Optional[int] = None
    k: Optional[int] = None
    radius: Optional[int] = None
    exactness: str = "exact"  # exact | truncated | truncated-with-certificate
    certified_bound: Optional[Dyadic] = None
    period: Optional[int] = None
    details: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class GammaSup:
    value: Dyadic
    exact: bool
    radius: Optional[int] = None
    period: Optional[int] = None
    argmax: object = None


def _check(t: Action, s: Action) -> None:
    if t.model != s.model:
        raise ModelMismatch(f"{t.model!r} vs {s.model!r}")
    if t.space != s.space:
        raise SpaceMismatch(f"{t.space} vs {s.space}")


def _covers(t: Action, n: Optional[int]) -> list:
    # K_i beyond the listed covers are empty and contribute nothing
    covers = t.model.covers()
    if n is None:
        return covers
    if n < 0:
        raise ValueError(f"cover depth {n} is negative")
    return covers[:n]


def _cover_sum(t: Action, s: Action, n: Optional[int], dist) -> Dyadic:
    total = ZERO
    for i, cover in enumerate(_covers(t, n), start=1):
        worst = max((dist(t(g), s(g)) for g in cover), default=ZERO)
        total = total + worst.shift(-i)
    return total


def d_G(t: Action, s: Action, n: Optional[int] = None) -> Dyadic:
    """``sum_{i<=n} 2^-i max_{g in K_i} d(T^g, S^g)``."""
    _check(t, s)
    return _cover_sum(t, s, n, metric_d)


def a_G(t: Action, s: Action, n: Optional[int] = None, k: Optional[int] = None) -> Dyadic:
    """``sum_{i<=n} 2^-i max_{g in K_i} a_k(T^g, S^g)``."""
    _check(t, s)
    return _cover_sum(t, s, n, lambda x, y: metric_a(x, y, n=k))


def pair_period(t: Action, s: Optional[Action], generator) -> int:
    """Period in ``j`` of ``(T^(γ0^j), S^(γ0^j))``; ``s=None`` means ``T`` alone."""
    p = order(t(generator))
    if s is not None:
        p = math.lcm(p, order(s(generator)))
    return p


def gamma_sup(t: Action, s: Action, gamma: GammaSpec, k: Optional[int] = None,
              mode: str = "truncated", radius: int = 16, cap: int = DEFAULT_CAP) -> GammaSup:
    """``sup_{g in Gamma} a_k(T^g, S^g)``, truncated at ``radius`` or exact."""
    _check(t, s)
    if mode == "exact":
        if not gamma.is_cyclic_in(t.model):
            raise ExactUnsupported(f"exact Gamma-sup needs a cyclic Gamma, got {gamma.describe(t.model)}")
        g0 = gamma.cyclic_generator(t.model)
        p = pair_period(t, s, g0)
        a, b = t(g0), s(g0)
        best, arg = ZERO, 0
        for j in range(1, p + 1):
            v = metric_a(power(a, j), power(b, j), n=k)
            if v > best:
                best, arg = v, j
        return GammaSup(best, True, None, p, arg)
    if mode != "truncated":
        raise ValueError(f"unknown mode {mode!r}")
    best, arg = ZERO, None
    for g in enumerate_gamma(t.model, gamma, 0, radius, cap):
        v = metric_a(t(g), s(g), n=k)
        if v > best:
            best, arg = v, g
    return GammaSup(best, False, radius, None, arg)


def _flag(sup: GammaSup) -> str:
    return "exact" if sup.exact else "truncated"


def leash_m(t: Action, s: Action, gamma: GammaSpec, n: Optional[int] = None, k: Optional[int] = None,
            mode: str = "truncated", radius: int = 16) -> DistanceReport:
    """``m = d_G^(n) + sup_Gamma a_k`` (full depths by default)."""
    sup = gamma_sup(t, s, gamma, k, mode, radius)
    dg = d_G(t, s, n)
    return DistanceReport("m", dg + sup.value, n, k, sup.radius, _flag(sup), period=sup.period,
                          details={"d_G": dg, "gamma_sup": sup.value})


def leash_w(t: Action, s: Action, gamma: GammaSpec, n: Optional[int] = None, k: Optional[int] = None,
            mode: str = "truncated", radius: int = 16) -> DistanceReport:
    """``w^(n,k) = a_G^(n,k) + sup_Gamma a_k``."""
    sup = gamma_sup(t, s, gamma, k, mode, radius)
    ag = a_G(t, s, n, k)
    return DistanceReport("w", ag + sup.value, n, k, sup.radius, _flag(sup), period=sup.period,
                          details={"a_G": ag, "gamma_sup": sup.value})


def leash_s(t: Action, s: Action, gamma: GammaSpec, n: Optional[int] = None, k: Optional[int] = None,
            mode: str = "truncated", radius: int = 16) -> DistanceReport:
    """``s^(n,k) = sup a_k(T^g, S^g)`` over Gamma together with ``K_1 ∪ ... ∪ K_n``."""
    sup = gamma_sup(t, s, gamma, k, mode, radius)
    best = sup.value
    for cover in _covers(t, n):
        for g in cover:
            best = max(best, metric_a(t(g), s(g), n=k))
    return DistanceReport("s", best, n, k, sup.radius, _flag(sup), period=sup.period,
                          details={"gamma_sup": sup.value})


def deficiency_envelope(t: Action, gamma: GammaSpec, k: Optional[int] = None, radius: int = 0) -> Dyadic:
    """Exact ``sup_{g in Gamma, |g| > radius} a_k(T^g, Θ)`` for cyclic Gamma, via periodicity."""
    if not gamma.is_cyclic_in(t.model):
        raise NoEnvelopeAvailable(f"no periodic envelope for Gamma {gamma.describe(t.model)}")
    model = t.model
    g0 = gamma.cyclic_generator(model)
    if model.power_escape_index(g0, radius) is None:
        # finite Gamma: the tail is a finite list
        tail = enumerate_gamma(model, gamma, radius, max(radius + 1, DEFAULT_CAP))
        return max((metric_a(t(g), THETA, n=k) for g in tail), default=ZERO)
    a = t(g0)
    return max(metric_a(power(a, j), THETA, n=k) for j in range(pair_period(t, None, g0)))


def _pair_tail(t: Action, s: Action, gamma: GammaSpec, k, radius: int) -> Dyadic:
    model = t.model
    g0 = gamma.cyclic_generator(model)
    if model.power_escape_index(g0, radius) is None:
        tail = enumerate_gamma(model, gamma, radius, max(radius + 1, DEFAULT_CAP))
        return max((metric_a(t(g), s(g), n=k) for g in tail), default=ZERO)
    # every residue class mod the period recurs beyond any radius
    return gamma_sup(t, s, gamma, k, "exact").value


def certified_m_bound(t: Action, s: Action, gamma: GammaSpec, n: Optional[int] = None,
                      k: Optional[int] = None, radius: int = 16,
                      envelopes: Optional[tuple] = None) -> DistanceReport:
    """Truncated ``m`` plus a certified upper bound on the untruncated value.

    The tail ``sup_{|g| > R} a_k(T^g, S^g)`` is bounded by
    ``env(T) + env(S)`` through ``a(T^g, S^g) <= a(T^g, Θ) + a(S^g, Θ)``.
    Callers may pass ``envelopes``; otherwise they are computed by
    periodicity, and the exact periodic tail is used when it is smaller.
    """
    _check(t, s)
    trunc = gamma_sup(t, s, gamma, k, "truncated", radius)
    dg = d_G(t, s, n)
    if envelopes is not None:
        env_t, env_s = envelopes
        tail = env_t + env_s
    elif gamma.is_cyclic_in(t.model):
        env_t = deficiency_envelope(t, gamma, k, radius)
        env_s = deficiency_envelope(s, gamma, k, radius)
        tail = min(env_t + env_s, _pair_tail(t, s, gamma, k, radius))
    else:
        raise NoEnvelopeAvailable(f"pass envelopes for Gamma {gamma.describe(t.model)}")
    bound = max(trunc.value, tail)
    return DistanceReport("m", dg + trunc.value, n, k, radius, "truncated-with-certificate",
                          certified_bound=dg + bound,
                          details={"d_G": dg, "gamma_sup": trunc.value, "envelopes": (env_t, env_s),
                                   "tail_bound": tail})


def _exact_metric(fn):
    def run(t, s, gamma=None, n=None, k=None, mode="truncated", radius=16):
        return DistanceReport(fn.__name__, fn(t, s, n) if fn is d_G else fn(t, s, n, k), n, k)
    return run


METRICS = {
    "m": leash_m,
    "w": leash_w,
    "s": leash_s,
    "d_G": _exact_metric(d_G),
    "a_G": _exact_metric(a_G),
}


def leash_distance(name: str, t: Action, s: Action, gamma: Optional[GammaSpec] = None, **kw) -> DistanceReport:
    """Dispatch by metric name (``m``, ``w``, ``s``, ``d_G``, ``a_G``)."""
    if name not in METRICS:
        raise ValueError(f"unknown metric {name!r}; choose from {sorted(METRICS)}")
    return METRICS[name](t, s, gamma or GammaSpec.whole(), **kw)
