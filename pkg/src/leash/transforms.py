"""Measure-preserving automorphisms of a dyadic space, as cell permutations.

``compose(a, b)`` applies ``b`` first, so it is the operator product ``a b``.
Conjugation is ``U^-1 T U`` (``U`` acts first) everywhere in the library.
"""
from __future__ import annotations

import math
from functools import reduce
from typing import Optional, Sequence

import numpy as np

from .dyadic import as_dyadic
from .errors import EpsTooSmall, ResolutionTooLarge, SpaceMismatch
from .measure import MAX_RESOLUTION, DyadicSpace, MeasurableSet, canonical_family, make_space

__all__ = [
    "Transformation",
    "identity",
    "compose",
    "invert",
    "apply",
    "apply_inverse",
    "conjugate",
    "power",
    "order",
    "rotation",
    "lift_product",
    "lift_product_many",
    "permute_blocks",
    "refine",
    "random_transformation",
    "random_periodic",
    "near_identity",
]


def _frozen(arr) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=np.int64)
    arr.setflags(write=False)
    return arr


class Transformation:
    """A bijection of the cells of ``space`` with its stored inverse."""

    __slots__ = ("space", "forward", "inverse", "_hash")

    def __init__(self, space: DyadicSpace, forward, inverse=None, check: bool = True):
        forward = _frozen(forward)
        if check:
            n = space.cell_count
            if forward.shape != (n,):
                raise ValueError(f"expected {n} cell images, got shape {forward.shape}")
            seen = np.zeros(n, dtype=bool)
            if forward.min(initial=0) < 0 or forward.max(initial=0) >= n:
                raise ValueError("cell image out of range")
            seen[forward] = True
            if not seen.all():
                raise ValueError("forward map is not a bijection")
        if inverse is None:
            inv = np.empty_like(forward)
            inv[forward] = np.arange(len(forward))
            inverse = inv
        self.space = space
        self.forward = forward
        self.inverse = _frozen(inverse)
        self._hash = None

    @classmethod
    def from_forward(cls, forward: Sequence[int], space: Optional[DyadicSpace] = None) -> "Transformation":
        n = len(forward)
        if space is None:
            if n & (n - 1) or n == 0:
                raise ValueError(f"permutation length {n} is not a power of two")
            space = make_space(n.bit_length() - 1)
        return cls(space, forward)

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.forward, np.arange(len(self.forward))))

    def __call__(self, s: MeasurableSet) -> MeasurableSet:
        return apply(self, s)

    def __mul__(self, other: "Transformation") -> "Transformation":
        return compose(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Transformation):
            return NotImplemented
        return self.space == other.space and np.array_equal(self.forward, other.forward)

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.space.resolution, self.forward.tobytes())))
        return self._hash

    def __repr__(self) -> str:
        if self.space.cell_count <= 16:
            return f"Transformation({self.forward.tolist()})"
        return f"Transformation(L={self.space.resolution}, ...)"


def _same(a: Transformation, b: Transformation) -> None:
    if a.space != b.space:
        raise SpaceMismatch(f"{a.space} vs {b.space}")


def identity(space: DyadicSpace) -> Transformation:
    ar = np.arange(space.cell_count)
    return Transformation(space, ar, ar, check=False)


def compose(a: Transformation, b: Transformation) -> Transformation:
    """``a b``: apply ``b``, then ``a``."""
    _same(a, b)
    return Transformation(a.space, a.forward[b.forward], b.inverse[a.inverse], check=False)


def invert(a: Transformation) -> Transformation:
    return Transformation(a.space, a.inverse, a.forward, check=False)


def apply(a: Transformation, s: MeasurableSet) -> MeasurableSet:
    """Image ``{a(c) : c in s}``."""
    if a.space != s.space:
        raise SpaceMismatch(f"{a.space} vs {s.space}")
    return MeasurableSet.from_indicator(a.space, s.indicator()[a.inverse])


def apply_inverse(a: Transformation, s: MeasurableSet) -> MeasurableSet:
    if a.space != s.space:
        raise SpaceMismatch(f"{a.space} vs {s.space}")
    return MeasurableSet.from_indicator(a.space, s.indicator()[a.forward])


def conjugate(t: Transformation, u: Transformation) -> Transformation:
    """``U^-1 T U``."""
    return compose(invert(u), compose(t, u))


def power(t: Transformation, k: int) -> Transformation:
    base = t if k >= 0 else invert(t)
    result = identity(t.space)
    k = abs(k)
    while k:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result


def order(t: Transformation) -> int:
    """Least ``p >= 1`` with ``t**p`` the identity (lcm of cycle lengths)."""
    fwd = t.forward
    seen = np.zeros(len(fwd), dtype=bool)
    lengths = set()
    for start in range(len(fwd)):
        if seen[start]:
            continue
        length, c = 0, start
        while not seen[c]:
            seen[c] = True
            c = fwd[c]
            length += 1
        lengths.add(length)
    return reduce(math.lcm, lengths, 1)


def rotation(space: DyadicSpace, shift: int = 1) -> Transformation:
    """Cyclic shift ``c -> c + shift mod 2^L``."""
    n = space.cell_count
    return Transformation(space, (np.arange(n) + shift) % n, check=False)


def _checked_resolution(resolution: int) -> DyadicSpace:
    if resolution > MAX_RESOLUTION:
        raise ResolutionTooLarge(f"resolution {resolution} exceeds the cap {MAX_RESOLUTION}")
    return make_space(resolution)


def lift_product_many(ts: Sequence[Transformation]) -> Transformation:
    """Direct product on ``X_{mL}``; factor ``j`` acts on bit-block ``j`` (block 0 = high bits).

    A canonical interval of level ``l <= L`` on ``X_L`` and the interval with the
    same (level, position) on ``X_{mL}`` correspond to ``A`` and ``A x X x ... x X``.
    """
    if not ts:
        raise ValueError("need at least one factor")
    base = ts[0].space
    for t in ts[1:]:
        _same(ts[0], t)
    m, L = len(ts), base.resolution
    space = _checked_resolution(m * L)
    cells = np.arange(space.cell_count, dtype=np.int64)
    mask = (1 << L) - 1
    fwd = np.zeros_like(cells)
    for j, t in enumerate(ts):
        shift = L * (m - 1 - j)
        fwd |= t.forward[(cells >> shift) & mask] << shift
    return Transformation(space, fwd, check=False)


def lift_product(t: Transformation, s: Transformation) -> Transformation:
    return lift_product_many([t, s])


def permute_blocks(block_resolution: int, order: Sequence[int]) -> Transformation:
    """Cell map on ``X_{mL}`` whose output block ``p`` carries input block ``order[p]``.

    Conjugating a product by it reorders the factors: in ``conjugate(P, U)`` the
    factor originally at block ``p`` ends up acting on block ``order[p]``.
    """
    m, L = len(order), block_resolution
    if sorted(order) != list(range(m)):
        raise ValueError(f"{order} is not a permutation of the blocks")
    space = _checked_resolution(m * L)
    cells = np.arange(space.cell_count, dtype=np.int64)
    mask = (1 << L) - 1
    fwd = np.zeros_like(cells)
    for p, q in enumerate(order):
        fwd |= ((cells >> (L * (m - 1 - q))) & mask) << (L * (m - 1 - p))
    return Transformation(space, fwd, check=False)


def refine(t: Transformation, resolution: int) -> Transformation:
    """Same map on a finer space: subcells of ``c`` go in order onto subcells of ``t(c)``."""
    L = t.space.resolution
    if resolution < L:
        raise ValueError(f"cannot refine from L={L} down to {resolution}")
    space = _checked_resolution(resolution)
    shift = resolution - L
    cells = np.arange(space.cell_count, dtype=np.int64)
    fwd = (t.forward[cells >> shift] << shift) | (cells & ((1 << shift) - 1))
    return Transformation(space, fwd, check=False)


def random_transformation(space: DyadicSpace, seed) -> Transformation:
    rng = np.random.default_rng(seed)
    return Transformation(space, rng.permutation(space.cell_count), check=False)


def random_periodic(space: DyadicSpace, m: int, seed) -> Transformation:
    """Random permutation whose cycle lengths all divide ``m`` (so its order divides ``m``)."""
    rng = np.random.default_rng(seed)
    n = space.cell_count
    cells = rng.permutation(n)
    divisors = [d for d in range(1, m + 1) if m % d == 0]
    fwd = np.arange(n)
    pos = 0
    while pos < n:
        d = int(rng.choice(divisors))
        while m % d or d > n - pos:
            d -= 1
        cyc = cells[pos:pos + d]
        fwd[cyc] = np.roll(cyc, -1)
        pos += d
    return Transformation(space, fwd, check=False)


def near_identity(
    space: DyadicSpace,
    eps,
    seed,
    depth: Optional[int] = None,
    steps: Optional[int] = None,
    require_nontrivial: bool = False,
) -> Transformation:
    """Random product of adjacent-cell transpositions that barely moves the family.

    Guarantees ``measure(A_i ^ U A_i) < eps`` for every family member with
    index ``<= depth`` (all members by default).  Each of ``steps`` random
    transpositions ``(c, c+1)`` is kept only if the guarantee still holds
    afterwards, so the result is verified exactly, not just bounded.
    """
    eps = as_dyadic(eps)
    if not eps:
        raise EpsTooSmall("eps must be positive")
    fam = canonical_family(space)
    mat = fam.indicators(depth)
    n = space.cell_count
    # Δ-count must stay below ceil(eps * 2^L)
    bound = math.ceil(eps.shift(space.resolution).as_fraction())
    rng = np.random.default_rng(seed)
    fwd = np.arange(n)
    if n > 1:
        for _ in range(n if steps is None else steps):
            c = int(rng.integers(0, n - 1))
            cand = fwd.copy()
            a, b = np.flatnonzero((fwd == c) | (fwd == c + 1))
            cand[a], cand[b] = fwd[b], fwd[a]
            inv = np.empty_like(cand)
            inv[cand] = np.arange(n)
            moved = np.count_nonzero(mat ^ mat[:, inv], axis=1)
            if len(moved) == 0 or moved.max() < bound:
                fwd = cand
    u = Transformation(space, fwd, check=False)
    if require_nontrivial and u.is_identity():
        raise EpsTooSmall(f"no transposition keeps the family within {eps} at {space}")
    return u
