"""Weak-topology metrics ``d`` and ``a``, their truncations, and correlation sums.

All sums are evaluated on integer cell counts and converted to a single
:class:`~leash.dyadic.Dyadic` at the end, so every value is exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .dyadic import Dyadic
from .errors import DepthOutOfRange, SpaceMismatch
from .measure import GeneratingFamily, MeasurableSet, canonical_family, family_size
from .transforms import Transformation

__all__ = [
    "ThetaProjector",
    "THETA",
    "CorrelationMatrix",
    "correlation_matrix",
    "metric_d",
    "metric_a",
    "metric_a_cross",
    "correlation_sum",
    "max_entry_gap",
]


class ThetaProjector:
    """Projection onto constants: pairs ``(A, B)`` to ``measure(A) * measure(B)``."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    @staticmethod
    def pair(a: MeasurableSet, b: MeasurableSet) -> Dyadic:
        return a.measure() * b.measure()

    def __repr__(self) -> str:
        return "THETA"


THETA = ThetaProjector()

Operand = Union[Transformation, ThetaProjector]


def _family(t: Transformation, family: Optional[GeneratingFamily]) -> GeneratingFamily:
    if family is None:
        return canonical_family(t.space)
    if family.space != t.space:
        raise SpaceMismatch(f"{t.space} vs family on {family.space}")
    return family


def _counts(t: Transformation, mat: np.ndarray) -> np.ndarray:
    """``C[i, j] = #(t A_i ∩ A_j)`` for the rows of ``mat``."""
    image = mat[:, t.inverse].astype(np.float64)
    # float matmul is exact: every partial sum is an integer below 2**53
    return (image @ mat.T.astype(np.float64)).astype(np.int64)


def _theta_counts(mat: np.ndarray) -> np.ndarray:
    """``#A_i * #A_j`` (in units of ``2**-2L``)."""
    sizes = mat.sum(axis=1).astype(object)
    return np.outer(sizes, sizes)


def _weighted_vector_sum(v: np.ndarray) -> int:
    """``sum_i v[i] 2^(n-i)`` for 1-based ``i``, as a Python int."""
    n = len(v)
    return sum(int(x) << (n - i) for i, x in enumerate(v, start=1) if x)


def _weighted_pair_sum(D: np.ndarray) -> int:
    """``sum_{i,j} D[i,j] 2^(2n-i-j)`` for 1-based ``i, j``, as a Python int."""
    n = D.shape[0]
    if n == 0:
        return 0
    peak = int(D.max())
    if peak.bit_length() + n + n.bit_length() < 62 and D.dtype != object:
        w = np.array([1 << (n - j) for j in range(1, n + 1)], dtype=np.int64)
        rows = D.astype(np.int64) @ w
    else:
        w = np.array([1 << (n - j) for j in range(1, n + 1)], dtype=object)
        rows = D.astype(object) @ w
    return _weighted_vector_sum(rows)


@dataclass(frozen=True)
class CorrelationMatrix:
    """``measure(T A_i ∩ A_j)`` for ``i, j <= n``, held as cell counts."""

    counts: np.ndarray
    resolution: int

    @property
    def depth(self) -> int:
        return self.counts.shape[0]

    def __getitem__(self, ij) -> Dyadic:
        i, j = ij
        return Dyadic(int(self.counts[i - 1, j - 1]), self.resolution)


def correlation_matrix(t: Transformation, family: Optional[GeneratingFamily] = None,
                       n: Optional[int] = None) -> CorrelationMatrix:
    fam = _family(t, family)
    counts = _counts(t, fam.indicators(n))
    counts.setflags(write=False)
    return CorrelationMatrix(counts, t.space.resolution)


def metric_d(t: Transformation, s: Transformation, family: Optional[GeneratingFamily] = None,
             n: Optional[int] = None) -> Dyadic:
    """``d_n(T, S) = sum_{i<=n} 2^-i (mu(TA_i Δ SA_i) + mu(T^-1 A_i Δ S^-1 A_i))``."""
    if t.space != s.space:
        raise SpaceMismatch(f"{t.space} vs {s.space}")
    fam = _family(t, family)
    mat = fam.indicators(n)
    n = mat.shape[0]
    fwd = np.count_nonzero(mat[:, t.inverse] ^ mat[:, s.inverse], axis=1)
    bwd = np.count_nonzero(mat[:, t.forward] ^ mat[:, s.forward], axis=1)
    return Dyadic(_weighted_vector_sum(fwd + bwd), n + t.space.resolution)


def metric_a(t: Transformation, s: Operand, family: Optional[GeneratingFamily] = None,
             n: Optional[int] = None) -> Dyadic:
    """``a_n(T, S) = sum_{i,j<=n} 2^-(i+j) |mu(TA_i ∩ A_j) - mu(SA_i ∩ A_j)|``.

    ``s`` may be :data:`THETA`, in which case ``mu(SA_i ∩ A_j)`` is replaced
    by ``mu(A_i) mu(A_j)``.
    """
    fam = _family(t, family)
    mat = fam.indicators(n)
    n = mat.shape[0]
    L = t.space.resolution
    ct = _counts(t, mat)
    if isinstance(s, ThetaProjector):
        D = np.abs((ct.astype(object) << L) - _theta_counts(mat))
        return Dyadic(_weighted_pair_sum(D), 2 * n + 2 * L)
    if s.space != t.space:
        raise SpaceMismatch(f"{t.space} vs {s.space}")
    D = np.abs(ct - _counts(s, mat))
    return Dyadic(_weighted_pair_sum(D), 2 * n + L)


def max_entry_gap(t: Operand, s: Operand, family: Optional[GeneratingFamily] = None,
                  n: Optional[int] = None) -> Dyadic:
    """``max_{i,j<=n} |mu(TA_i ∩ A_j) - mu(SA_i ∩ A_j)|`` (entrywise, unweighted)."""
    ref = t if isinstance(t, Transformation) else s
    fam = _family(ref, family)
    mat = fam.indicators(n)
    if mat.shape[0] == 0:
        return Dyadic(0)
    L = ref.space.resolution

    def scaled(x):
        if isinstance(x, ThetaProjector):
            return _theta_counts(mat)
        return _counts(x, mat).astype(object) << L

    D = np.abs(scaled(t) - scaled(s))
    return Dyadic(int(max(D.flat)), 2 * L)


def metric_a_cross(t: Transformation, s: Transformation, k: int) -> Dyadic:
    """``a_k`` between maps on different resolutions.

    Each operand evaluates ``mu(. A_i ∩ A_j)`` in its own space; intervals are
    matched by their (level, position) key, which is the same 1-based index
    in both canonical families.
    """
    common = family_size(min(t.space.resolution, s.space.resolution))
    if not 0 <= k <= common:
        raise DepthOutOfRange(f"depth {k} exceeds the common family size {common}")
    L1, L2 = t.space.resolution, s.space.resolution
    top = max(L1, L2)
    c1 = _counts(t, canonical_family(t.space).indicators(k)).astype(object) << (top - L1)
    c2 = _counts(s, canonical_family(s.space).indicators(k)).astype(object) << (top - L2)
    return Dyadic(_weighted_pair_sum(np.abs(c1 - c2)), 2 * k + top)


def correlation_sum(g_image: Transformation, first: Sequence[MeasurableSet],
                    second: Sequence[MeasurableSet], weights: Optional[Sequence] = None) -> Dyadic:
    """``sum w_i w_j |mu(g A_i ∩ B_j) - mu(A_i) mu(B_j)|`` over ``A_i in first``, ``B_j in second``.

    Default weights are ``2^-i`` with 1-based ``i`` on both sides.
    """
    space = g_image.space
    for x in (*first, *second):
        if x.space != space:
            raise SpaceMismatch(f"{x.space} vs {space}")
    if weights is None:
        weights = [Dyadic(1, i) for i in range(1, max(len(first), len(second)) + 1)]
    L = space.resolution
    A = np.array([x.indicator() for x in first], dtype=bool).reshape(len(first), space.cell_count)
    B = np.array([x.indicator() for x in second], dtype=bool).reshape(len(second), space.cell_count)
    counts = (A[:, g_image.inverse].astype(np.float64) @ B.T.astype(np.float64)).astype(np.int64)
    sa = A.sum(axis=1)
    sb = B.sum(axis=1)
    total = Dyadic(0)
    for i in range(len(first)):
        for j in range(len(second)):
            gap = abs((int(counts[i, j]) << L) - int(sa[i]) * int(sb[j]))
            if gap:
                total = total + Dyadic(gap, 2 * L) * weights[i] * weights[j]
    return total
