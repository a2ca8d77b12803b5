"""Finite dyadic model of a Lebesgue space.

The space at resolution ``L`` has ``2**L`` cells of measure ``2**-L``.
Measurable sets are bitmasks over the cells (Python ints, bit ``c`` is cell
``c``), so Boolean operations and measures are exact.  The generating family
consists of all dyadic intervals of levels ``1..L``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional

import numpy as np

from .dyadic import Dyadic, as_dyadic
from .errors import DepthOutOfRange, ResolutionTooLarge, SpaceMismatch

__all__ = [
    "MAX_RESOLUTION",
    "DyadicSpace",
    "MeasurableSet",
    "GeneratingFamily",
    "make_space",
    "canonical_family",
    "set_algebra",
    "measure",
    "approx_index",
    "interval_index",
    "interval_key",
    "family_size",
]

MAX_RESOLUTION = 16


@dataclass(frozen=True)
class DyadicSpace:
    resolution: int

    @property
    def cell_count(self) -> int:
        return 1 << self.resolution

    @property
    def cell_measure(self) -> Dyadic:
        return Dyadic(1, self.resolution)

    def full(self) -> "MeasurableSet":
        return MeasurableSet(self, (1 << self.cell_count) - 1)

    def empty(self) -> "MeasurableSet":
        return MeasurableSet(self, 0)

    def cells(self, *cells: int) -> "MeasurableSet":
        return MeasurableSet.from_cells(self, cells)

    def interval(self, level: int, position: int) -> "MeasurableSet":
        """Dyadic interval ``[p 2^-l, (p+1) 2^-l)`` as a set of cells."""
        if not 0 <= level <= self.resolution or not 0 <= position < (1 << level):
            raise ValueError(f"no interval ({level}, {position}) at resolution {self.resolution}")
        width = 1 << (self.resolution - level)
        return MeasurableSet(self, ((1 << width) - 1) << (position * width))

    def __repr__(self) -> str:
        return f"DyadicSpace(L={self.resolution})"


def make_space(resolution: int, cap: int = MAX_RESOLUTION) -> DyadicSpace:
    if resolution < 0:
        raise ValueError("resolution must be non-negative")
    if resolution > cap:
        raise ResolutionTooLarge(f"resolution {resolution} exceeds the cap {cap}")
    return DyadicSpace(resolution)


def _check_space(a: DyadicSpace, b: DyadicSpace) -> None:
    if a != b:
        raise SpaceMismatch(f"{a} vs {b}")


@dataclass(frozen=True)
class MeasurableSet:
    space: DyadicSpace
    cells: int

    @classmethod
    def from_cells(cls, space: DyadicSpace, cells: Iterable[int]) -> "MeasurableSet":
        mask = 0
        for c in cells:
            if not 0 <= c < space.cell_count:
                raise ValueError(f"cell {c} outside {space}")
            mask |= 1 << c
        return cls(space, mask)

    @classmethod
    def from_indicator(cls, space: DyadicSpace, indicator: np.ndarray) -> "MeasurableSet":
        bits = np.packbits(np.asarray(indicator, dtype=bool), bitorder="little")
        return cls(space, int.from_bytes(bits.tobytes(), "little"))

    def indicator(self) -> np.ndarray:
        n = self.space.cell_count
        raw = self.cells.to_bytes((n + 7) // 8, "little")
        return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:n].astype(bool)

    def members(self) -> list[int]:
        return [c for c in range(self.space.cell_count) if self.cells >> c & 1]

    @property
    def count(self) -> int:
        return self.cells.bit_count()

    def measure(self) -> Dyadic:
        return Dyadic(self.count, self.space.resolution)

    def __and__(self, other: "MeasurableSet") -> "MeasurableSet":
        _check_space(self.space, other.space)
        return MeasurableSet(self.space, self.cells & other.cells)

    def __or__(self, other: "MeasurableSet") -> "MeasurableSet":
        _check_space(self.space, other.space)
        return MeasurableSet(self.space, self.cells | other.cells)

    def __xor__(self, other: "MeasurableSet") -> "MeasurableSet":
        _check_space(self.space, other.space)
        return MeasurableSet(self.space, self.cells ^ other.cells)

    def complement(self) -> "MeasurableSet":
        return MeasurableSet(self.space, self.cells ^ ((1 << self.space.cell_count) - 1))

    def __le__(self, other: "MeasurableSet") -> bool:
        _check_space(self.space, other.space)
        return self.cells & ~other.cells == 0

    def __repr__(self) -> str:
        return f"MeasurableSet(L={self.space.resolution}, cells={self.members()})"


_OPS = {
    "intersect": lambda a, b: a & b,
    "union": lambda a, b: a | b,
    "sym_diff": lambda a, b: a ^ b,
}


def set_algebra(a: MeasurableSet, b: Optional[MeasurableSet], op: str) -> MeasurableSet:
    """Apply ``intersect``, ``union``, ``sym_diff`` or ``complement`` (``b`` ignored)."""
    if op == "complement":
        return a.complement()
    if op not in _OPS:
        raise ValueError(f"unknown set operation {op!r}")
    return _OPS[op](a, b)


def measure(a: MeasurableSet) -> Dyadic:
    return a.measure()


# -- canonical generating family ---------------------------------------------

def family_size(resolution: int) -> int:
    return (1 << (resolution + 1)) - 2


def interval_key(index: int) -> tuple[int, int]:
    """``(level, position)`` of the 1-based family index."""
    if index < 1:
        raise ValueError("family indices start at 1")
    level = (index + 1).bit_length() - 1
    return level, index + 1 - (1 << level)


def interval_index(level: int, position: int) -> int:
    return (1 << level) - 1 + position


@dataclass(frozen=True)
class GeneratingFamily:
    """Dyadic intervals of levels ``1..L`` ordered by (level, position).

    Indices are 1-based as in ``A_1, A_2, ...``; member ``i`` carries weight
    ``2**-i``.  Members are generated on demand, so the family of a large
    space costs nothing until used.
    """

    space: DyadicSpace

    def __len__(self) -> int:
        return family_size(self.space.resolution)

    def __iter__(self) -> Iterator[MeasurableSet]:
        for i in range(1, len(self) + 1):
            yield self[i]

    def __getitem__(self, index: int) -> MeasurableSet:
        if not 1 <= index <= len(self):
            raise IndexError(f"family index {index} outside 1..{len(self)}")
        return self.space.interval(*interval_key(index))

    def key(self, index: int) -> tuple[int, int]:
        if not 1 <= index <= len(self):
            raise IndexError(f"family index {index} outside 1..{len(self)}")
        return interval_key(index)

    @staticmethod
    def weight(index: int) -> Dyadic:
        return Dyadic(1, index)

    def sets(self, depth: Optional[int] = None) -> list[MeasurableSet]:
        return [self[i] for i in range(1, self.depth(depth) + 1)]

    def depth(self, n: Optional[int]) -> int:
        """Resolve ``None`` to the full size and validate an explicit depth."""
        if n is None:
            return len(self)
        if not 0 <= n <= len(self):
            raise DepthOutOfRange(f"depth {n} outside 0..{len(self)} at {self.space}")
        return n

    def indicators(self, n: Optional[int] = None) -> np.ndarray:
        """Read-only ``(n, cells)`` boolean matrix of the first ``n`` members."""
        return _interval_matrix(self.space.resolution, self.depth(n))


@lru_cache(maxsize=64)
def _interval_matrix(resolution: int, n: int) -> np.ndarray:
    cells = 1 << resolution
    mat = np.zeros((n, cells), dtype=bool)
    for i in range(1, n + 1):
        level, pos = interval_key(i)
        width = cells >> level
        mat[i - 1, pos * width:(pos + 1) * width] = True
    mat.setflags(write=False)
    return mat


def canonical_family(space: DyadicSpace) -> GeneratingFamily:
    return GeneratingFamily(space)


def approx_index(family: GeneratingFamily, target: MeasurableSet, eps) -> Optional[int]:
    """Smallest ``i`` with ``measure(A_i ^ target) < eps``, or ``None``."""
    _check_space(family.space, target.space)
    eps = as_dyadic(eps)
    mat = family.indicators()
    if len(mat) == 0:
        return None
    diff = np.count_nonzero(mat ^ target.indicator()[None, :], axis=1)
    # diff * 2^-L < eps  <=>  diff < ceil(eps * 2^L) for integer diff
    bound = math.ceil(eps.shift(family.space.resolution).as_fraction())
    hits = np.flatnonzero(diff < bound)
    return int(hits[0]) + 1 if len(hits) else None
