"""Exact non-negative dyadic rationals ``numerator * 2**-exponent``.

Every measure and every metric value in the library is a dyadic rational:
cells have measure ``2**-L`` and family weights are ``2**-i``.  Keeping the
values in this form means no rounding ever happens.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering
from typing import Union

__all__ = ["Dyadic", "as_dyadic", "parse_dyadic"]

Number = Union["Dyadic", int, Fraction]


@total_ordering
class Dyadic:
    """Non-negative rational with a power-of-two denominator.

    Stored in canonical form: the numerator is odd, or the value is zero
    with exponent zero.

    >>> Dyadic(3, 2) + Dyadic(1, 2)
    Dyadic(1, 0)
    >>> Dyadic(1, 1).abs_diff(Dyadic(3, 2))
    Dyadic(1, 2)
    """

    __slots__ = ("numerator", "exponent")

    def __init__(self, numerator: int = 0, exponent: int = 0):
        numerator = int(numerator)
        exponent = int(exponent)
        if numerator < 0:
            raise ValueError("Dyadic values are non-negative")
        if numerator == 0:
            exponent = 0
        else:
            if exponent < 0:
                numerator <<= -exponent
                exponent = 0
            tz = min((numerator & -numerator).bit_length() - 1, exponent)
            numerator >>= tz
            exponent -= tz
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "exponent", exponent)

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic is immutable")

    @classmethod
    def from_counts(cls, count: int, log2_den: int) -> "Dyadic":
        return cls(count, log2_den)

    @classmethod
    def from_fraction(cls, value: Fraction) -> "Dyadic":
        value = Fraction(value)
        den = value.denominator
        if den & (den - 1):
            raise ValueError(f"{value} does not have a power-of-two denominator")
        return cls(value.numerator, den.bit_length() - 1)

    # -- conversions ------------------------------------------------------
    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exponent)

    def __float__(self) -> float:
        return float(self.as_fraction())

    def scaled(self, log2_den: int) -> int:
        """Integer ``m`` with ``self == m * 2**-log2_den``; requires an exact fit."""
        if log2_den < self.exponent:
            raise ValueError(f"{self} is not a multiple of 2**-{log2_den}")
        return self.numerator << (log2_den - self.exponent)

    def decimal(self) -> str:
        """Exact decimal expansion (finite for every dyadic rational)."""
        whole, rest = divmod(self.numerator, 1 << self.exponent)
        if rest == 0:
            return str(whole)
        digits = (rest * 5 ** self.exponent)
        return f"{whole}.{digits:0{self.exponent}d}".rstrip("0")

    # -- arithmetic -------------------------------------------------------
    def _align(self, other: "Dyadic"):
        e = max(self.exponent, other.exponent)
        return self.numerator << (e - self.exponent), other.numerator << (e - other.exponent), e

    def __add__(self, other: Number) -> "Dyadic":
        other = as_dyadic(other)
        a, b, e = self._align(other)
        return Dyadic(a + b, e)

    __radd__ = __add__

    def __sub__(self, other: Number) -> "Dyadic":
        other = as_dyadic(other)
        a, b, e = self._align(other)
        if b > a:
            raise ValueError("Dyadic subtraction would be negative; use abs_diff")
        return Dyadic(a - b, e)

    def abs_diff(self, other: Number) -> "Dyadic":
        other = as_dyadic(other)
        a, b, e = self._align(other)
        return Dyadic(abs(a - b), e)

    def __mul__(self, other: Number) -> "Dyadic":
        other = as_dyadic(other)
        return Dyadic(self.numerator * other.numerator, self.exponent + other.exponent)

    __rmul__ = __mul__

    def shift(self, k: int) -> "Dyadic":
        """Multiply by ``2**k`` (``k`` may be negative)."""
        return Dyadic(self.numerator, self.exponent - k)

    # -- comparison -------------------------------------------------------
    def __eq__(self, other) -> bool:
        try:
            other = as_dyadic(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.numerator == other.numerator and self.exponent == other.exponent

    def __lt__(self, other) -> bool:
        if isinstance(other, (Fraction, int)) and not isinstance(other, bool) and other < 0:
            return False
        other = as_dyadic(other)
        a, b, _ = self._align(other)
        return a < b

    def __hash__(self) -> int:
        return hash(self.as_fraction())

    def __bool__(self) -> bool:
        return self.numerator != 0

    def __repr__(self) -> str:
        return f"Dyadic({self.numerator}, {self.exponent})"

    def __str__(self) -> str:
        if self.exponent == 0:
            return str(self.numerator)
        return f"{self.numerator}/{1 << self.exponent}"


ZERO = Dyadic(0)
ONE = Dyadic(1)


def as_dyadic(value: Number) -> Dyadic:
    if isinstance(value, Dyadic):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a dyadic rational")
    if isinstance(value, int):
        return Dyadic(value)
    if isinstance(value, Fraction):
        return Dyadic.from_fraction(value)
    raise TypeError(f"cannot convert {type(value).__name__} to Dyadic")


_RAT = re.compile(r"^\s*(\d+)\s*(?:/\s*(?:2\s*\^\s*(\d+)|(\d+)))?\s*$")


def parse_dyadic(text: str) -> Dyadic:
    """Parse ``"p"``, ``"p/2^q"`` or ``"p/q"`` with ``q`` a power of two."""
    m = _RAT.match(text)
    if not m:
        raise ValueError(f"not a dyadic rational: {text!r}")
    num = int(m.group(1))
    if m.group(2) is not None:
        return Dyadic(num, int(m.group(2)))
    if m.group(3) is not None:
        den = int(m.group(3))
        if den == 0 or den & (den - 1):
            raise ValueError(f"denominator {den} is not a power of two")
        return Dyadic(num, den.bit_length() - 1)
    return Dyadic(num)
