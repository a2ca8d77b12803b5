"""Presented discrete groups with word norms, balls, covers and subsets Gamma.

Elements are plain hashable values in a canonical normal form:

===========  ====================================================
kind         element
===========  ====================================================
``Z``        ``int``
``Zd``       ``tuple`` of ``d`` ints
``cyclic``   residue ``0 <= r < m``
``free``     reduced word, a tuple of nonzero ints (``±(i+1)`` for ``g_i^±1``)
``H``        ``(v, r)`` with ``v`` a tuple of ``n`` ints and ``r`` mod ``n``
===========  ====================================================

``H(n)`` is ``Z^n ⋊ Z_n`` generated by ``g0 = (0, 1)`` and ``g1 = (e_0, 0)``
with ``(v, r)(w, s) = (v + σ^r w, r + s)``; ``σ`` shifts coordinates forward.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .errors import CapExceeded, InvalidParams, ModelMismatch, ParseError

__all__ = [
    "Word",
    "GroupModel",
    "IntegerGroup",
    "LatticeGroup",
    "CyclicGroup",
    "FreeGroup",
    "HGroup",
    "GammaSpec",
    "make_group",
    "enumerate_gamma",
    "parse_word",
    "format_word",
    "DEFAULT_CAP",
]

DEFAULT_CAP = 64
MAX_BALL_ELEMENTS = 500_000

# a word is a sequence of (generator index, exponent) pairs
Word = Sequence[tuple[int, int]]

_WORD_TOKEN = re.compile(r"^g(\d+)(?:\^(-?\d+))?$")


def parse_word(text: str) -> list[tuple[int, int]]:
    """Parse ``"g0*g1^-1*g0^2"``; ``"e"`` or ``""`` is the empty word."""
    text = text.strip()
    if text in ("", "e", "1"):
        return []
    word = []
    for token in text.split("*"):
        m = _WORD_TOKEN.match(token.strip())
        if not m:
            raise ParseError(f"bad word token {token.strip()!r} in {text!r}")
        word.append((int(m.group(1)), int(m.group(2) or 1)))
    return word


def format_word(word: Word) -> str:
    if not word:
        return "e"
    return "*".join(f"g{g}" if e == 1 else f"g{g}^{e}" for g, e in word)


class GroupModel:
    """Base class: subclasses supply the group law and normal forms."""

    kind: str = ""

    def __init__(self, generator_count: int, cover_mode: str = "singletons"):
        if cover_mode not in ("singletons", "generating-set"):
            raise InvalidParams(f"unknown cover mode {cover_mode!r}")
        self.generator_names = tuple(f"g{i}" for i in range(generator_count))
        self.cover_mode = cover_mode
        self._dist: dict = {}
        self._frontier: list = []
        self._radius = -1

    # -- to be provided ----------------------------------------------------
    @property
    def params(self) -> dict:
        raise NotImplementedError

    @property
    def identity(self):
        raise NotImplementedError

    def generator(self, index: int):
        raise NotImplementedError

    def multiply(self, a, b):
        raise NotImplementedError

    def invert(self, a):
        raise NotImplementedError

    def check(self, a):
        """Raise :class:`ModelMismatch` unless ``a`` is a normal form of this model."""
        raise NotImplementedError

    def word(self, a) -> list[tuple[int, int]]:
        """A generator word evaluating to ``a``."""
        raise NotImplementedError

    def relators(self) -> list[list[tuple[int, int]]]:
        return []

    def power_escape_index(self, g, radius: int) -> Optional[int]:
        """``J`` with ``norm(g^j) > radius`` whenever ``|j| > J``; ``None`` if ``g`` has finite order."""
        raise NotImplementedError

    def format(self, a) -> str:
        return repr(a)

    def parse_literal(self, text: str):
        raise ParseError(f"no literal syntax for {self.kind}")

    # -- shared machinery --------------------------------------------------
    def norm(self, a) -> int:
        self.check(a)
        return self._bfs_norm(a, DEFAULT_CAP * 4)

    def norm_within(self, a, radius: int) -> Optional[int]:
        """Norm of ``a`` if it is at most ``radius``, else ``None``."""
        n = self.norm(a)
        return n if n <= radius else None

    def sort_key(self, a):
        return a

    def generators(self) -> list:
        return [self.generator(i) for i in range(len(self.generator_names))]

    def step_set(self) -> list:
        out = []
        for g in self.generators():
            out.extend([g, self.invert(g)])
        return out

    def covers(self) -> list[list]:
        """``K_1, K_2, ...``: one singleton per generator and per inverse (default)."""
        if self.cover_mode == "generating-set":
            return [_dedupe(self.step_set())]
        return [[g] for g in self.step_set()]

    def power(self, g, k: int):
        base = g if k >= 0 else self.invert(g)
        out = self.identity
        for _ in range(abs(k)):
            out = self.multiply(out, base)
        return out

    def evaluate_word(self, word: Word):
        out = self.identity
        for gen, exp in word:
            if not 0 <= gen < len(self.generator_names):
                raise ModelMismatch(f"generator g{gen} not in {self}")
            out = self.multiply(out, self.power(self.generator(gen), exp))
        return out

    def parse(self, text: str):
        text = text.strip()
        if text.startswith("g") or text in ("e", ""):
            return self.evaluate_word(parse_word(text))
        try:
            return self.parse_literal(text)
        except ParseError:
            raise
        except Exception as exc:
            raise ParseError(f"cannot parse {text!r} as an element of {self.kind}: {exc}") from exc

    def _grow(self, radius: int) -> None:
        if self._radius < 0:
            e = self.identity
            self._dist = {e: 0}
            self._frontier = [e]
            self._radius = 0
        steps = self.step_set()
        while self._radius < radius:
            nxt = []
            for x in self._frontier:
                for s in steps:
                    y = self.multiply(x, s)
                    if y not in self._dist:
                        self._dist[y] = self._radius + 1
                        nxt.append(y)
            if len(self._dist) > MAX_BALL_ELEMENTS:
                raise CapExceeded(f"ball of radius {self._radius + 1} in {self} exceeds {MAX_BALL_ELEMENTS} elements")
            self._frontier = nxt
            self._radius += 1

    def _bfs_norm(self, a, cap: int) -> int:
        r = max(self._radius, 0)
        while True:
            self._grow(r)
            if a in self._dist:
                return self._dist[a]
            if r >= cap:
                raise CapExceeded(f"norm of {self.format(a)} exceeds {cap}")
            r += 1

    def ball(self, radius: int) -> list:
        """Elements of norm ``<= radius`` sorted by (norm, normal form)."""
        if radius < 0:
            return []
        return sorted(self._ball_elements(radius), key=lambda g: (self.norm(g), self.sort_key(g)))

    def _ball_elements(self, radius: int) -> Iterable:
        self._grow(radius)
        return [g for g, d in self._dist.items() if d <= radius]

    def annulus(self, r1: int, r2: int) -> list:
        return [g for g in self.ball(r2) if self.norm(g) > r1]

    def __eq__(self, other) -> bool:
        return (isinstance(other, GroupModel) and self.kind == other.kind
                and self.params == other.params and self.cover_mode == other.cover_mode)

    def __hash__(self) -> int:
        return hash((self.kind, tuple(sorted(self.params.items())), self.cover_mode))

    def __repr__(self) -> str:
        args = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.kind}({args})"


def _dedupe(items: list) -> list:
    seen, out = set(), []
    for x in items:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


class IntegerGroup(GroupModel):
    kind = "Z"

    def __init__(self, cover_mode: str = "singletons"):
        super().__init__(1, cover_mode)

    @property
    def params(self) -> dict:
        return {}

    @property
    def identity(self) -> int:
        return 0

    def generator(self, index: int) -> int:
        return 1

    def multiply(self, a: int, b: int) -> int:
        return a + b

    def invert(self, a: int) -> int:
        return -a

    def check(self, a) -> None:
        if not isinstance(a, int) or isinstance(a, bool):
            raise ModelMismatch(f"{a!r} is not an element of Z")

    def norm(self, a: int) -> int:
        self.check(a)
        return abs(a)

    def word(self, a: int) -> list[tuple[int, int]]:
        return [(0, a)] if a else []

    def power_escape_index(self, g: int, radius: int) -> Optional[int]:
        return None if g == 0 else radius // abs(g)

    def _ball_elements(self, radius: int):
        return range(-radius, radius + 1)

    def format(self, a: int) -> str:
        return str(a)

    def parse_literal(self, text: str) -> int:
        return int(text)


class LatticeGroup(GroupModel):
    kind = "Zd"

    def __init__(self, d: int, cover_mode: str = "singletons"):
        if d < 1:
            raise InvalidParams("Zd needs d >= 1")
        self.d = d
        super().__init__(d, cover_mode)

    @property
    def params(self) -> dict:
        return {"d": self.d}

    @property
    def identity(self) -> tuple:
        return (0,) * self.d

    def generator(self, index: int) -> tuple:
        return tuple(int(i == index) for i in range(self.d))

    def multiply(self, a, b) -> tuple:
        return tuple(x + y for x, y in zip(a, b))

    def invert(self, a) -> tuple:
        return tuple(-x for x in a)

    def check(self, a) -> None:
        if not (isinstance(a, tuple) and len(a) == self.d and all(isinstance(x, int) for x in a)):
            raise ModelMismatch(f"{a!r} is not an element of Z^{self.d}")

    def norm(self, a) -> int:
        self.check(a)
        return sum(abs(x) for x in a)

    def word(self, a) -> list[tuple[int, int]]:
        return [(i, x) for i, x in enumerate(a) if x]

    def relators(self):
        return [[(i, 1), (j, 1), (i, -1), (j, -1)] for i in range(self.d) for j in range(i + 1, self.d)]

    def power_escape_index(self, g, radius: int) -> Optional[int]:
        n = self.norm(g)
        return None if n == 0 else radius // n

    def format(self, a) -> str:
        return "(" + ",".join(str(x) for x in a) + ")"

    def parse_literal(self, text: str) -> tuple:
        inner = text.strip()
        if not (inner.startswith("(") and inner.endswith(")")):
            raise ParseError(f"expected (x1,...,x{self.d}), got {text!r}")
        parts = [p for p in inner[1:-1].split(",") if p.strip()]
        value = tuple(int(p) for p in parts)
        if len(value) != self.d:
            raise ParseError(f"expected {self.d} coordinates, got {len(value)}")
        return value


class CyclicGroup(GroupModel):
    kind = "cyclic"

    def __init__(self, m: int, cover_mode: str = "singletons"):
        if m < 1:
            raise InvalidParams("cyclic group needs m >= 1")
        self.m = m
        super().__init__(1, cover_mode)

    @property
    def params(self) -> dict:
        return {"m": self.m}

    @property
    def identity(self) -> int:
        return 0

    def generator(self, index: int) -> int:
        return 1 % self.m

    def multiply(self, a: int, b: int) -> int:
        return (a + b) % self.m

    def invert(self, a: int) -> int:
        return (-a) % self.m

    def check(self, a) -> None:
        if not (isinstance(a, int) and not isinstance(a, bool) and 0 <= a < self.m):
            raise ModelMismatch(f"{a!r} is not a residue mod {self.m}")

    def norm(self, a: int) -> int:
        self.check(a)
        return min(a, self.m - a)

    def word(self, a: int) -> list[tuple[int, int]]:
        return [(0, a)] if a else []

    def relators(self):
        return [[(0, self.m)]]

    def power_escape_index(self, g, radius: int) -> Optional[int]:
        return None

    def format(self, a: int) -> str:
        return str(a)

    def parse_literal(self, text: str) -> int:
        return int(text) % self.m


class FreeGroup(GroupModel):
    kind = "free"

    def __init__(self, r: int, cover_mode: str = "singletons"):
        if r < 1:
            raise InvalidParams("free group needs rank r >= 1")
        self.r = r
        super().__init__(r, cover_mode)

    @property
    def params(self) -> dict:
        return {"r": self.r}

    @property
    def identity(self) -> tuple:
        return ()

    def generator(self, index: int) -> tuple:
        return (index + 1,)

    def multiply(self, a, b) -> tuple:
        out = list(a)
        for x in b:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
        return tuple(out)

    def invert(self, a) -> tuple:
        return tuple(-x for x in reversed(a))

    def check(self, a) -> None:
        ok = isinstance(a, tuple) and all(isinstance(x, int) and 0 < abs(x) <= self.r for x in a)
        if not ok or any(a[i] == -a[i + 1] for i in range(len(a) - 1)):
            raise ModelMismatch(f"{a!r} is not a reduced word in F_{self.r}")

    def norm(self, a) -> int:
        self.check(a)
        return len(a)

    def sort_key(self, a):
        return tuple((abs(x), x < 0) for x in a)

    def word(self, a) -> list[tuple[int, int]]:
        return [(abs(x) - 1, 1 if x > 0 else -1) for x in a]

    def power_escape_index(self, g, radius: int) -> Optional[int]:
        # |g^j| = 2|u| + |j| |w| >= |j| for g = u w u^-1 with w cyclically reduced
        return None if not g else radius

    def format(self, a) -> str:
        return format_word(self.word(a))


class HGroup(GroupModel):
    kind = "H"

    def __init__(self, n: int, cover_mode: str = "singletons"):
        if n < 2:
            raise InvalidParams("H(n) needs n >= 2")
        self.n = n
        super().__init__(2, cover_mode)

    @property
    def params(self) -> dict:
        return {"n": self.n}

    @property
    def identity(self):
        return ((0,) * self.n, 0)

    def generator(self, index: int):
        if index == 0:
            return ((0,) * self.n, 1)
        return (tuple(int(i == 0) for i in range(self.n)), 0)

    def _shift(self, w, r: int) -> tuple:
        n = self.n
        return tuple(w[(i - r) % n] for i in range(n))

    def multiply(self, a, b):
        (v, r), (w, s) = a, b
        sw = self._shift(w, r)
        return (tuple(x + y for x, y in zip(v, sw)), (r + s) % self.n)

    def invert(self, a):
        v, r = a
        return (tuple(-x for x in self._shift(v, -r)), (-r) % self.n)

    def check(self, a) -> None:
        ok = (isinstance(a, tuple) and len(a) == 2 and isinstance(a[0], tuple) and len(a[0]) == self.n
              and all(isinstance(x, int) for x in a[0]) and isinstance(a[1], int) and 0 <= a[1] < self.n)
        if not ok:
            raise ModelMismatch(f"{a!r} is not an element of H({self.n})")

    def norm_within(self, a, radius: int) -> Optional[int]:
        self.check(a)
        self._grow(radius)
        d = self._dist.get(a)
        return d if d is not None and d <= radius else None

    def word(self, a) -> list[tuple[int, int]]:
        v, r = a
        out = []
        for i, x in enumerate(v):
            if x:
                # g0^-k g1 g0^k = (e_{-k mod n}, 0)
                k = (-i) % self.n
                out.extend([(0, -k), (1, x), (0, k)] if k else [(1, x)])
        if r:
            out.append((0, r))
        return out

    def relators(self):
        n = self.n
        rel = [[(0, n)]]
        for k in range(1, n):
            conj = [(0, -k), (1, 1), (0, k)]
            conj_inv = [(0, -k), (1, -1), (0, k)]
            rel.append([(1, 1)] + conj + [(1, -1)] + conj_inv)
        return rel

    def power_escape_index(self, g, radius: int) -> Optional[int]:
        # each g1-step moves v by one unit vector, so |(w, s)| >= ||w||_1
        v, r = g
        p = self.n // math.gcd(r, self.n)
        partial, x = [], self.identity
        for _ in range(p):
            partial.append(sum(abs(c) for c in x[0]))
            x = self.multiply(x, g)
        drift = sum(abs(c) for c in x[0])
        if drift == 0:
            return None
        # g^(qp+t) = (q u + v_t, t r); same bound for negative q via inverse partials
        y, back = self.identity, []
        gi = self.invert(g)
        for _ in range(p):
            back.append(sum(abs(c) for c in y[0]))
            y = self.multiply(y, gi)
        slack = max(partial + back)
        return p * ((radius + slack) // drift + 2)

    def format(self, a) -> str:
        v, r = a
        return "(" + ",".join(str(x) for x in v) + f";{r})"

    def parse_literal(self, text: str):
        m = re.match(r"^\(\s*([-\d,\s]*)\s*;\s*(-?\d+)\s*\)$", text.strip())
        if not m:
            raise ParseError(f"expected (v1,...,v{self.n};r) or a word, got {text!r}")
        v = tuple(int(p) for p in m.group(1).split(",") if p.strip())
        if len(v) != self.n:
            raise ParseError(f"expected {self.n} coordinates, got {len(v)}")
        return (v, int(m.group(2)) % self.n)


_KINDS = {
    "Z": (IntegerGroup, ()),
    "Zd": (LatticeGroup, ("d",)),
    "cyclic": (CyclicGroup, ("m",)),
    "free": (FreeGroup, ("r",)),
    "H": (HGroup, ("n",)),
}


def make_group(kind: str, cover_mode: str = "singletons", **params) -> GroupModel:
    """Build one of the five built-in models: ``Z``, ``Zd(d)``, ``cyclic(m)``, ``free(r)``, ``H(n)``."""
    if kind not in _KINDS:
        raise InvalidParams(f"unknown group kind {kind!r}")
    cls, names = _KINDS[kind]
    extra = set(params) - set(names)
    missing = [p for p in names if p not in params]
    if extra or missing:
        raise InvalidParams(f"{kind} takes parameters {list(names)}, got {sorted(params)}")
    for p in names:
        if not isinstance(params[p], int) or isinstance(params[p], bool):
            raise InvalidParams(f"parameter {p} must be an integer")
    return cls(**params, cover_mode=cover_mode)


# -- subsets Gamma -------------------------------------------------------------

@dataclass(frozen=True)
class GammaSpec:
    """Unbounded subset ``Gamma`` along which mixing is measured.

    ``selector`` is ``"whole"``, ``"cyclic"`` (subgroup generated by
    ``generator``), ``"lattice"`` (``m Z`` inside ``Z``) or ``"custom"``
    (``predicate`` plus an ``enumerator(r1, r2)`` listing the annulus).
    """

    selector: str = "whole"
    generator: object = None
    m: int = 0
    predicate: Optional[Callable] = field(default=None, compare=False)
    enumerator: Optional[Callable] = field(default=None, compare=False)

    @classmethod
    def whole(cls) -> "GammaSpec":
        return cls("whole")

    @classmethod
    def cyclic(cls, generator) -> "GammaSpec":
        return cls("cyclic", generator=generator)

    @classmethod
    def lattice(cls, m: int) -> "GammaSpec":
        if m < 1:
            raise InvalidParams("lattice step must be >= 1")
        return cls("lattice", m=m)

    @classmethod
    def custom(cls, predicate: Callable, enumerator: Callable) -> "GammaSpec":
        return cls("custom", predicate=predicate, enumerator=enumerator)

    @property
    def is_cyclic(self) -> bool:
        return self.selector in ("cyclic", "lattice")

    def is_cyclic_in(self, model: GroupModel) -> bool:
        """Cyclic selectors, and the whole group when the group itself is cyclic."""
        return self.is_cyclic or (self.selector == "whole" and model.kind in ("Z", "cyclic"))

    def cyclic_generator(self, model: GroupModel):
        if self.selector == "whole" and model.kind in ("Z", "cyclic"):
            return model.generator(0)
        if self.selector == "cyclic":
            return self.generator
        if self.selector == "lattice":
            if model.kind != "Z":
                raise InvalidParams("lattice Gamma is only defined inside Z")
            return self.m
        raise InvalidParams(f"Gamma {self.describe(model)} is not cyclic")

    def contains(self, model: GroupModel, g) -> bool:
        if self.selector == "whole":
            return True
        if self.selector == "lattice":
            return g % self.m == 0
        if self.selector == "custom":
            return bool(self.predicate(g))
        bound = model.norm(g)
        return g == model.identity or g in set(_cyclic_annulus(model, self.generator, 0, bound))

    def describe(self, model: Optional[GroupModel] = None) -> str:
        if self.selector == "lattice":
            return f"{self.m}Z"
        if self.selector == "cyclic":
            text = model.format(self.generator) if model is not None else repr(self.generator)
            return f"<{text}>"
        return self.selector


def _cyclic_annulus(model: GroupModel, g, r1: int, r2: int) -> list:
    escape = model.power_escape_index(g, r2)
    if escape is None:
        # finite order: walk one period
        powers, x = [], model.multiply(model.identity, g)
        while x != model.identity:
            powers.append(x)
            x = model.multiply(x, g)
        candidates = powers
    else:
        candidates = []
        up = down = model.identity
        gi = model.invert(g)
        for _ in range(escape):
            up = model.multiply(up, g)
            down = model.multiply(down, gi)
            candidates.extend([up, down])
    out = []
    for x in _dedupe(candidates):
        nx = model.norm_within(x, r2)
        if nx is not None and r1 < nx <= r2:
            out.append(x)
    return out


def enumerate_gamma(model: GroupModel, gamma: GammaSpec, r1: int, r2: int,
                    cap: int = DEFAULT_CAP) -> list:
    """Elements ``g`` of Gamma with ``r1 < |g| <= r2``, sorted by (norm, normal form)."""
    if r2 > cap:
        raise CapExceeded(f"radius {r2} exceeds the enumeration cap {cap}")
    if r1 >= r2:
        return []
    if gamma.selector == "whole":
        out = model.annulus(r1, r2)
    elif gamma.selector == "lattice":
        if model.kind != "Z":
            raise InvalidParams("lattice Gamma is only defined inside Z")
        out = [x for x in range(-r2, r2 + 1) if x % gamma.m == 0 and r1 < abs(x) <= r2]
    elif gamma.selector == "cyclic":
        model.check(gamma.generator)
        out = _cyclic_annulus(model, gamma.generator, r1, r2)
    elif gamma.selector == "custom":
        out = [g for g in gamma.enumerator(r1, r2) if r1 < model.norm(g) <= r2]
    else:
        raise InvalidParams(f"unknown Gamma selector {gamma.selector!r}")
    return sorted(out, key=lambda g: (model.norm(g), model.sort_key(g)))


def gamma_is_unbounded(model: GroupModel, gamma: GammaSpec, cap: int = DEFAULT_CAP) -> bool:
    """True when Gamma reaches beyond half the cap, the finite stand-in for unboundedness."""
    return bool(enumerate_gamma(model, gamma, cap // 2, cap, cap))
