"""Group actions by cell permutations.

An :class:`Action` is fixed by the images of the generators; every other
element is evaluated through a generator word of its normal form and
memoised.  Relators are checked on construction, so the evaluation is a
homomorphism.
"""
from __future__ import annotations

import threading
from typing import Mapping, Sequence, Union

import numpy as np

from .errors import InvalidParams, ModelMismatch, RelatorViolated, SpaceMismatch
from .groups import GroupModel, format_word
from .measure import DyadicSpace
from .transforms import (
    Transformation,
    compose,
    conjugate,
    identity,
    lift_product_many,
    power,
    random_periodic,
    random_transformation,
)

__all__ = ["Action", "make_action", "conjugate_action", "product_action", "product_action_many",
           "random_action"]


class Action:
    """Homomorphism ``g -> T^g`` from a group model into cell permutations."""

    def __init__(self, model: GroupModel, generator_images: Union[Mapping[str, Transformation], Sequence[Transformation]],
                 validate: bool = True):
        if not isinstance(generator_images, Mapping):
            generator_images = dict(zip(model.generator_names, generator_images))
        names = model.generator_names
        if set(generator_images) != set(names):
            raise ModelMismatch(f"expected images for {list(names)}, got {sorted(generator_images)}")
        images = tuple(generator_images[name] for name in names)
        space = images[0].space
        for t in images[1:]:
            if t.space != space:
                raise SpaceMismatch(f"generator images live on {space} and {t.space}")
        self.model = model
        self.space = space
        self.images = images
        self._cache: dict = {}
        self._lock = threading.Lock()
        if validate:
            self.check_relators()
        e = model.identity
        self._cache[e] = identity(space)
        for g, t in zip(model.generators(), images):
            self._cache.setdefault(g, t)
            self._cache.setdefault(model.invert(g), power(t, -1))

    @property
    def generator_images(self) -> dict[str, Transformation]:
        return dict(zip(self.model.generator_names, self.images))

    def evaluate_word(self, word) -> Transformation:
        out = identity(self.space)
        for gen, exp in word:
            out = compose(out, power(self.images[gen], exp))
        return out

    def check_relators(self) -> None:
        for rel in self.model.relators():
            if not self.evaluate_word(rel).is_identity():
                raise RelatorViolated(format_word(rel))

    def evaluate(self, g) -> Transformation:
        """``T^g``; concurrent callers always see the same value for ``g``."""
        hit = self._cache.get(g)
        if hit is not None:
            return hit
        self.model.check(g)
        value = self.evaluate_word(self.model.word(g))
        with self._lock:
            return self._cache.setdefault(g, value)

    __call__ = evaluate

    def __eq__(self, other) -> bool:
        if not isinstance(other, Action):
            return NotImplemented
        return self.model == other.model and self.images == other.images

    def __hash__(self) -> int:
        return hash((self.model, self.images))

    def __repr__(self) -> str:
        return f"Action({self.model!r}, L={self.space.resolution})"


def make_action(model: GroupModel, generator_images) -> Action:
    return Action(model, generator_images)


def _same_model(t: Action, s: Action) -> None:
    if t.model != s.model:
        raise ModelMismatch(f"{t.model!r} vs {s.model!r}")


def conjugate_action(t: Action, u: Transformation) -> Action:
    """``g -> U^-1 T^g U``."""
    return Action(t.model, [conjugate(x, u) for x in t.images], validate=False)


def product_action_many(actions: Sequence[Action]) -> Action:
    """``g -> T_1^g x ... x T_m^g`` on the ``m``-fold block product space."""
    for a in actions[1:]:
        _same_model(actions[0], a)
    images = [lift_product_many([a.images[i] for a in actions]) for i in range(len(actions[0].images))]
    return Action(actions[0].model, images, validate=False)


def product_action(t: Action, s: Action) -> Action:
    return product_action_many([t, s])


def _shift_action_images(space: DyadicSpace, n: int, rng) -> list[Transformation]:
    """Images of ``(g0, g1)`` for ``H(n)``: ``g0`` rotates ``n`` equal low bit-blocks,
    ``g1`` acts by a random map on the high spare bits and on block 0."""
    L = space.resolution
    b = L // n
    if b == 0:
        raise InvalidParams(f"H({n}) actions need resolution >= {n}, got {L}")
    spare = L - n * b
    cells = np.arange(space.cell_count, dtype=np.int64)
    mask = (1 << b) - 1
    blocks = [(cells >> (b * (n - 1 - p))) & mask for p in range(n)]
    high = cells >> (n * b)
    # g0: block p moves to block p+1 (mod n)
    g0 = high << (n * b)
    for p in range(n):
        g0 = g0 | (blocks[p] << (b * (n - 1 - (p + 1) % n)))
    a = rng.permutation(1 << b)
    c = rng.permutation(1 << spare)
    g1 = (c[high] << (n * b)) | (a[blocks[0]] << (b * (n - 1)))
    for p in range(1, n):
        g1 = g1 | (blocks[p] << (b * (n - 1 - p)))
    return [Transformation(space, g0, check=False), Transformation(space, g1, check=False)]


def random_action(model: GroupModel, space: DyadicSpace, seed) -> Action:
    """Seeded random action of ``model`` on ``space``, conjugated by a random cell map.

    ``Z`` and free groups get independent random maps; ``Zd`` gets powers of
    one random map (so the images commute); ``cyclic(m)`` gets a map whose
    cycle lengths divide ``m``; ``H(n)`` gets a block-shift construction.
    """
    rng = np.random.default_rng(seed)
    kind = model.kind
    if kind in ("Z", "free"):
        images = [random_transformation(space, rng) for _ in model.generator_names]
    elif kind == "Zd":
        base = random_transformation(space, rng)
        images = [power(base, int(rng.integers(0, 8))) for _ in model.generator_names]
    elif kind == "cyclic":
        images = [random_periodic(space, model.params["m"], rng)]
    elif kind == "H":
        u = random_transformation(space, rng)
        images = [conjugate(x, u) for x in _shift_action_images(space, model.params["n"], rng)]
    else:
        raise InvalidParams(f"no random actions for group kind {kind!r}")
    return Action(model, images)
