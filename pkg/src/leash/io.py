"""Action files, CLI value parsing and report serialization.

An action file is JSON::

    {"group": {"kind": "Z"}, "resolution": 2, "generators": {"g0": [1, 2, 3, 0]}}

Exact values are written as ``{"num": p, "log2_den": q, "decimal": "..."}``;
the decimal string is advisory and is checked against ``num / 2^q`` on load.
"""
from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any

from .actions import Action
from .dyadic import Dyadic, parse_dyadic
from .errors import LeashError, ParseError
from .groups import GammaSpec, GroupModel, make_group
from .measure import make_space
from .transforms import Transformation

__all__ = [
    "load_action",
    "parse_action",
    "dump_action",
    "action_to_dict",
    "parse_rational",
    "parse_gamma",
    "exact_json",
    "to_jsonable",
    "dumps_report",
    "load_report",
    "check_report_decimals",
]


def _fail(message: str, where: str) -> ParseError:
    return ParseError(message, where)


def parse_action(text: str, source: str = "<string>") -> Action:
    """Build an :class:`Action` from action-file text; relators are validated."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _fail(exc.msg, f"{source}:{exc.lineno}:{exc.colno}") from None
    if not isinstance(data, dict):
        raise _fail("top level must be an object", f"{source}:$")
    for key in ("group", "resolution", "generators"):
        if key not in data:
            raise _fail(f"missing key {key!r}", f"{source}:$")
    group = data["group"]
    if not isinstance(group, dict) or "kind" not in group:
        raise _fail("group must be an object with a 'kind'", f"{source}:$.group")
    params = {k: v for k, v in group.items() if k != "kind"}
    try:
        model = make_group(group["kind"], **params)
    except (LeashError, TypeError) as exc:
        raise _fail(str(exc), f"{source}:$.group") from None
    L = data["resolution"]
    if not isinstance(L, int) or isinstance(L, bool):
        raise _fail("resolution must be an integer", f"{source}:$.resolution")
    try:
        space = make_space(L)
    except LeashError as exc:
        raise _fail(str(exc), f"{source}:$.resolution") from None
    gens = data["generators"]
    if not isinstance(gens, dict):
        raise _fail("generators must be an object", f"{source}:$.generators")
    missing = [g for g in model.generator_names if g not in gens]
    extra = [g for g in gens if g not in model.generator_names]
    if missing or extra:
        raise _fail(f"generator names must be {list(model.generator_names)}", f"{source}:$.generators")
    images = {}
    for name in model.generator_names:
        perm = gens[name]
        where = f"{source}:$.generators.{name}"
        if not isinstance(perm, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in perm):
            raise _fail("permutation must be a list of integers", where)
        try:
            images[name] = Transformation(space, perm)
        except ValueError as exc:
            raise _fail(str(exc), where) from None
    return Action(model, images)


def load_action(path) -> Action:
    """Read an action file; a missing file raises ``FileNotFoundError``."""
    path = Path(path)
    return parse_action(path.read_text(), str(path))


def action_to_dict(action: Action) -> dict:
    group = {"kind": action.model.kind, **action.model.params}
    if action.model.cover_mode != "singletons":
        group["cover_mode"] = action.model.cover_mode
    return {
        "group": group,
        "resolution": action.space.resolution,
        "generators": {name: t.forward.tolist() for name, t in action.generator_images.items()},
    }


def dump_action(action: Action, path=None) -> str:
    text = json.dumps(action_to_dict(action), sort_keys=True) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


def parse_rational(text: str, where: str = "value") -> Dyadic:
    try:
        return parse_dyadic(text)
    except ValueError as exc:
        raise _fail(str(exc), where) from None


_LATTICE = re.compile(r"^\s*(\d*)\s*Z\s*$")


def parse_gamma(text: str, model: GroupModel, where: str = "--gamma") -> GammaSpec:
    """``whole``/``G``, ``mZ`` (inside ``Z``), or ``<x>`` for the cyclic subgroup of ``x``."""
    s = text.strip()
    if s in ("whole", "G"):
        return GammaSpec.whole()
    m = _LATTICE.match(s)
    if m:
        if model.kind != "Z":
            raise _fail(f"{s!r} needs the group Z, not {model.kind}", where)
        step = int(m.group(1) or 1)
        if step < 1:
            raise _fail("lattice step must be >= 1", where)
        return GammaSpec.whole() if step == 1 else GammaSpec.lattice(step)
    if s.startswith("<") and s.endswith(">"):
        try:
            g = model.parse(s[1:-1])
        except (LeashError, ValueError) as exc:
            raise _fail(str(exc), where) from None
        return GammaSpec.cyclic(g)
    raise _fail(f"cannot read Gamma spec {text!r}", where)


def exact_json(value: Dyadic) -> dict:
    return {"num": value.numerator, "log2_den": value.exponent, "decimal": value.decimal()}


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, Dyadic):
        return exact_json(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return obj


def dumps_report(report: dict) -> str:
    return json.dumps(to_jsonable(report), sort_keys=True, indent=2) + "\n"


def check_report_decimals(obj: Any, where: str = "$") -> int:
    """Check every exact value against its decimal rendering; returns how many were checked."""
    count = 0
    if isinstance(obj, dict):
        if set(obj) == {"num", "log2_den", "decimal"}:
            value = Dyadic(obj["num"], obj["log2_den"])
            if value.decimal() != obj["decimal"]:
                raise _fail(f"decimal {obj['decimal']} does not match {value}", where)
            return 1
        for k, v in obj.items():
            count += check_report_decimals(v, f"{where}.{k}")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            count += check_report_decimals(v, f"{where}[{i}]")
    return count


def load_report(text: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _fail(exc.msg, f"{exc.lineno}:{exc.colno}") from None
    check_report_decimals(data)
    return data

