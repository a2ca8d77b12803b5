"""Command-line front end: ``leash dist|mixing|verify|approx|net``.

Exit codes: 0 success, 1 a verification suite failed, 2 input file not
found, 3 parse error (file contents or arguments, with location),
4 relator violated by an action file, 5 any other rejected input.
"""
from __future__ import annotations

import argparse
import sys
from typing import Callable, Optional, Sequence

from . import __version__
from .actions import Action, make_action
from .approximation import greedy_eps_net, product_approx_witness, rokhlin_experiment
from .distances import leash_distance
from .errors import LeashError, ParseError, RelatorViolated
from .groups import GammaSpec
from .io import dumps_report, load_action, parse_gamma, parse_rational, to_jsonable
from .measure import family_size
from .metrics import metric_a, metric_d
from .mixing import mixing_profile
from .transforms import identity
from .verify import SUITE_NAMES, run_suites

__all__ = ["main", "build_parser", "EXIT_OK", "EXIT_SUITE_FAILED", "EXIT_FILE_NOT_FOUND",
           "EXIT_PARSE_ERROR", "EXIT_RELATOR_VIOLATED", "EXIT_INVALID"]

EXIT_OK = 0
EXIT_SUITE_FAILED = 1
EXIT_FILE_NOT_FOUND = 2
EXIT_PARSE_ERROR = 3
EXIT_RELATOR_VIOLATED = 4
EXIT_INVALID = 5

DEFAULT_RADIUS = 8
DIST_METRICS = ("m", "w", "s", "d_G", "a_G", "d", "a")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message, "arguments")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--metric", default="m", help=f"one of {', '.join(DIST_METRICS)}")
    common.add_argument("--n", type=int, default=None, help="cover depth (number of K_i)")
    common.add_argument("--k", type=int, default=None, help="family depth (number of intervals)")
    common.add_argument("--gamma", default="whole", help="whole | mZ | <element>")
    common.add_argument("--radius", type=int, default=None, help="truncation radius R")
    common.add_argument("--eps", default=None, help="rational p/2^q or p/q, q a power of two")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("files", nargs="*")

    parser = _Parser(prog="leash", description="Exact leash-metric computations on dyadic permutation actions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("dist", parents=[common], help="distance between two actions")
    mixing = sub.add_parser("mixing", parents=[common], help="mixing profile over norm annuli")
    mixing.add_argument("--annuli", default=None, help="comma list of R1:R2 (default 0:R,R:2R)")
    verify = sub.add_parser("verify", parents=[common], help="run the verification suites")
    verify.add_argument("--suite", action="append", choices=SUITE_NAMES, default=None)
    sub.add_parser("approx", parents=[common], help="product approximation and block-reordering witnesses")
    sub.add_parser("net", parents=[common], help="greedy eps-net of a list of actions")
    return parser


# -- helpers -------------------------------------------------------------------

def _config(args) -> dict:
    cfg = {
        "command": args.command,
        "files": list(args.files),
        "metric": args.metric,
        "n": args.n,
        "k": args.k,
        "gamma": args.gamma,
        "radius": args.radius,
        "eps": None if args.eps is None else parse_rational(args.eps, "--eps"),
        "seed": args.seed,
        "format": args.format,
    }
    if getattr(args, "suite", None):
        cfg["suites"] = list(args.suite)
    if getattr(args, "annuli", None):
        cfg["annuli"] = args.annuli
    return cfg


def _need_files(args, low: int, high: Optional[int] = None) -> list[Action]:
    count = len(args.files)
    if count < low or (high is not None and count > high):
        want = f"{low}" if high == low else f"{low}..{high}" if high else f"at least {low}"
        raise ParseError(f"{args.command} needs {want} action files, got {count}", "arguments")
    return [load_action(f) for f in args.files]


def _trivial_like(t: Action) -> Action:
    return make_action(t.model, [identity(t.space)] * len(t.images))


def _mode(args, model, gamma: GammaSpec) -> dict:
    if args.radius is not None:
        return {"mode": "truncated", "radius": args.radius}
    if gamma.is_cyclic_in(model):
        return {"mode": "exact", "radius": DEFAULT_RADIUS}
    return {"mode": "truncated", "radius": DEFAULT_RADIUS}


def _distance_fn(args, model) -> Callable:
    """``(T, S) -> DistanceReport``-like dict for the configured metric."""
    metric = args.metric
    if metric not in DIST_METRICS:
        raise ParseError(f"unknown metric {metric!r}", "--metric")
    gamma = parse_gamma(args.gamma, model)

    if metric in ("d", "a"):
        def run(t, s):
            per = {}
            for name, x, y in zip(t.model.generator_names, t.images, s.images):
                per[name] = metric_d(x, y, n=args.k) if metric == "d" else metric_a(x, y, n=args.k)
            return {"metric": metric, "value": max(per.values()), "exactness": "exact",
                    "k": args.k, "components": per}
        return run

    mode = _mode(args, model, gamma)

    def run(t, s):
        rep = leash_distance(metric, t, s, gamma, n=args.n, k=args.k, **mode)
        out = {"metric": rep.metric, "value": rep.value, "exactness": rep.exactness,
               "n": rep.n, "k": rep.k, "radius": rep.radius, "period": rep.period,
               "gamma": gamma.describe(model)}
        out["components"] = {k: v for k, v in rep.details.items()}
        return out
    return run


def _same_model(actions: Sequence[Action]) -> None:
    for a in actions[1:]:
        if a.model != actions[0].model or a.space != actions[0].space:
            raise LeashError("all action files must share the group model and resolution")


# -- subcommands -------------------------------------------------------------------

def cmd_dist(args) -> tuple[dict, int]:
    actions = _need_files(args, 1, 2)
    t = actions[0]
    s = actions[1] if len(actions) == 2 else _trivial_like(t)
    _same_model([t, s])
    return _distance_fn(args, t.model)(t, s), EXIT_OK


def _annuli(args) -> list[tuple[int, int]]:
    if getattr(args, "annuli", None):
        out = []
        for part in args.annuli.split(","):
            try:
                a, b = part.split(":")
                out.append((int(a), int(b)))
            except ValueError:
                raise ParseError(f"cannot read annulus {part!r}", "--annuli") from None
        return out
    r = 4 if args.radius is None else args.radius
    return [(0, r), (r, 2 * r)]


def cmd_mixing(args) -> tuple[dict, int]:
    (t,) = _need_files(args, 1, 1)
    gamma = parse_gamma(args.gamma, t.model)
    profiles = []
    for r1, r2 in _annuli(args):
        prof = mixing_profile(t, gamma, args.k, r1, r2)
        profiles.append({
            "annulus": [r1, r2],
            "profile": [{"element": t.model.format(g), "value": v} for g, v in prof.entries],
            "deficiency": prof.deficiency,
        })
    values = [[p["value"] for p in prof["profile"]] for prof in profiles]
    repeats = all(v == values[0] for v in values[1:]) if values else True
    return {"gamma": gamma.describe(t.model), "k": args.k, "annuli": profiles,
            "profiles_repeat": repeats}, EXIT_OK


def cmd_verify(args, d=None, a=None) -> tuple[dict, int]:
    if args.seed is None:
        raise ParseError("verify needs an explicit --seed", "--seed")
    results = run_suites(args.seed, args.suite, d or metric_d, a or metric_a)
    suites = [{"name": r.name, "passed": r.passed, "checks": r.checks, "failures": r.failures,
               "counterexample": r.counterexample, "notes": r.notes} for r in results]
    failed = [r.name for r in results if not r.passed]
    summary = {"suites": len(results), "passed": len(results) - len(failed), "failed": failed}
    return {"suites": suites, "summary": summary}, EXIT_SUITE_FAILED if failed else EXIT_OK


def cmd_approx(args) -> tuple[dict, int]:
    actions = _need_files(args, 2)
    _same_model(actions)
    t, s = actions[0], actions[1]
    L = t.space.resolution
    k = family_size(L) if args.k is None else args.k
    radius = 6 if args.radius is None else args.radius
    witness = product_approx_witness(t, s, k, radius)
    rok = rokhlin_experiment(actions, k, radius)
    return {
        "k": k,
        "radius": radius,
        "product_witness": {
            "entries": [{"element": t.model.format(g), "value": v} for g, v in witness.entries],
            "max": witness.max_value,
            "all_zero": witness.all_zero,
        },
        "rokhlin": {
            "factors": rok.factors,
            "product_resolution": rok.factors * L,
            "reached": rok.reached(),
            "checks": len(rok.entries),
            "all_zero": rok.all_zero,
        },
    }, EXIT_OK


def cmd_net(args) -> tuple[dict, int]:
    actions = _need_files(args, 1)
    _same_model(actions)
    if args.eps is None:
        raise ParseError("net needs --eps", "--eps")
    eps = parse_rational(args.eps, "--eps")
    dist = _distance_fn(args, actions[0].model)
    net = greedy_eps_net(actions, eps, lambda x, y: dist(x, y)["value"])
    return {
        "eps": eps,
        "metric": args.metric,
        "centers": [args.files[i] for i in net.centers],
        "assignment": [{"file": args.files[i], "center": args.files[c], "distance": dv}
                       for i, (c, dv) in enumerate(zip(net.assignment, net.distances))],
    }, EXIT_OK


COMMANDS = {"dist": cmd_dist, "mixing": cmd_mixing, "verify": cmd_verify, "approx": cmd_approx, "net": cmd_net}


# -- rendering ---------------------------------------------------------------------

def _is_exact(obj) -> bool:
    return isinstance(obj, dict) and set(obj) == {"num", "log2_den", "decimal"}


def _scalar(obj) -> Optional[str]:
    if _is_exact(obj):
        return f"{obj['num']}/2^{obj['log2_den']} = {obj['decimal']}"
    if isinstance(obj, (dict, list)):
        if isinstance(obj, list) and all(_scalar(x) is not None and not _is_exact(x) for x in obj):
            return "[" + ", ".join(_scalar(x) for x in obj) + "]"
        return None
    return "null" if obj is None else str(obj).lower() if isinstance(obj, bool) else str(obj)


def _text_lines(obj, depth: int = 0) -> list[str]:
    pad = "  " * depth
    lines = []
    if isinstance(obj, dict):
        for key in sorted(obj):
            flat = _scalar(obj[key])
            if flat is not None:
                lines.append(f"{pad}{key}: {flat}")
            else:
                lines.append(f"{pad}{key}:")
                lines.extend(_text_lines(obj[key], depth + 1))
    else:
        for item in obj:
            flat = _scalar(item)
            if flat is not None:
                lines.append(f"{pad}- {flat}")
            else:
                lines.append(f"{pad}-")
                lines.extend(_text_lines(item, depth + 1))
    return lines


def render(report: dict, fmt: str) -> str:
    if fmt == "text":
        return "\n".join(_text_lines(to_jsonable(report))) + "\n"
    return dumps_report(report)


def main(argv: Optional[Sequence[str]] = None, *, d=None, a=None, stdout=None, stderr=None) -> int:
    """Run the CLI; ``d`` and ``a`` replace the metrics used by ``verify`` (mutation testing)."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        config = _config(args)
        if args.command == "verify":
            results, code = cmd_verify(args, d, a)
        else:
            results, code = COMMANDS[args.command](args)
    except FileNotFoundError as exc:
        print(f"leash: file not found: {exc.filename}", file=stderr)
        return EXIT_FILE_NOT_FOUND
    except ParseError as exc:
        print(f"leash: parse error: {exc}", file=stderr)
        return EXIT_PARSE_ERROR
    except RelatorViolated as exc:
        print(f"leash: {exc}", file=stderr)
        return EXIT_RELATOR_VIOLATED
    except (LeashError, ValueError) as exc:
        print(f"leash: {exc}", file=stderr)
        return EXIT_INVALID
    report = {"tool": "leash", "version": __version__, "config": config, "results": results,
              "exit_code": code}
    stdout.write(render(report, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
