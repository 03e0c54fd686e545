"""
Command-line entry point: ``stacksort <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 size guard hit.
A config file of ``key=value`` lines (keys: seed, workers, format,
max_exhaustive_n) supplies defaults; command-line flags win.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .analytic_bounds import bounds_table
from .core_perm import SizeGuardError, format_perm, normalize, parse_perm
from .fertility import (
    FertilityCache, exact_depth_average, fertility, preimages_brute, wt_table,
)
from .montecarlo import estimate
from .partition_dynamics import ballot_lower_bound, ballot_probability, run_dynamics
from .reporting import DEFAULT_MAX_N, PROPERTIES, emit, run_verify
from .sorting_maps import MAP_KINDS, apply_map, depth_under, sd_prime
from .weak_order import leq_left, leq_right

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3

_STAT_NAMES = {
    "sd": "sd", "sdprime": "sd_prime", "pop": "pop_depth",
    "revstack": "revstack_depth", "maxblock": "max_block",
}


class UsageError(Exception):
    pass


def read_config(path: Optional[str]) -> dict[str, str]:
    if path is None:
        return {}
    out = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in {"seed", "workers", "format", "max_exhaustive_n"}:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = value
    return out


def _perm_arg(tokens: Sequence[str]):
    try:
        return parse_perm(" ".join(tokens))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    # SUPPRESS keeps a subcommand from overwriting a global flag given before it
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--format", choices=["json", "csv", "table"])
    common.add_argument("--seed", type=int)
    common.add_argument("--workers", type=int)
    common.add_argument("--config", help="key=value defaults file")

    parser = argparse.ArgumentParser(
        prog="stacksort", parents=[common],
        description="Exact and statistical analysis of the stack-sorting map.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sort", parents=[common], help="apply s, revstack or Pop")
    p.add_argument("--map", choices=MAP_KINDS, default="s")
    p.add_argument("--iterations", type=int, default=1)
    p.add_argument("perm", nargs="+")

    p = sub.add_parser("depth", parents=[common], help="iterations needed to sort")
    p.add_argument("--map", choices=MAP_KINDS, default="s")
    p.add_argument("--prime", action="store_true", help="compute sd' (sentinel 0) instead")
    p.add_argument("perm", nargs="+")

    p = sub.add_parser("fertility", parents=[common], help="number of preimages under s")
    p.add_argument("--cache", default=None, help="binary sidecar file to load and update")
    p.add_argument("perm", nargs="+")

    p = sub.add_parser("preimages", parents=[common], help="list preimages under s")
    p.add_argument("perm", nargs="+")

    p = sub.add_parser("enumerate", parents=[common], help="W_t(n), D_n or D'_n tables")
    p.add_argument("--what", choices=["wt", "dn", "dnprime"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, default=None)

    p = sub.add_parser("dynamics", parents=[common], help="partition dynamics trace as JSON")
    p.add_argument("perm", nargs="+")

    p = sub.add_parser("order", parents=[common], help="compare in a weak order")
    p.add_argument("--kind", choices=["left", "right"], required=True)
    p.add_argument("first")
    p.add_argument("second")

    p = sub.add_parser("ballot", parents=[common], help="exact quarantine probability")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--iprev", type=int, required=True)
    p.add_argument("--im", type=int, required=True)

    p = sub.add_parser("estimate", parents=[common], help="Monte Carlo depth statistics")
    p.add_argument("--stat", choices=sorted(_STAT_NAMES), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--timing", action="store_true",
                   help="include wall_time_s (otherwise null, keeping output reproducible)")

    sub.add_parser("bounds", parents=[common], help="numerical constants")

    p = sub.add_parser("verify", parents=[common], help="run registered property sweeps")
    p.add_argument("--property", choices=sorted(PROPERTIES) + ["all"], required=True)
    p.add_argument("--max-n", type=int, default=None)
    return parser


def _check_guard(n: int, settings: dict) -> None:
    limit = settings.get("max_exhaustive_n")
    if limit is not None and n > int(limit):
        raise SizeGuardError(f"n = {n} exceeds configured max_exhaustive_n = {limit}")


def _run(args: argparse.Namespace, out) -> int:
    settings = read_config(getattr(args, "config", None))
    seed = int(getattr(args, "seed", settings.get("seed", 0)))
    workers = int(getattr(args, "workers", settings.get("workers", 1)))
    fmt = getattr(args, "format", settings.get("format"))
    if fmt not in (None, "json", "csv", "table"):
        raise UsageError(f"unknown format {fmt!r}")
    if workers < 1:
        raise UsageError("workers must be at least 1")

    cmd = args.command
    if cmd == "sort":
        if args.iterations < 0:
            raise UsageError("--iterations must be nonnegative")
        print(format_perm(apply_map(args.map, _perm_arg(args.perm), args.iterations)), file=out)
    elif cmd == "depth":
        p = _perm_arg(args.perm)
        if args.prime:
            if args.map != "s":
                raise UsageError("--prime is only defined for --map s")
            print(sd_prime(p), file=out)
        else:
            print(depth_under(args.map, p), file=out)
    elif cmd == "fertility":
        cache = FertilityCache.load(args.cache) if args.cache and Path(args.cache).exists() \
            else FertilityCache()
        print(fertility(_perm_arg(args.perm), cache), file=out)
        if args.cache:
            cache.save(args.cache)
    elif cmd == "preimages":
        p = _perm_arg(args.perm)
        _check_guard(len(p), settings)
        for q in sorted(preimages_brute(normalize(p), workers=workers)):
            print(format_perm(q), file=out)
    elif cmd == "enumerate":
        _check_guard(args.n, settings)
        if args.what == "wt":
            rows = wt_table(args.n, workers=workers)
            if args.t is not None:
                rows = [c for c in rows if c.t == args.t]
                if not rows:
                    raise UsageError(f"t must lie in [0, {max(args.n - 1, 0)}]")
            print(emit(rows, fmt or "csv"), file=out)
        else:
            value = exact_depth_average(args.n, prime=args.what == "dnprime", workers=workers)
            print("n,t,value", file=out)
            print(f"{args.n},,{value}", file=out)
    elif cmd == "dynamics":
        print(emit(run_dynamics(_perm_arg(args.perm)), fmt or "json"), file=out)
    elif cmd == "order":
        first, second = parse_perm(args.first), parse_perm(args.second)
        leq = leq_left if args.kind == "left" else leq_right
        sym = "L" if args.kind == "left" else "R"
        a, b = leq(first, second), leq(second, first)
        rel = {(True, True): "=", (True, False): f"<={sym}",
               (False, True): f">={sym}", (False, False): "incomparable"}[(a, b)]
        print(f"{format_perm(first)} {rel} {format_perm(second)}"
              if rel != "incomparable" else f"{format_perm(first)} incomparable with "
              f"{format_perm(second)} ({args.kind} weak order)", file=out)
    elif cmd == "ballot":
        exact = ballot_probability(args.n, args.iprev, args.im)
        bound = ballot_lower_bound(args.n, args.iprev, args.im)
        report = {"n": args.n, "i_prev": args.iprev, "i_m": args.im,
                  "probability": str(exact), "probability_float": float(exact),
                  "lower_bound": str(bound), "lower_bound_float": float(bound)}
        print(emit(report, fmt or "json"), file=out)
    elif cmd == "estimate":
        report = estimate(_STAT_NAMES[args.stat], args.n, args.samples, seed, workers)
        print(emit(report, fmt or "json", timing=args.timing), file=out)
    elif cmd == "bounds":
        print(emit(bounds_table(), fmt or "csv"), file=out)
    elif cmd == "verify":
        ids = sorted(PROPERTIES) if args.property == "all" else [args.property]
        ok = True
        for pid in ids:
            max_n = args.max_n if args.max_n is not None else DEFAULT_MAX_N[pid]
            _check_guard(max_n, settings)
            result = run_verify(pid, max_n)
            ok &= result.passed
            print(emit(result, fmt or "table"), file=out)
        return EXIT_OK if ok else EXIT_FAIL
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _run(args, out)
    except SizeGuardError as exc:
        print(f"stacksort: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (UsageError, ValueError, KeyError) as exc:
        print(f"stacksort: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
