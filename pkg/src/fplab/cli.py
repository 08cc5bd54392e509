"""
Command-line front end.

Subcommands: ``eval``, ``minimize``, ``sweep``, ``transitions``, ``lemmas``,
``tightness`` and ``families``. Every subcommand accepts ``--seed``,
``--out`` and ``--format``. When ``--out`` is given, a ``<out>.manifest``
file records the command and its parameters.

Exit codes: 0 success, 2 parse error, 3 optimizer failure, 4 bracket error,
5 lemma failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .families import FamilyInstance, FamilyKind, best_alpha, build, classify, closed_form_potential, perp_value
from .lemmas import SUITES, GridSpec, run_lemma_suite
from .optimize import OptimizerFailure, OptimizerSettings, minimize_fp
from .potentials import AngleConfig, DomainError, frame_operator_deviation, frame_potential
from .tables import (
    RunManifest,
    fmt,
    key_value_text,
    sweep_table,
    transitions_text,
    write_text,
)
from .transitions import BracketError, detect_transitions, locate_crossing, sweep

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_OPTIMIZER = 3
EXIT_BRACKET = 4
EXIT_LEMMA = 5

# crossings reported by ``transitions --n 5``
N5_BRACKETS = (
    (FamilyKind.PERP, FamilyKind.Y, 1.7, 1.8),
    (FamilyKind.Y, FamilyKind.Z, 1.778, 1.79),
    (FamilyKind.Z, FamilyKind.HARMONIC, 1.95, 2.05),
)


class UsageError(Exception):
    """Bad command-line input detected after argparse."""


def _float_list(text: str) -> list[float]:
    try:
        vals = [float(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc
    if not vals or not all(math.isfinite(v) for v in vals):
        raise argparse.ArgumentTypeError(f"expected finite numbers, got {text!r}")
    return vals


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _positive(text: str) -> float:
    v = float(text)
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return v


def _bracket(text: str):
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("bracket is KIND_A,KIND_B,P_LO,P_HI")
    try:
        return FamilyKind(parts[0]), FamilyKind(parts[1]), float(parts[2]), float(parts[3])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _settings(args) -> OptimizerSettings:
    return OptimizerSettings(restarts=args.restarts, master_seed=args.seed)


def _emit(args, text: str, params: dict) -> None:
    if args.out is None:
        sys.stdout.write(text)
        return
    manifest = RunManifest(args.command, params, args.seed, __version__, t0=args.t0)
    write_text(args.out, text)
    manifest.write_beside(args.out)


def _params(args, *names) -> dict:
    out = {}
    for k in names:
        v = getattr(args, k)
        out[k] = v.value if isinstance(v, FamilyKind) else v
    out["format"] = args.format
    return out


# --- subcommands -------------------------------------------------------------


def cmd_eval(args) -> int:
    if args.angles is not None:
        cfg = AngleConfig(args.angles)
    elif args.family is not None:
        kind = FamilyKind(args.family)
        try:
            cfg = build(FamilyInstance.of(kind, args.n, args.alpha))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    else:
        raise UsageError("give --angles or --family")
    print(fmt(frame_potential(cfg, args.p)))
    return EXIT_OK


def minimize_record(n: int, p: float, settings: OptimizerSettings) -> dict:
    res = minimize_fp(n, p, settings)
    fam = classify(res.config)
    return {
        "n": n,
        "p": p,
        "master_seed": settings.master_seed,
        "value": res.value,
        "family": fam.kind.value,
        "alpha": fam.alpha,
        "angles": list(res.config.angles),
        "restarts": res.restarts_used,
        "failed_restarts": res.failed_restarts,
        "best_restart_index": res.best_restart_index,
        "converged": res.converged,
    }


def cmd_minimize(args) -> int:
    rec = minimize_record(args.n, args.p, _settings(args))
    if args.format == "json":
        text = json.dumps({k: (fmt(v) if isinstance(v, float) else [fmt(x) for x in v] if isinstance(v, list) else v) for k, v in rec.items()}, indent=1) + "\n"
    else:
        text = key_value_text(rec)
    print(f"n={args.n} p={fmt(args.p)} value={fmt(rec['value'])} family={rec['family']}", file=sys.stderr if args.out is None else sys.stdout)
    _emit(args, text, _params(args, "n", "p", "restarts"))
    return EXIT_OK


def cmd_sweep(args) -> int:
    if not args.p_lo < args.p_hi:
        raise UsageError("need p-lo < p-hi")
    if args.steps < 2:
        raise UsageError("need at least two steps")
    grid = np.linspace(args.p_lo, args.p_hi, args.steps)
    recs = sweep(args.n, grid, _settings(args))
    if all(r.failed for r in recs):
        raise OptimizerFailure("every sweep point failed")
    _emit(args, sweep_table(recs, args.format), _params(args, "n", "p_lo", "p_hi", "steps", "restarts"))
    return EXIT_OK


def cmd_transitions(args) -> int:
    if not args.tol >= 1e-14:
        raise UsageError("tol must be at least 1e-14")
    brackets = args.bracket or (N5_BRACKETS if args.n == 5 and not args.auto else None)
    if brackets:
        reports = [locate_crossing(a, b, lo, hi, args.tol, args.n) for a, b, lo, hi in brackets]
    else:
        if not args.p_lo < args.p_hi or args.step <= 0:
            raise UsageError("need p-lo < p-hi and a positive step")
        count = int(round((args.p_hi - args.p_lo) / args.step)) + 1
        grid = args.p_lo + args.step * np.arange(count)
        reports = detect_transitions(sweep(args.n, grid, _settings(args)))
    fmt_name = "json" if args.format == "json" else "kv"
    params = _params(args, "n", "tol", "auto", "p_lo", "p_hi", "step", "restarts")
    params["bracket"] = [",".join(map(str, b)) for b in (args.bracket or [])] or "default"
    _emit(args, transitions_text(reports, fmt_name), params)
    return EXIT_OK


def cmd_lemmas(args) -> int:
    ids = args.only or list(SUITES)
    unknown = [i for i in ids if i not in SUITES]
    if unknown:
        raise UsageError(f"unknown lemma suites {unknown}; known: {list(SUITES)}")
    if args.p_override is not None:
        grid = GridSpec(args.density, (args.p_override, args.p_override), args.tolerance, 1, enforce_hypotheses=False)
    else:
        grid = GridSpec(args.density, None, args.tolerance)
    lines = ["lemma_id passed worst_margin worst_point"]
    ok = True
    for lid in ids:
        try:
            rep = run_lemma_suite(lid, grid)
            point = ",".join(f"{k}={fmt(v)}" for k, v in rep.worst_point.items())
            passed, margin = rep.passed, rep.worst_margin
        except DomainError as exc:
            passed, margin, point = False, math.nan, f"domain:{exc}".replace(" ", "_")
        ok &= passed
        lines.append(f"{lid} {'pass' if passed else 'FAIL'} {fmt(margin)} {point or '-'}")
    text = "\n".join(lines) + "\n"
    if args.out is not None:
        print(text, end="")
    _emit(args, text, _params(args, "density", "tolerance", "p_override", "only"))
    return EXIT_OK if ok else EXIT_LEMMA


def cmd_tightness(args) -> int:
    if not 0 < args.p < 2:
        raise UsageError("tightness needs 0 < p < 2")
    s = _settings(args)
    rows = []
    for n in args.n:
        res = minimize_fp(n, args.p, s)
        dev = frame_operator_deviation(res.config).deviation
        rows.append((n, dev, dev / n))
    if args.format == "csv":
        text = "N,deviation,ratio\n" + "".join(f"{n},{fmt(d)},{fmt(r)}\n" for n, d, r in rows)
    elif args.format == "json":
        text = json.dumps([{"N": n, "deviation": fmt(d), "ratio": fmt(r)} for n, d, r in rows], indent=1) + "\n"
    else:
        text = "$N$ deviation ratio\n" + "".join(f"{n} {fmt(d)} {fmt(r)}\n" for n, d, r in rows)
    _emit(args, text, _params(args, "p", "n", "restarts"))
    return EXIT_OK


def cmd_families(args) -> int:
    rows = [
        ("perp", args.n, math.nan, perp_value(args.n)),
        ("harmonic", args.n, math.nan, closed_form_potential(FamilyInstance(FamilyKind.HARMONIC, args.n), args.p)),
    ]
    for kind in (FamilyKind.Y, FamilyKind.Z):
        a, v = best_alpha(kind, args.p)
        rows.append((kind.value, 5, a, v))
    rows.append(("e6", 6, math.nan, closed_form_potential(FamilyInstance.of(FamilyKind.E6), args.p)))
    if args.format == "csv":
        text = "family,n,alpha,value\n" + "".join(f"{k},{n},{fmt(a)},{fmt(v)}\n" for k, n, a, v in rows)
    elif args.format == "json":
        text = json.dumps([{"family": k, "n": n, "alpha": fmt(a), "value": fmt(v)} for k, n, a, v in rows], indent=1) + "\n"
    else:
        text = "family n alpha value\n" + "".join(f"{k} {n} {fmt(a)} {fmt(v)}\n" for k, n, a, v in rows)
    _emit(args, text, _params(args, "p", "n"))
    return EXIT_OK


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="master seed for restart streams")
    common.add_argument("--out", default=None, help="output file; a .manifest is written beside it")
    common.add_argument("--format", choices=("dat", "csv", "json"), default="dat")

    parser = argparse.ArgumentParser(prog="fplab", description="p-frame potentials on the circle")
    parser.add_argument("--version", action="version", version=f"fplab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("eval", parents=[common], help="evaluate the potential of one configuration")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--angles", type=_float_list)
    src.add_argument("--family", choices=[k.value for k in FamilyKind if k is not FamilyKind.CUSTOM])
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--alpha", type=float, default=None)
    sp.add_argument("--p", type=_positive, required=True)
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("minimize", parents=[common], help="multi-start minimization")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=_positive, required=True)
    sp.add_argument("--restarts", type=int, default=3000)
    sp.set_defaults(func=cmd_minimize)

    sp = sub.add_parser("sweep", parents=[common], help="minimize over a grid of exponents")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p-lo", type=_positive, required=True)
    sp.add_argument("--p-hi", type=_positive, required=True)
    sp.add_argument("--steps", type=int, required=True)
    sp.add_argument("--restarts", type=int, default=200)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("transitions", parents=[common], help="locate phase transitions")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.add_argument("--auto", action="store_true", help="sweep and detect derivative jumps")
    sp.add_argument("--bracket", type=_bracket, action="append", help="KIND_A,KIND_B,P_LO,P_HI (repeatable)")
    sp.add_argument("--p-lo", type=_positive, default=1.7)
    sp.add_argument("--p-hi", type=_positive, default=4.2)
    sp.add_argument("--step", type=float, default=0.02)
    sp.add_argument("--restarts", type=int, default=100)
    sp.set_defaults(func=cmd_transitions)

    sp = sub.add_parser("lemmas", parents=[common], help="grid-check the lemma inequalities")
    sp.add_argument("--density", type=int, default=1000, help="points per angle axis")
    sp.add_argument("--tolerance", type=_positive, default=1e-12)
    sp.add_argument("--p-override", type=_positive, default=None, help="check every suite at this p only")
    sp.add_argument("--only", action="append", help="suite id (repeatable)")
    sp.set_defaults(func=cmd_lemmas)

    sp = sub.add_parser("tightness", parents=[common], help="frame-operator deviation of minimizers")
    sp.add_argument("--p", type=_positive, required=True)
    sp.add_argument("--n", type=_int_list, required=True)
    sp.add_argument("--restarts", type=int, default=500)
    sp.set_defaults(func=cmd_tightness)

    sp = sub.add_parser("families", parents=[common], help="closed-form family values")
    sp.add_argument("--p", type=_positive, required=True)
    sp.add_argument("--n", type=int, default=5)
    sp.set_defaults(func=cmd_families)
    return parser


def main(argv=None) -> int:
    import time

    parser = build_parser()
    args = parser.parse_args(argv)  # exits with 2 on parse errors
    args.t0 = time.perf_counter()
    try:
        return args.func(args)
    except (UsageError, DomainError, ValueError) as exc:
        if isinstance(exc, BracketError):
            print(f"fplab: bracket error: {exc}", file=sys.stderr)
            return EXIT_BRACKET
        print(f"fplab: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OptimizerFailure as exc:
        print(f"fplab: optimizer failure: {exc}", file=sys.stderr)
        return EXIT_OPTIMIZER


if __name__ == "__main__":
    sys.exit(main())
