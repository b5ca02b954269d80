"""Command-line front end: ``verify``, ``classify``, ``sweep`` and ``dump``.

Exit codes: 0 success, 1 verification failure, 2 usage/config/I-O error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import List, Sequence

from . import __version__
from .cahen_wallach import CWParams
from .moduli import ModuliPoint, classify, grid_points, rational_range, sweep
from .scalars import parse_rational
from .serialize import (
    SCHEMA,
    dump_document,
    dumps,
    jsonl,
    params_to_json,
    record_to_json,
    record_to_tsv,
    record_tsv_header,
)
from .verification import DEFAULT_TOL, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# default point in flag order (alpha_-, alpha_+', alpha_+, alpha_-'); it has alpha_+ = -3 alpha_+'
DEFAULT_PARAMS = tuple(Fraction(k, 7) for k in (2, 1, -3, 5))
SWEEP_ALPHA_MINUS = Fraction(1, 2)


class ConfigError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _grid_axis(text: str) -> List[Fraction]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"grid axis must be min:max:denominator, got {text!r}")
    try:
        lo, hi = parse_rational(parts[0]), parse_rational(parts[1])
        den = int(parts[2])
        return rational_range(lo, hi, den)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad grid axis {text!r}: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alpha-minus", type=_fraction, default=None)
    common.add_argument("--alpha-plus-prime", type=_fraction, default=None)
    common.add_argument("--alpha-plus", type=_fraction, default=None)
    common.add_argument("--alpha-minus-prime", type=_fraction, default=None)
    common.add_argument("--out", default=None, help="output path (default: stdout)")
    common.add_argument("--format", choices=("json", "tsv"), default="json")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="relative tolerance of float spot checks")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="cwsusy", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"cwsusy {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("verify", parents=[common], help="run the invariant suite at one point")
    sub.add_parser("classify", parents=[common], help="classify one point")
    sw = sub.add_parser("sweep", parents=[common], help="classify a rational grid")
    sw.add_argument("--grid", type=_grid_axis, action="append", default=None,
                    help="min:max:denominator, once for all axes or three times for (a+', a+, a-')")
    sw.add_argument("--workers", type=int, default=1)
    sw.add_argument("--plot-data", default=None, help="also write ball coordinates and strata as TSV")
    sub.add_parser("dump", parents=[common], help="export structure constants as JSON")
    return parser


def _params(args, defaults=DEFAULT_PARAMS) -> CWParams:
    given = (args.alpha_minus, args.alpha_plus_prime, args.alpha_plus, args.alpha_minus_prime)
    vals = tuple(d if g is None else g for g, d in zip(given, defaults))
    return CWParams.from_tuple(vals)


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise ConfigError(f"cannot write {path}: {exc}") from None


# ---------------------------------------------------------------------------
# commands


def cmd_verify(args) -> int:
    p = _params(args)
    results = run_suite(p, seed=args.seed, tol=args.tol)
    ok = all(r.ok for r in results)
    if args.format == "json":
        doc = {
            "schema": SCHEMA,
            "command": "verify",
            "parameters": params_to_json(p),
            "seed": args.seed,
            "tol": args.tol,
            "passed": ok,
            "checks": [
                {"name": r.name, "status": "PASS" if r.passed else "FAIL",
                 "expected": "PASS" if r.expected else "FAIL", "ok": r.ok,
                 "mode": r.mode, "detail": r.detail}
                for r in results
            ],
        }
        text = dumps(doc) + "\n"
    else:
        lines = ["name\tstatus\texpected\tmode\tdetail"]
        lines += [f"{r.name}\t{'PASS' if r.passed else 'FAIL'}\t{'PASS' if r.expected else 'FAIL'}\t{r.mode}\t{r.detail}"
                  for r in results]
        text = "\n".join(lines) + "\n"
    _write(args.out, text)
    # human summary goes to stderr when the report itself is on stdout
    log = sys.stderr if args.out in (None, "-") else sys.stdout
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        note = "" if r.expected else " (expected-negative)"
        print(f"{status} {r.name} [{r.mode}]{note}: {r.detail}", file=log)
    print(f"verify {p}: {'OK' if ok else 'FAILED'}", file=log)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_classify(args) -> int:
    rec = classify(ModuliPoint.from_params(_params(args)))
    if args.format == "json":
        text = dumps(record_to_json(rec)) + "\n"
    else:
        text = record_tsv_header() + "\n" + record_to_tsv(rec) + "\n"
    _write(args.out, text)
    return EXIT_OK


def _axes(args) -> List[List[Fraction]]:
    grid = args.grid or [rational_range(-1, 1, 10)]
    if len(grid) == 1:
        return grid * 3
    if len(grid) == 3:
        return grid
    raise ConfigError("--grid must be given once or three times")


def locus_violations(records) -> List[int]:
    """Indices where susy disagrees with the locus prediction: susy must
    imply alpha_+ = -3 alpha_+', with equality on indecomposable points."""
    bad = []
    for k, rec in enumerate(records):
        p = rec.point
        on = p.alpha_plus == -3 * p.alpha_plus_prime
        if (rec.susy and not on) or (rec.indecomposable and on and not rec.susy):
            bad.append(k)
    return bad


def plot_data(records) -> str:
    lines = ["x_alpha_plus_prime\ty_alpha_plus\tz_alpha_minus_prime\tsusy\tindecomposable\tzero_count\ttags"]
    for rec in records:
        try:
            x, y, z = rec.point.ball_coordinates()
        except ValueError:
            continue
        lines.append(f"{x:.12f}\t{y:.12f}\t{z:.12f}\t{int(rec.susy)}\t{int(rec.indecomposable)}"
                     f"\t{rec.zero_count}\t{','.join(rec.tags)}")
    return "\n".join(lines) + "\n"


def cmd_sweep(args) -> int:
    am = SWEEP_ALPHA_MINUS if args.alpha_minus is None else args.alpha_minus
    points = grid_points(_axes(args), alpha_minus=am)
    if args.workers < 1:
        raise ConfigError("--workers must be positive")
    records = sweep(points, workers=args.workers)
    if args.format == "json":
        text = jsonl(record_to_json(r) for r in records)
    else:
        text = record_tsv_header() + "\n" + "".join(record_to_tsv(r) + "\n" for r in records) if records else ""
    _write(args.out, text)
    if args.plot_data:
        _write(args.plot_data, plot_data(records))
    bad = locus_violations(records)
    for k in bad:
        print(f"locus violation at {records[k].point}", file=sys.stderr)
    return EXIT_FAIL if bad else EXIT_OK


def cmd_dump(args) -> int:
    _write(args.out, dumps(dump_document(_params(args))) + "\n")
    return EXIT_OK


COMMANDS = {"verify": cmd_verify, "classify": cmd_classify, "sweep": cmd_sweep, "dump": cmd_dump}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"cwsusy: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
