"""Command-line driver.

Exit codes: 0 when every executed applicable check passed, 1 on any check
failure, 2 on usage or parameter errors.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from typing import Iterator, Sequence

from .checks import run_all, select_checks
from .fields import Field, PrimeField, parse_field
from .params import (
    AssumptionViolation,
    QRacahParams,
    SamplingExhausted,
    cyclic_shift,
    invert_huang_data,
    sample_stream,
    swap_ab,
    validate_params,
)
from .report import VerificationReport, emit_report
from .triple import Basis, build_triple

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # report through run_cli instead of exiting
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="qracah", description="Build q-Racah Leonard triples and verify their identities exactly.")
    ap.add_argument("--field", default="rational", help="'rational' or 'fp:<p>' (default: rational)")
    for name in ("q", "a", "b", "c"):
        ap.add_argument(f"--{name}", help=f"field literal for {name} ('n', 'n/m', or a residue)")
    ap.add_argument("--d", type=int, help="diameter (dimension minus one)")
    ap.add_argument("--basis", choices=["first", "second", "both"], default="first")
    ap.add_argument("--mode", choices=["verify", "sweep", "sample"], default="verify")
    ap.add_argument("--checks", metavar="GLOB", help="only run checks whose id matches GLOB")
    ap.add_argument("--format", choices=["text", "json"], default="text")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=1)
    ap.add_argument("--out", help="write the report here instead of stdout")
    return ap


def _bases(choice: str) -> list[Basis]:
    return [Basis.FIRST, Basis.SECOND] if choice == "both" else [Basis(choice)]


def _explicit_params(args, field: Field) -> QRacahParams:
    missing = [n for n in ("q", "a", "b", "c", "d") if getattr(args, n) is None]
    if missing:
        raise UsageError(f"verify mode needs --{', --'.join(missing)}")
    try:
        q, a, b, c = (field.parse(getattr(args, n)) for n in ("q", "a", "b", "c"))
    except ZeroDivisionError as exc:
        raise UsageError(f"malformed literal: {exc}") from None
    return validate_params(q, a, b, c, args.d)


def _variants(p: QRacahParams) -> Iterator[QRacahParams]:
    """The sample itself, its cyclic and swapped relabelings, each under all 8 inversions."""
    for base in (p, cyclic_shift(p), swap_ab(p)):
        for k in range(4):
            for flips in itertools.combinations("abc", k):
                yield invert_huang_data(base, flips)


def _param_stream(args, field: Field) -> Iterator[QRacahParams]:
    if args.mode == "verify":
        yield _explicit_params(args, field)
        return
    if not isinstance(field, PrimeField):
        raise UsageError(f"{args.mode} mode needs a prime field")
    if args.d is None:
        raise UsageError(f"{args.mode} mode needs --d")
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    for p in sample_stream(field, args.d, args.seed, args.trials):
        if args.mode == "sweep":
            yield from _variants(p)
        else:
            yield p


def _reports(args, field: Field) -> list[VerificationReport]:
    checks = select_checks(args.checks)
    if not checks:
        raise UsageError(f"no check id matches {args.checks!r}")
    return [
        run_all(build_triple(p, basis), checks)
        for p in _param_stream(args, field)
        for basis in _bases(args.basis)
    ]


def _render(reports: list[VerificationReport], fmt: str, single: bool) -> str:
    if fmt == "json":
        if single:
            return emit_report(reports[0], "json")
        return json.dumps([r.to_dict() for r in reports], indent=2) + "\n"
    return "\n".join(emit_report(r, "text") for r in reports)


def run_cli(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.d is not None and args.d < 0:
            raise UsageError("--d must be nonnegative")
        field = parse_field(args.field)
        reports = _reports(args, field)
    except (UsageError, AssumptionViolation, SamplingExhausted, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    single = args.mode == "verify" and len(reports) == 1
    text = _render(reports, args.format, single)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


def main() -> None:
    sys.exit(run_cli())
