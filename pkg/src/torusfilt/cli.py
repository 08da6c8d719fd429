"""Command-line entry point: ``torusfilt flag|toric|verify|job``.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .errors import InputError
from .exactlin import rational
from .flagpipe import FlagInput, flag_report
from .report import Report
from .rootsys import build_root_system
from .toricpipe import SupportPolytope, make_fan, parse_fan, toric_report
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def parse_vector(text: str, field: str) -> tuple:
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if not parts:
        raise InputError(f"{field}: empty vector")
    try:
        return tuple(rational(p) for p in parts)
    except (TypeError, ValueError, ZeroDivisionError):
        raise InputError(f"{field}: expected comma-separated rationals, got {text!r}") from None


def parse_vectors(text: str, field: str) -> tuple:
    return tuple(parse_vector(chunk, field) for chunk in text.split(";") if chunk.strip())


def _gamma(text: Optional[str]):
    if text is None or text == "auto":
        return "auto"
    return parse_vector(text, "--gamma")


def _flag_job(family, rank, s, t=None, lambdas=None, max_degree=None) -> Report:
    rs = build_root_system(str(family), int(rank))
    return flag_report(FlagInput(rs, s, t, lambdas), max_degree)


def _read_fan(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"--fan: cannot read {path}: {exc.strerror}") from None
    return parse_fan(text)


def _toric_job(fan, supports, gamma, max_degree=None) -> Report:
    if not supports:
        raise InputError("--polytope: at least one polytope is required")
    return toric_report(fan, [SupportPolytope(a) for a in supports], gamma, max_degree)


def _run_job_file(path: str) -> tuple:
    """A JSON job: ``{"kind": "flag"|"toric"|"verify", ...}``; returns (report, out path)."""
    try:
        job = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"job file: cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"job file: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    if not isinstance(job, dict):
        raise InputError("job file: top level must be an object")
    kind = job.get("kind")
    out = job.get("out")

    def field(name):
        if name not in job:
            raise InputError(f"job file: missing field {name!r}")
        return job[name]

    def vec(name, value):
        if isinstance(value, str):
            return parse_vector(value, name)
        if not isinstance(value, list):
            raise InputError(f"job file: field {name!r} must be a list or string")
        try:
            return tuple(rational(x) for x in value)
        except (TypeError, ValueError):
            raise InputError(f"job file: field {name!r} must hold integers or 'p/q' strings") from None

    if kind == "flag":
        t = job.get("t")
        lams = job.get("lambdas")
        report = _flag_job(
            field("family"),
            field("rank"),
            vec("s", field("s")),
            None if t is None else vec("t", t),
            None if lams is None else tuple(vec("lambdas", x) for x in lams),
            job.get("max_degree"),
        )
    elif kind == "toric":
        fan_src = field("fan")
        if isinstance(fan_src, dict):
            fan = make_fan(fan_src.get("rays", []), fan_src.get("cones", []))
        else:
            base = Path(path).parent
            fan_path = base / fan_src if not Path(fan_src).is_absolute() else Path(fan_src)
            fan = _read_fan(str(fan_path))
        gamma = job.get("gamma", "auto")
        gamma = gamma if gamma == "auto" else vec("gamma", gamma)
        supports = [vec("polytopes", p) for p in field("polytopes")]
        report = _toric_job(fan, supports, gamma, job.get("max_degree"))
    elif kind == "verify":
        report = run_suite(str(field("suite")))
    else:
        raise InputError(f"job file: field 'kind' must be flag, toric or verify, got {kind!r}")
    return report, out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torusfilt",
        description="Filtrations on torus-fixed point sets, checked against cohomology oracles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON report to this path")
    common.add_argument("--json", action="store_true", help="print the JSON report instead of the summary")

    flag = sub.add_parser("flag", parents=[common], help="flag variety G/B or G/P from a Weyl orbit")
    flag.add_argument("--family", required=True, help="root system family: A, B, C or D")
    flag.add_argument("--rank", required=True, type=int)
    flag.add_argument("--s", required=True, help="comma-separated rationals, e.g. 0,1,3 (use --s=-1,0 for negatives)")
    flag.add_argument("--t", help="regular auxiliary element, required when s is not regular")
    flag.add_argument("--lambdas", help="weights separated by ';', e.g. '1,0,0;0,1,0'")
    flag.add_argument("--max-degree", type=int)

    toric = sub.add_parser("toric", parents=[common], help="smooth complete toric variety from a fan file")
    toric.add_argument("--fan", required=True, help="file with 'ray i: ...' and 'cone: ...' lines")
    toric.add_argument("--polytope", action="append", default=[], help="support numbers per ray; repeatable")
    toric.add_argument("--gamma", default="auto", help="integer vector or 'auto'")
    toric.add_argument("--max-degree", type=int)

    verify = sub.add_parser("verify", parents=[common], help="run a built-in property suite")
    verify.add_argument("suite", choices=SUITES + ("all",))

    job = sub.add_parser("job", parents=[common], help="run a JSON job file")
    job.add_argument("file")
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with status 2
        return EXIT_INPUT if exc.code else EXIT_OK
    out = args.out
    try:
        if args.command == "flag":
            report = _flag_job(
                args.family,
                args.rank,
                parse_vector(args.s, "--s"),
                None if args.t is None else parse_vector(args.t, "--t"),
                None if args.lambdas is None else parse_vectors(args.lambdas, "--lambdas"),
                args.max_degree,
            )
        elif args.command == "toric":
            report = _toric_job(
                _read_fan(args.fan),
                [parse_vector(p, "--polytope") for p in args.polytope],
                _gamma(args.gamma),
                args.max_degree,
            )
        elif args.command == "verify":
            report = run_suite(args.suite)
        else:
            report, job_out = _run_job_file(args.file)
            out = out or job_out
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    text = report.to_json()
    if out:
        Path(out).write_text(text)
    sys.stdout.write(text if args.json else report.summary())
    return EXIT_OK if report.overall else EXIT_FAIL


def main() -> None:
    sys.exit(run())
