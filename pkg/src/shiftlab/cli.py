"""Command-line front end.

Subcommands take JSON spec files (rationals as "num/den" strings), run the
exact machinery, and emit either a human-readable report or, with --json, a
deterministic JSON document: sorted keys, two-space indent, no volatile
fields, so identical inputs give byte-identical output.

Exit codes: 0 when the requested property holds or a verdict was computed,
1 when a checked property fails (the witness is in the report), 2 for input
errors (malformed JSON, bad rationals, unknown models) with the offending
position named.

Decimal renderings honor SHIFTLAB_PRECISION (significant digits, default
12, round-half-even).  They decorate reports only; no verdict ever reads
one.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .exactnum import ExactInputError, decimal_string, format_rational
from .measures import MeasureError
from .sfc import SFCError, classify, params_from_json, scan_region
from .shift1d import ShiftError, hankel_psd, weights_from_json
from .shift2d import (
    GridError,
    ShiftGrid2D,
    grid_from_json,
    joint_hyponormal_window,
    six_point_data,
)

INPUT_ERRORS = (ExactInputError, MeasureError, ShiftError, GridError, SFCError)


class CliInputError(ValueError):
    pass


def _digits() -> int:
    raw = os.environ.get("SHIFTLAB_PRECISION", "12")
    try:
        digits = int(raw)
    except ValueError:
        raise CliInputError(f"SHIFTLAB_PRECISION: expected an integer, got {raw!r}")
    if digits < 1:
        raise CliInputError(f"SHIFTLAB_PRECISION: need at least 1 digit, got {digits}")
    return digits


def _load_json(path: str) -> object:
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise CliInputError(f"{path}: {exc.strerror or exc}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliInputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}")


def _emit(args, doc: dict, human: list[str]) -> None:
    if getattr(args, "json", False):
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        text = "\n".join(human) + "\n"
    _write_out(getattr(args, "out", None), text)


def _write_out(out: str | None, text: str) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _rat_dec(value: Fraction, digits: int) -> dict:
    return {"rat": format_rational(value), "dec": decimal_string(value, digits)}


def _window_1d(args) -> int:
    window = args.window
    if window is None or len(window) != 1:
        raise CliInputError("this subcommand takes --window M (one value)")
    if window[0] < 1:
        raise CliInputError(f"--window must be at least 1, got {window[0]}")
    return window[0]


def _window_2d(args) -> tuple[int, int]:
    window = args.window
    if window is None or len(window) != 2:
        raise CliInputError("this subcommand takes --window M N (two values)")
    if min(window) < 1:
        raise CliInputError(f"--window values must be at least 1, got {window}")
    return window[0], window[1]


# ---------------------------------------------------------------------------
# subcommands


def _cmd_moments(args) -> int:
    digits = _digits()
    w = weights_from_json(_load_json(args.spec), args.spec)
    up_to = _window_1d(args) if args.window is not None else 10
    gammas = w.gamma(up_to)
    doc = {
        "command": "moments",
        "window": up_to,
        "gamma": [_rat_dec(g, digits) for g in gammas],
    }
    human = [f"moments of {args.spec} through order {up_to}:"]
    for k, g in enumerate(gammas):
        human.append(f"  gamma[{k:3d}] = {format_rational(g):>16s}  ~ {decimal_string(g, digits)}")
    _emit(args, doc, human)
    return 0


def _cmd_check_hypo(args) -> int:
    window = _window_1d(args)
    w = weights_from_json(_load_json(args.spec), args.spec)
    witness = None
    for k in range(window):
        if w.weight_sq(k + 1) < w.weight_sq(k):
            witness = k
            break
    doc = {
        "command": "check-hypo",
        "window": window,
        "verdict": witness is None,
        "witness": witness,
    }
    if witness is None:
        human = [f"hyponormal on window {window}: PASS"]
    else:
        human = [
            f"hyponormal on window {window}: FAIL",
            f"  weights decrease between positions {witness} and {witness + 1}",
        ]
    _emit(args, doc, human)
    return 0 if witness is None else 1


def _cmd_check_khypo(args) -> int:
    window = _window_1d(args)
    order = args.k
    if not 1 <= order <= 6:
        raise CliInputError(f"--k must be in 1..6, got {order}")
    w = weights_from_json(_load_json(args.spec), args.spec)
    witness = None
    for base in range(window + 1):
        if not hankel_psd(w, order, base):
            witness = base
            break
    doc = {
        "command": "check-khypo",
        "order": order,
        "window": window,
        "verdict": witness is None,
        "witness": witness,
    }
    if witness is None:
        human = [f"{order}-hyponormal on window {window}: PASS"]
    else:
        human = [
            f"{order}-hyponormal on window {window}: FAIL",
            f"  moment matrix of order {order} based at {witness} is not PSD",
        ]
    _emit(args, doc, human)
    return 0 if witness is None else 1


def _grid_from_path(path: str) -> ShiftGrid2D:
    return grid_from_json(_load_json(path), path)


def _cmd_sixpoint(args) -> int:
    digits = _digits()
    m, n = _window_2d(args)
    grid = _grid_from_path(args.spec)
    entries = []
    failures = []
    for k2 in range(n + 1):
        for k1 in range(m + 1):
            data = six_point_data(grid, (k1, k2))
            entries.append(
                {
                    "k": [k1, k2],
                    "a1": _rat_dec(data.a1, digits),
                    "a2": _rat_dec(data.a2, digits),
                    "p": _rat_dec(data.p, digits),
                    "q": _rat_dec(data.q, digits),
                    "ok": data.ok,
                }
            )
            if not data.ok:
                failures.append((k1, k2))
    verdict = not failures
    doc = {
        "command": "sixpoint",
        "window": [m, n],
        "verdict": verdict,
        "entries": entries,
    }
    human = [f"six-point test on [0,{m}] x [0,{n}]: {'PASS' if verdict else 'FAIL'}"]
    if failures:
        human.append(f"  failing indices: {', '.join(str(k) for k in failures)}")
    _emit(args, doc, human)
    return 0 if verdict else 1


def _cmd_joint(args) -> int:
    digits = _digits()
    m, n = _window_2d(args)
    grid = _grid_from_path(args.spec)
    report = joint_hyponormal_window(grid, m, n)
    doc = {"command": "joint", "report": report.to_json_obj()}
    human = [f"joint hyponormality on [0,{m}] x [0,{n}]: {'PASS' if report.verdict else 'FAIL'}"]
    if report.witness is not None:
        k, tag = report.witness
        data = six_point_data(grid, k)
        human.append(f"  witness {k} ({tag}):")
        for label, value in (("a1", data.a1), ("a2", data.a2), ("p", data.p), ("q", data.q)):
            human.append(
                f"    {label} = {format_rational(value)} ~ {decimal_string(value, digits)}"
            )
    _emit(args, doc, human)
    return 0 if report.verdict else 1


def _cmd_classify_sfc(args) -> int:
    digits = _digits()
    params = params_from_json(_load_json(args.spec), args.spec)
    result = classify(params)
    doc = {
        "command": "classify-sfc",
        "verdict": result.verdict,
        "y0_sq": _rat_dec(params.y0_sq, digits),
        "h_sq": _rat_dec(result.h_sq, digits),
        "s_sq": _rat_dec(result.s_sq, digits),
    }
    human = [
        f"classification: {result.verdict}",
        f"  y0_sq = {format_rational(params.y0_sq)} ~ {decimal_string(params.y0_sq, digits)}",
        f"  h_sq  = {format_rational(result.h_sq)} ~ {decimal_string(result.h_sq, digits)}",
        f"  s_sq  = {format_rational(result.s_sq)} ~ {decimal_string(result.s_sq, digits)}",
    ]
    _emit(args, doc, human)
    return 0


def scan_csv_text(rows, digits: int) -> str:
    lines = ["a_sq,h_sq,s_sq,h_dec,s_dec,gap_dec"]
    for row in rows:
        lines.append(
            ",".join(
                [
                    format_rational(row.a_sq),
                    format_rational(row.h_sq),
                    format_rational(row.s_sq),
                    decimal_string(row.h_sq, digits),
                    decimal_string(row.s_sq, digits),
                    decimal_string(row.gap_sq, digits),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def _cmd_scan(args) -> int:
    digits = _digits()
    if args.lo is None or args.hi is None:
        raise CliInputError("scan needs --lo and --hi")
    lo = _parse_cli_rational(args.lo, "--lo")
    hi = _parse_cli_rational(args.hi, "--hi")
    if args.steps < 2:
        raise CliInputError(f"--steps must be at least 2, got {args.steps}")
    rows = scan_region(lo, hi, args.steps)
    _write_out(args.out, scan_csv_text(rows, digits))
    return 0


def _cmd_verify_paper(args) -> int:
    from .verifysuite import run_all

    results = run_all()
    verdict = all(ok for _, ok in results)
    doc = {
        "command": "verify-paper",
        "verdict": verdict,
        "checks": [{"name": name, "pass": ok} for name, ok in results],
    }
    width = max(len(name) for name, _ in results)
    human = ["verification suite:"]
    for name, ok in results:
        human.append(f"  {name:<{width}s}  {'PASS' if ok else 'FAIL'}")
    human.append(f"{sum(ok for _, ok in results)}/{len(results)} checks passed")
    _emit(args, doc, human)
    return 0 if verdict else 1


def _parse_cli_rational(text: str, flag: str) -> Fraction:
    from .exactnum import parse_rational

    try:
        return parse_rational(text)
    except ValueError as exc:
        raise CliInputError(f"{flag}: {exc}")


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shiftlab",
        description="Exact certificates for weighted-shift positivity and classification.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p, spec=True):
        if spec:
            p.add_argument("spec", help="path to a JSON spec file")
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        p.add_argument("--out", help="write the report to this path instead of stdout")

    p = sub.add_parser("moments", help="moment table of a 1-variable shift")
    add_common(p)
    p.add_argument("--window", type=int, nargs="+", help="highest order to print (default 10)")
    p.set_defaults(fn=_cmd_moments)

    p = sub.add_parser("check-hypo", help="hyponormality of a 1-variable shift")
    add_common(p)
    p.add_argument("--window", type=int, nargs="+", help="window M")
    p.set_defaults(fn=_cmd_check_hypo)

    p = sub.add_parser("check-khypo", help="k-hyponormality of a 1-variable shift")
    add_common(p)
    p.add_argument("--k", type=int, required=True, help="order, 1..6")
    p.add_argument("--window", type=int, nargs="+", help="window M")
    p.set_defaults(fn=_cmd_check_khypo)

    p = sub.add_parser("sixpoint", help="per-index six-point data on a window")
    add_common(p)
    p.add_argument("--window", type=int, nargs="+", help="window M N")
    p.set_defaults(fn=_cmd_sixpoint)

    p = sub.add_parser("joint", help="joint hyponormality of a 2-variable shift on a window")
    add_common(p)
    p.add_argument("--window", type=int, nargs="+", help="window M N")
    p.set_defaults(fn=_cmd_joint)

    p = sub.add_parser("classify-sfc", help="three-way classification of a flat contractive pair")
    add_common(p)
    p.set_defaults(fn=_cmd_classify_sfc)

    p = sub.add_parser("scan", help="threshold scan CSV over an a_sq window")
    p.add_argument("--lo", help="left endpoint (rational)")
    p.add_argument("--hi", help="right endpoint (rational)")
    p.add_argument("--steps", type=int, default=2, help="number of samples, endpoints included")
    p.add_argument("--out", help="write the CSV to this path instead of stdout")
    p.set_defaults(fn=_cmd_scan)

    p = sub.add_parser("verify-paper", help="run the full verification suite")
    add_common(p, spec=False)
    p.set_defaults(fn=_cmd_verify_paper)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CliInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
