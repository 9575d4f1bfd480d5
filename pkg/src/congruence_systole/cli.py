"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 bad input or a cap was hit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields

from . import __version__
from .bounds import (
    DEFAULT_SLACK,
    BoundsConfig,
    arithmetic_asymptote,
    bounds_report,
    prop_log_lower,
    schmutz_upper,
    verify_sandwich,
)
from .congruence_signature import (
    ORACLE_CAP,
    asymptotic_ratio,
    congruence_index,
    is_prime,
    signature_general,
    signature_of_level,
)
from .errors import BoundInapplicableError, ToolkitError
from .systole_search import DEFAULT_LEVEL_CAP, bfs_oracle, min_trace_exact

CSV_HEADER = [
    "level", "genus", "cusps", "index", "min_trace", "systole", "schmutz_upper",
    "gap_to_upper", "prop_log_lower", "arith_asymptote", "ratio72",
]


class VerificationFailure(Exception):
    pass


@dataclass
class TableRow:
    level: int
    genus: int
    cusps: int
    index: int
    min_trace: int
    systole: float
    schmutz_upper: float | None
    gap_to_upper: float | None
    prop_log_lower: float | None
    arithmetic_asymptote: float | None
    ratio_72: float | None


def fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, int):
        return str(value)
    return f"{value:.9g}"


def _json_value(value):
    # round-trip through the CSV text so both formats carry the same numbers
    if value is None or isinstance(value, int):
        return value
    return float(fmt(value))


def parse_levels(text: str) -> tuple[int, int]:
    """``"a..b"`` (inclusive) or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise ToolkitError(f"bad level range {text!r}; expected a..b") from None
    if lo < 2 or hi < lo:
        raise ToolkitError(f"bad level range {text!r}; need 2 <= a <= b")
    return lo, hi


def prime_levels(text: str) -> list[int]:
    lo, hi = parse_levels(text)
    levels = [k for k in range(lo, hi + 1) if is_prime(k)]
    if not levels:
        raise ToolkitError(f"no prime levels in {text!r}")
    return levels


def _levels_arg(args) -> str:
    if (args.level is None) == (args.levels is None):
        raise ToolkitError("give exactly one of --level and --levels")
    return str(args.level) if args.level is not None else args.levels


def table_row(p: int, U: float, trace_cap: int | None = None) -> TableRow:
    sig = signature_of_level(p)
    g, n = sig.as_tuple()
    res = min_trace_exact(p, trace_cap=trace_cap)
    try:
        upper = schmutz_upper(g, n)
    except BoundInapplicableError:
        upper = None
    cfg = BoundsConfig(U)
    return TableRow(
        level=p,
        genus=g,
        cusps=n,
        index=p * n,
        min_trace=res.min_trace,
        systole=res.length,
        schmutz_upper=upper,
        gap_to_upper=None if upper is None else upper - res.length,
        prop_log_lower=prop_log_lower(g, n, cfg) if g >= 2 else None,
        arithmetic_asymptote=arithmetic_asymptote(g, n) if g >= 1 else None,
        ratio_72=asymptotic_ratio(p) if p > 2 and g >= 1 else None,
    )


def _table_row_star(args):
    return table_row(*args)


def build_table(levels: list[int], U: float, trace_cap=None, jobs: int = 1) -> list[TableRow]:
    work = [(p, U, trace_cap) for p in levels]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_table_row_star, work))
    else:
        rows = [table_row(*w) for w in work]
    return sorted(rows, key=lambda r: r.level)


def render_csv(rows: list[TableRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow([fmt(getattr(row, f.name)) for f in fields(TableRow)])
    return buf.getvalue()


def render_json(rows: list[TableRow], config: dict) -> str:
    doc = {
        "config": config,
        "rows": [{k: _json_value(v) for k, v in asdict(row).items()} for row in rows],
    }
    return json.dumps(doc, indent=2) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def cmd_signature(args) -> int:
    lo, hi = parse_levels(_levels_arg(args))
    for k in range(lo, hi + 1):
        sig = signature_of_level(k)
        index = 6 if k == 2 else k * sig.cusps
        route = "closed form" if k != 2 and is_prime(k) else "oracle"
        line = f"level {k}: (g, n) = ({sig.genus}, {sig.cusps}), index {index} [{route}]"
        if args.oracle_check and route == "closed form":
            if k > ORACLE_CAP:
                line += " [oracle check skipped: level above cap]"
            else:
                other = signature_general(k)
                if other != sig:
                    raise VerificationFailure(f"level {k}: closed form {sig.as_tuple()} != oracle {other.as_tuple()}")
                line += " [oracle agrees]"
        print(line)
    return 0


def cmd_systole(args) -> int:
    levels = prime_levels(_levels_arg(args))
    status = 0
    for p in levels:
        res = min_trace_exact(p, trace_cap=args.trace_cap)
        w = res.witness
        sig = signature_of_level(p)
        print(f"level {p}")
        print(f"  signature (g, n) = ({sig.genus}, {sig.cusps})")
        print(f"  min_trace {res.min_trace}")
        print(f"  witness ({w.a}, {w.b}, {w.c}, {w.d}) sign {w.sign:+d}")
        print(f"  length {fmt(res.length)}")
        print(f"  certificate {res.certificate.summary()}")
        if args.max_word_len is not None:
            found = bfs_oracle(p, args.max_word_len)
            if found is None:
                print(f"  bfs_oracle depth {args.max_word_len}: none found")
            else:
                ok = found >= res.min_trace
                status = status or (0 if ok else 1)
                verdict = "equal" if found == res.min_trace else ("above" if ok else "BELOW certified minimum")
                print(f"  bfs_oracle depth {args.max_word_len}: {found} [{verdict}]")
    return status


def cmd_bounds(args) -> int:
    cfg = BoundsConfig(args.U, args.alpha) if args.U is not None else None
    rep = bounds_report(args.genus, args.cusps, cfg)
    print(f"signature (g, n) = ({args.genus}, {args.cusps})")
    if cfg is not None:
        print(f"U = {cfg.U:g} (user supplied), alpha = {cfg.alpha:g}")
    print(f"collar_lower {fmt(rep.collar_lower)}")
    print(f"schmutz_upper {fmt(rep.schmutz_upper) if rep.schmutz_upper is not None else 'inapplicable'}")
    print(f"arithmetic_asymptote {fmt(rep.arithmetic_asymptote) if rep.arithmetic_asymptote is not None else 'inapplicable'}")
    if cfg is None:
        print("U-dependent bounds not computed (pass --U)")
    elif args.genus < 2:
        print("U-dependent bounds inapplicable (need genus >= 2)")
    else:
        if rep.buser_sarnak_lower is not None:
            print(f"buser_sarnak_lower {fmt(rep.buser_sarnak_lower)}")
            print(f"buser_sarnak_upper {fmt(rep.buser_sarnak_upper)}")
        print(f"prop_log_lower {fmt(rep.prop_log_lower)}")
        print(f"main_theorem_lower {fmt(rep.main_theorem_lower)}")
        cusps, bound = rep.remark_lower
        print(f"remark_lower n = {cusps}: {fmt(bound)}")
    return 0


def cmd_table(args) -> int:
    levels = prime_levels(args.levels)
    if args.oracle_check:
        for k in levels:
            if k > ORACLE_CAP:
                print(f"oracle check skipped for level {k} (cap {ORACLE_CAP})", file=sys.stderr)
                continue
            closed, oracle = signature_of_level(k), signature_general(k)
            if closed != oracle or (k > 2 and k * closed.cusps != congruence_index(k)):
                raise VerificationFailure(
                    f"level {k}: closed form {closed.as_tuple()} != oracle {oracle.as_tuple()}"
                )
    rows = build_table(levels, args.U, args.trace_cap, args.jobs)
    if args.format == "csv":
        text = render_csv(rows)
    else:
        config = {
            "U": args.U,
            "U_note": "illustrative, not the true constant",
            "trace_cap": args.trace_cap,
            "level_cap": DEFAULT_LEVEL_CAP,
            "version": __version__,
        }
        text = render_json(rows, config)
    _emit(text, args.out)
    return 0


def cmd_verify(args) -> int:
    cfg = BoundsConfig(args.U)
    levels = prime_levels(args.levels)
    failed = 0
    for p in levels:
        rep = verify_sandwich(p, cfg, slack=args.slack, trace_cap=args.trace_cap)
        gap = "n/a" if rep.gap_to_upper is None else fmt(rep.gap_to_upper)
        status = "PASS" if rep.passed else "FAIL"
        g, n = rep.signature.as_tuple()
        print(f"level {p} (g={g}, n={n}) min_trace {rep.min_trace} systole {fmt(rep.computed_systole)} gap_to_upper {gap} {status}")
        for c in rep.failures():
            print(f"  {c.describe()}")
        failed += not rep.passed
    print(f"{len(levels) - failed}/{len(levels)} levels pass")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cong-systole",
        description="Exact systoles of principal congruence surfaces and systole bounds.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("signature", help="signature (g, n) of Gamma(k)")
    p.add_argument("--level", type=int)
    p.add_argument("--levels", help="range a..b")
    p.add_argument("--oracle-check", action="store_true", help="re-derive prime signatures by brute force")
    p.set_defaults(func=cmd_signature)

    p = sub.add_parser("systole", help="certified minimal trace and systole of Gamma(p)")
    p.add_argument("--level", type=int)
    p.add_argument("--levels", help="range a..b (primes only)")
    p.add_argument("--trace-cap", type=int)
    p.add_argument("--max-word-len", type=int, help="also run the word-BFS oracle to this depth")
    p.set_defaults(func=cmd_systole)

    p = sub.add_parser("bounds", help="evaluate every bound for a signature")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--cusps", type=int, required=True)
    p.add_argument("--U", type=float, help="Buser-Sarnak constant (no known value; 1.0 is illustrative)")
    p.add_argument("--alpha", type=float, default=0.0)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("table", help="per-level table as CSV or JSON")
    p.add_argument("--levels", required=True, help="range a..b (primes only)")
    p.add_argument("--U", type=float, required=True, help="Buser-Sarnak constant (1.0 is illustrative)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--oracle-check", action="store_true")
    p.add_argument("--trace-cap", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="check certified systoles against every bound")
    p.add_argument("--levels", required=True, help="range a..b (primes only)")
    p.add_argument("--U", type=float, required=True, help="Buser-Sarnak constant (1.0 is illustrative)")
    p.add_argument("--slack", type=float, default=DEFAULT_SLACK, help="margin for the (4/3) ln g check")
    p.add_argument("--trace-cap", type=int)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except VerificationFailure as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except ToolkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
