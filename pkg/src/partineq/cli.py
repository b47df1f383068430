"""Command-line entry point: ``partineq <subcommand> ...``.

Exit status is 0 when everything checked came out as expected, 1 when a
non-fixture check failed (or a scan found negatives outside the expected
set), and 2 on a usage error.  The default series order is 200 and can be
changed globally with the ``PARTINEQ_ORDER`` environment variable.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Sequence

from partineq import identities, scan
from partineq.genfun import ParameterError, SeriesId, build
from partineq.maps import VARIANTS, InjectionId, image_complement, preimage_table
from partineq.partitions import (
    DISTINCT,
    POSITIVE,
    UNRESTRICTED,
    ConstraintSet,
    Partition,
    Weight,
    enumerate_partitions,
    set_A,
    set_B,
    set_C,
    set_Cstar,
    t_stat,
    weight_of,
)

ORDER_ENV = "PARTINEQ_ORDER"
DEFAULT_ORDER = 200
FORMATS = ("text", "json", "csv")


class UsageError(Exception):
    pass


# argument helpers


def parse_range(text: str) -> list[int]:
    """``"3"``, ``"1..20"`` or ``"5,7,9"`` to a sorted list of ints."""
    out: set[int] = set()
    try:
        for piece in text.split(","):
            if ".." in piece:
                a, b = piece.split("..", 1)
                lo, hi = int(a), int(b)
                if lo > hi:
                    raise UsageError(f"empty range {piece!r}")
                out.update(range(lo, hi + 1))
            else:
                out.add(int(piece))
    except ValueError:
        raise UsageError(f"cannot parse range {text!r}; use N, a..b or a,b,c") from None
    return sorted(out)


def env_order() -> int | None:
    raw = os.environ.get(ORDER_ENV)
    if raw is None or raw == "":
        return None
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{ORDER_ENV} must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise UsageError(f"{ORDER_ENV} must be a positive integer, got {raw!r}")
    return value


def resolve_order(flag: int | None, fallback: int | None = DEFAULT_ORDER) -> int | None:
    if flag is not None:
        if flag < 1:
            raise UsageError("--order must be positive")
        return flag
    env = env_order()
    return env if env is not None else fallback


def parse_set(text: str) -> ConstraintSet:
    name, *rest = text.split(":")
    try:
        args = [int(x) for x in rest]
    except ValueError:
        raise UsageError(f"set parameters must be integers: {text!r}") from None
    makers = {
        "A": (set_A, 2, "A:L:i"),
        "B": (set_B, 2, "B:L:i"),
        "C": (set_C, 3, "C:L:s:i"),
        "Cstar": (set_Cstar, 2, "Cstar:L:s"),
    }
    if name in ("U", "U*", "D") and not args:
        return {"U": POSITIVE, "U*": UNRESTRICTED, "D": DISTINCT}[name]
    if name not in makers:
        raise UsageError(f"unknown set {name!r}; expected A, B, C, Cstar, U, U* or D")
    maker, arity, shape = makers[name]
    if len(args) != arity:
        raise UsageError(f"set {name} is written {shape}")
    try:
        return maker(*args)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def compact(p: Partition) -> str:
    """Frequency notation with ^1 omitted, e.g. ``1^10 2``."""
    if not p:
        return "()"
    return " ".join(str(part) if f == 1 else f"{part}^{f}" for part, f in p.items)


def _csv(rows: list[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue()


def _json_lines(objs) -> str:
    return "".join(json.dumps(o, sort_keys=True) + "\n" for o in objs)


# subcommands


def cmd_verify(args) -> tuple[str, int]:
    restrict = {}
    for name in ("L", "s", "k", "n"):
        val = getattr(args, name)
        if val is not None:
            restrict[name] = parse_range(val)
    ids = None if args.id == "all" else [args.id]
    if ids:
        try:
            identities.get(args.id)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
    prec = resolve_order(args.order, fallback=None)
    reports = identities.verify_all(prec=prec, ids=ids, restrict=restrict)
    status = identities.exit_status(reports)
    if args.format == "json":
        return identities.to_json_lines(reports), status
    if args.format == "csv":
        rows = [["id", "point", "prec", "status", "first_discrepancy", "negative_indices", "expected_fail", "as_expected"]]
        for r in reports:
            rows.append([
                r.id, ";".join(f"{k}={v}" for k, v in r.point.items()), r.prec, r.status,
                "" if r.first_discrepancy is None else r.first_discrepancy,
                " ".join(map(str, r.negative_indices)), r.expected_fail, r.as_expected,
            ])
        return _csv(rows), status
    return identities.summary(reports), status


def cmd_enumerate(args) -> tuple[str, int]:
    c = parse_set(args.set)
    if args.n < 0:
        raise UsageError("--n must be non-negative")
    parts = enumerate_partitions(args.n, c)
    if args.format == "json":
        return json.dumps({"set": args.set, "n": args.n, "count": len(parts),
                           "partitions": [p.to_json() for p in parts]}) + "\n", 0
    if args.format == "csv":
        return _csv([["partition"]] + [[compact(p)] for p in parts]), 0
    lines = [compact(p) for p in parts] + [f"{len(parts)} partitions of {args.n} in {c.name or args.set}"]
    return "\n".join(lines) + "\n", 0


def cmd_genfun(args) -> tuple[str, int]:
    prec = resolve_order(args.order)
    try:
        sid = SeriesId.parse(args.series)
    except ParameterError as exc:
        raise UsageError(str(exc)) from None
    s = build(sid, prec)
    if args.format == "json":
        return json.dumps({"series": str(sid), "prec": prec, "coeffs": list(s.coeffs)}) + "\n", 0
    if args.format == "csv":
        return _csv([["n", "coeff"]] + [[n, a] for n, a in enumerate(s.coeffs)]), 0
    lines = [f"{sid} to order {prec}"] + [f"{n} {a}" for n, a in enumerate(s.coeffs)]
    return "\n".join(lines) + "\n", 0


def _injection(variant: str, L: int) -> InjectionId:
    try:
        return InjectionId(variant, L)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_complement(args) -> tuple[str, int]:
    mid = _injection(args.map, args.L)
    parts = image_complement(mid, args.n)
    if args.format == "json":
        return json.dumps({"map": args.map, "L": args.L, "n": args.n, "count": len(parts),
                           "partitions": [p.to_json() for p in parts]}) + "\n", 0
    if args.format == "csv":
        return _csv([["partition"]] + [[compact(p)] for p in parts]), 0
    lines = [compact(p) for p in parts] + [f"{len(parts)} partitions without preimage under {mid} at norm {args.n}"]
    return "\n".join(lines) + "\n", 0


def table_rows(which: int) -> tuple[list[str], list[list[str]], list[str]]:
    """Header, rows and footer lines for one of the three reference tables."""
    if which == 1:
        parts = enumerate_partitions(6, POSITIVE)
        rows = [[compact(p), str(weight_of(Weight.ALTERNATING_SMALLEST, p)), str(t_stat(p))] for p in parts]
        total_w = sum(weight_of(Weight.ALTERNATING_SMALLEST, p) for p in parts)
        total_t = sum(t_stat(p) for p in parts)
        rows.append(["Total", str(total_w), str(total_t)])
        return ["partition of 6", "(-1)^(s+1)", "t"], rows, []
    if which in (2, 3):
        mid = InjectionId("gamma", 3) if which == 2 else InjectionId("gamma1", 5)
        name = "gamma" if which == 2 else "Gamma1"
        dom, cod = ("A_{3,2}", "A_{3,1}") if which == 2 else ("B_{5,2}", "B_{5,1}")
        table = preimage_table(mid, 12)
        rows = [[compact(pre) if pre else "", "->" if pre else "", compact(img)] for pre, img in table]
        mapped = sum(1 for pre, _ in table if pre)
        foot = [f"{len(table)} in {cod}, {mapped} in {dom}, {len(table) - mapped} without preimage"]
        return [f"pi in {dom}", name, f"pi in {cod}"], rows, foot
    raise UsageError("table must be 1, 2 or 3")


def cmd_table(args) -> tuple[str, int]:
    header, rows, foot = table_rows(args.which)
    if args.format == "json":
        return json.dumps({"table": args.which, "header": header, "rows": rows, "footer": foot}) + "\n", 0
    if args.format == "csv":
        return _csv([header] + rows), 0
    widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
    lines = []
    for r in [header] + rows:
        cells = [r[0].ljust(widths[0])] + [c.rjust(w) if args.which == 1 else c.center(w) for c, w in zip(r[1:], widths[1:])]
        lines.append("  ".join(cells).rstrip())
    lines.insert(1, "-" * len(lines[0]))
    return "\n".join(lines + foot) + "\n", 0


def _scan_output(reports, fmt: str, status: int) -> tuple[str, int]:
    if fmt == "json":
        return scan.to_json_lines(reports), status
    if fmt == "csv":
        rows = [["kind", "point", "prec", "verdict", "last_negative", "negative_indices", "retried"]]
        for r in reports:
            rows.append([r.kind, ";".join(f"{k}={v}" for k, v in r.point.items()), r.prec, r.verdict,
                         "" if r.last_negative is None else r.last_negative,
                         " ".join(map(str, r.negative_indices)), r.retried])
        return _csv(rows), status
    return scan.summary(reports), status


def cmd_scan_h(args) -> tuple[str, int]:
    prec = resolve_order(args.order, fallback=300)
    try:
        reports = scan.scan_H(parse_range(args.L), parse_range(args.s), parse_range(args.k), prec, args.clean_tail)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    status = int(any(r.verdict == "negatives-at-frontier" for r in reports))
    return _scan_output(reports, args.format, status)


def expected_set_violations(L: int, s: int) -> set[int] | None:
    """Violating norms that are already known, or None when there is no reference."""
    if s == 1 and L >= 2:
        return set()
    if s == 2 and L >= 3:
        return {3, 9} if L == 4 else {3}
    return None


def cmd_scan_sets(args) -> tuple[str, int]:
    prec = resolve_order(args.order, fallback=150)
    try:
        reports = scan.scan_sets(args.variant, parse_range(args.L), parse_range(args.s), prec, args.clean_tail)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    status = 0
    if args.variant == "C":
        for r in reports:
            known = expected_set_violations(r.point["L"], r.point["s"])
            if known is not None and set(r.negative_indices) - known:
                status = 1
    return _scan_output(reports, args.format, status)


def cmd_scan_g2(args) -> tuple[str, int]:
    prec = resolve_order(args.order)
    try:
        reports = scan.scan_G2(parse_range(args.L), prec, args.clean_tail)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    status = int(any(r.negative_indices for r in reports))
    return _scan_output(reports, args.format, status)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="partineq", description="Exact q-series and partition inequality checks.")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp):
        sp.add_argument("--format", choices=FORMATS, default="text")

    v = sub.add_parser("verify", help="check registered identities")
    v.add_argument("id", help="record id, or 'all'")
    v.add_argument("--order", type=int)
    for name in ("L", "s", "k", "n"):
        v.add_argument(f"--{name}", help="restrict the grid: N, a..b or a,b,c")
    fmt(v)
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("enumerate", help="list the partitions of n in a set")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--set", required=True, help="A:L:i, B:L:i, C:L:s:i, Cstar:L:s, U, U* or D")
    fmt(e)
    e.set_defaults(func=cmd_enumerate)

    g = sub.add_parser("genfun", help="coefficients of a named series")
    g.add_argument("series", help="e.g. H_L1:3 or H_Lsk:5:2:6")
    g.add_argument("--order", type=int)
    fmt(g)
    g.set_defaults(func=cmd_genfun)

    c = sub.add_parser("complement", help="codomain partitions missed by an injection")
    c.add_argument("--map", required=True, choices=VARIANTS)
    c.add_argument("--L", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    fmt(c)
    c.set_defaults(func=cmd_complement)

    t = sub.add_parser("table", help="reproduce a reference table")
    t.add_argument("which", type=int, choices=(1, 2, 3))
    fmt(t)
    t.set_defaults(func=cmd_table)

    h = sub.add_parser("scan-h", help="negative-coefficient frontiers of H_{L,s,k}")
    h.add_argument("--L", default="2..10")
    h.add_argument("--s", default="1..9")
    h.add_argument("--k", default="2..10")
    h.add_argument("--order", type=int)
    h.add_argument("--clean-tail", type=int, default=scan.DEFAULT_CLEAN_TAIL)
    fmt(h)
    h.set_defaults(func=cmd_scan_h)

    s = sub.add_parser("scan-sets", help="threshold evidence for the set inequalities")
    s.add_argument("--variant", choices=("C", "Cstar"), default="C")
    s.add_argument("--L", default="2..10")
    s.add_argument("--s", default="1..3")
    s.add_argument("--order", type=int)
    s.add_argument("--clean-tail", type=int, default=scan.DEFAULT_CLEAN_TAIL)
    fmt(s)
    s.set_defaults(func=cmd_scan_sets)

    g2 = sub.add_parser("scan-g2", help="G_{L,2} plus its conjectured corrections")
    g2.add_argument("--L", default="3..10")
    g2.add_argument("--order", type=int)
    g2.add_argument("--clean-tail", type=int, default=scan.DEFAULT_CLEAN_TAIL)
    fmt(g2)
    g2.set_defaults(func=cmd_scan_g2)
    return p


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text, status = args.func(args)
    except UsageError as exc:
        parser.print_usage(stderr)
        print(f"partineq: error: {exc}", file=stderr)
        return 2
    stdout.write(text)
    return status


def entry() -> None:
    sys.exit(main())
