"""Evidence scanners for eventual positivity and threshold conjectures.

A finite truncation cannot prove eventual positivity, so every report carries
an explicitly evidentiary verdict:

``no-negatives``
    no negative coefficient below ``prec``;
``negatives-then-clean``
    negatives occur, but none in the last ``clean_tail`` exponents;
``negatives-at-frontier``
    a negative sits inside the tail window, so nothing can be said.

A frontier verdict triggers exactly one retry at doubled precision.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from partineq.fps import PowerSeries
from partineq.genfun import G_L2, H_Lsk
from partineq.partitions import count_series, set_C, set_Cstar

DEFAULT_CLEAN_TAIL = 50
VERDICTS = ("no-negatives", "negatives-then-clean", "negatives-at-frontier")


@dataclass
class ScanReport:
    kind: str
    point: dict
    prec: int
    clean_tail: int
    negative_indices: list[int] = field(default_factory=list)
    tail_zero_indices: list[int] = field(default_factory=list)
    retried: bool = False

    @property
    def last_negative(self) -> int | None:
        return self.negative_indices[-1] if self.negative_indices else None

    @property
    def verdict(self) -> str:
        if not self.negative_indices:
            return "no-negatives"
        if self.last_negative < self.prec - self.clean_tail:
            return "negatives-then-clean"
        return "negatives-at-frontier"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "point": dict(self.point),
            "prec": self.prec,
            "clean_tail": self.clean_tail,
            "negative_indices": list(self.negative_indices),
            "last_negative": self.last_negative,
            "tail_zero_indices": list(self.tail_zero_indices),
            "verdict": self.verdict,
            "retried": self.retried,
        }


def _check_tail(prec: int, clean_tail: int) -> None:
    if clean_tail < 1:
        raise ValueError("clean_tail must be positive")
    if clean_tail >= prec:
        raise ValueError(f"clean_tail {clean_tail} must be smaller than prec {prec}")


def _scan_one(kind: str, point: dict, coeffs_at: Callable[[int], Sequence[int]], prec: int,
              clean_tail: int, start: int = 0) -> ScanReport:
    """Scan the coefficients from ``start`` up, retrying once at 2*prec on a frontier verdict."""

    def run(p: int) -> ScanReport:
        c = coeffs_at(p)
        rep = ScanReport(kind, dict(point), p, clean_tail)
        rep.negative_indices = [n for n in range(start, p) if c[n] < 0]
        rep.tail_zero_indices = [n for n in range(max(start, p - clean_tail), p) if c[n] == 0]
        return rep

    rep = run(prec)
    if rep.verdict == "negatives-at-frontier":
        rep = run(2 * prec)
        rep.retried = True
    return rep


def _as_list(r: Iterable[int] | int) -> list[int]:
    return [r] if isinstance(r, int) else sorted(set(r))


def scan_H(L_range, s_range, k_range, prec: int = 300, clean_tail: int = DEFAULT_CLEAN_TAIL) -> list[ScanReport]:
    """Negative-coefficient frontiers of H_{L,s,k} over the grid restricted to k >= s+1, L >= s+1.

    Grid points outside that region are skipped; an empty restricted grid is
    an error.  ``tail_zero_indices`` lets strict positivity be told apart from
    mere non-negativity.
    """
    _check_tail(prec, clean_tail)
    points = [
        (L, s, k)
        for L in _as_list(L_range)
        for s in _as_list(s_range)
        for k in _as_list(k_range)
        if s >= 1 and k >= s + 1 and L >= s + 1
    ]
    if not points:
        raise ValueError("no grid point satisfies k >= s+1 and L >= s+1")
    return [
        _scan_one("H", {"L": L, "s": s, "k": k}, lambda p, L=L, s=s, k=k: H_Lsk(L, s, k, p).coeffs, prec, clean_tail)
        for L, s, k in sorted(points)
    ]


def count_difference(variant: str, L: int, s: int, prec: int) -> list[int]:
    """|C_{L,s,1} at N| - |C_{L,s,2} at N| (or the C* analogue) for N < prec, by counting partitions."""
    if variant == "C":
        first = set_C(L, s, 1)
    elif variant == "Cstar":
        first = set_Cstar(L, s)
    else:
        raise ValueError(f"unknown set variant {variant!r}; expected C or Cstar")
    a = count_series(first, prec)
    b = count_series(set_C(L, s, 2), prec)
    return [x - y for x, y in zip(a, b)]


def scan_set_conjecture(variant: str, L: int, s: int, prec: int = 150,
                        clean_tail: int = DEFAULT_CLEAN_TAIL) -> ScanReport:
    """Every norm 1 <= N < prec where the first set has fewer members than the second."""
    _check_tail(prec, clean_tail)
    if variant == "Cstar" and L < s + 1:
        raise ValueError(f"C* needs L >= s+1, got L={L}, s={s}")
    return _scan_one(variant, {"L": L, "s": s}, lambda p: count_difference(variant, L, s, p),
                     prec, clean_tail, start=1)


def scan_sets(variant: str, L_range, s_range, prec: int = 150,
              clean_tail: int = DEFAULT_CLEAN_TAIL) -> list[ScanReport]:
    """scan_set_conjecture over a grid; by default each s-slice starts at L = s+1."""
    out = []
    for s in _as_list(s_range):
        for L in _as_list(L_range):
            if L >= s + 1:
                out.append(scan_set_conjecture(variant, L, s, prec, clean_tail))
    return out


def m_evidence(reports: Iterable[ScanReport]) -> dict[int, int]:
    """Per s, one more than the largest violating norm seen (1 when there is none).

    This only bounds the threshold from below over the scanned L; it is not a proof.
    """
    out: dict[int, int] = {}
    for r in reports:
        s = r.point["s"]
        m = (r.last_negative or 0) + 1
        out[s] = max(out.get(s, 1), m)
    return dict(sorted(out.items()))


def g2_corrections(L: int) -> dict[int, int]:
    """The conjectured correction terms: q^3 + q^9 for L in {3, 4}, q^3 from L = 5 on."""
    return {3: 1, 9: 1} if L in (3, 4) else {3: 1}


def scan_G2(L_range, prec: int = 200, clean_tail: int = DEFAULT_CLEAN_TAIL,
            corrections: dict[int, int] | None = None) -> list[ScanReport]:
    """Negatives of G_{L,2} plus its corrections (the conjectured ones unless given)."""
    _check_tail(prec, clean_tail)
    out = []
    for L in _as_list(L_range):
        if L < 3:
            raise ValueError(f"the G_L2 scan needs L >= 3, got {L}")
        corr = g2_corrections(L) if corrections is None else dict(corrections)

        def coeffs(p, L=L, corr=corr):
            return (G_L2(L, p) + PowerSeries.from_terms(corr, p)).coeffs

        point = {"L": L, "corrections": "+".join(f"q^{e}" for e in sorted(corr)) or "none"}
        out.append(_scan_one("G2", point, coeffs, prec, clean_tail))
    return out


def to_json_lines(reports: Iterable[ScanReport]) -> str:
    return "".join(json.dumps(r.to_json(), sort_keys=True) + "\n" for r in reports)


def summary(reports: Sequence[ScanReport]) -> str:
    """One row per report, plus the M-evidence frontier when set scans are present."""
    rows = [("kind", "point", "prec", "verdict", "last_negative", "negatives")]
    for r in reports:
        pt = ",".join(f"{k}={v}" for k, v in r.point.items())
        neg = ",".join(map(str, r.negative_indices[:8])) + (",..." if len(r.negative_indices) > 8 else "")
        last = "" if r.last_negative is None else str(r.last_negative)
        rows.append((r.kind, pt, str(r.prec), r.verdict, last, neg))
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in rows]
    sets = [r for r in reports if r.kind in ("C", "Cstar")]
    for kind in ("C", "Cstar"):
        ev = m_evidence(r for r in sets if r.kind == kind)
        for s, m in ev.items():
            lines.append(f"M-evidence {kind} s={s}: {m}")
    return "\n".join(lines) + "\n"
