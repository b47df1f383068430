"""Registry of verifiable claims and the engine that checks them.

Each :class:`IdentityRecord` is one of three kinds:

``equality``
    every listed side agrees with the first, coefficientwise below ``prec``;
``nonneg``
    the single side has no negative coefficient (optionally only at the
    exponents selected by ``mask``);
``inequality-of-counts``
    for every norm ``1 <= N < prec``, ``lhs[N] + correction(N) >= rhs[N]``,
    where both sides are partition counts, never closed forms.

Expected-fail fixtures are records whose claim is known to be false; they
pass only when the check fails with exactly the recorded witness.
"""

from __future__ import annotations

import functools
import itertools
import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from partineq import genfun as gf
from partineq.fps import PowerSeries, first_discrepancy, invert, poch_infinite
from partineq.hypergeom import TRANSFORMS, mono, random_admissible, transform_sides
from partineq.maps import InjectionId, complement_genfun
from partineq.partitions import (
    DISTINCT,
    POSITIVE,
    Weight,
    bounded_difference,
    genfun_of_set,
    set_A,
    set_B,
    weighted_genfun,
)

DEFAULT_PREC = 200
KINDS = ("equality", "nonneg", "inequality-of-counts")

Side = Callable[[dict, int], PowerSeries]


@dataclass(frozen=True)
class Expectation:
    """How an expected-fail fixture must fail."""

    witness: int
    negatives: tuple[int, ...] | None = None
    prefix: tuple[int, ...] | None = None


@dataclass(frozen=True)
class IdentityRecord:
    id: str
    kind: str
    description: str
    sides: tuple[tuple[str, Side], ...]
    grid: tuple[tuple[str, tuple[int, ...]], ...] = ()
    default_prec: int = DEFAULT_PREC
    correction: Callable[[dict, int], int] | None = None
    mask: Callable[[int], bool] | None = None
    expect_fail: Expectation | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown record kind {self.kind!r}")
        need = {"equality": None, "nonneg": 1, "inequality-of-counts": 2}[self.kind]
        if need is not None and len(self.sides) != need:
            raise ValueError(f"{self.id}: a {self.kind} record takes {need} side(s)")
        if self.kind == "equality" and len(self.sides) < 2:
            raise ValueError(f"{self.id}: an equality needs at least two sides")

    @property
    def is_fixture(self) -> bool:
        return self.expect_fail is not None

    @property
    def param_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.grid)

    def points(self, restrict: dict[str, Iterable[int]] | None = None) -> list[dict]:
        """Grid points in lexicographic order, optionally intersected with ``restrict``."""
        axes = []
        for name, values in self.grid:
            vals = sorted(values)
            if restrict and name in restrict:
                keep = set(restrict[name])
                vals = [v for v in vals if v in keep]
            axes.append(vals)
        return [dict(zip(self.param_names, combo)) for combo in itertools.product(*axes)]


@dataclass
class VerifyReport:
    id: str
    point: dict
    prec: int
    status: str
    first_discrepancy: int | None = None
    negative_indices: list[int] = field(default_factory=list)
    expected_fail: bool = False
    as_expected: bool = True
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.as_expected

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "point": dict(self.point),
            "prec": self.prec,
            "status": self.status,
            "first_discrepancy": self.first_discrepancy,
            "negative_indices": list(self.negative_indices),
            "expected_fail": self.expected_fail,
            "as_expected": self.as_expected,
            "detail": self.detail,
        }


# side helpers


def _series(name: str, *params: str) -> Side:
    def side(pt, prec):
        return gf.build(gf.SeriesId(name, tuple(pt[p] for p in params)), prec)

    side.__name__ = name
    return side


def _fixed(name: str, *values: int) -> Side:
    return lambda pt, prec: gf.build(gf.SeriesId(name, values), prec)


def _set_difference(family) -> Side:
    return lambda pt, prec: genfun_of_set(family(pt["L"], 1), prec) - genfun_of_set(family(pt["L"], 2), prec)


def _bounded_weighted(pt, prec):
    return weighted_genfun(bounded_difference(pt["L"]), Weight.ALTERNATING_SMALLEST, prec)


def _over_euler(side: Side) -> Side:
    return lambda pt, prec: side(pt, prec) * invert(poch_infinite(1, prec))


def _long_term(pt, prec):
    return gf.H_L2_long_terms(pt["L"], prec)[pt["term"] - 1]


def _h1_complement(pt, prec):
    return complement_genfun(InjectionId.for_L("A", pt["L"]), prec)


def _h1_alternate(pt, prec):
    L = pt["L"]
    return gf.H_21_secondary(prec) if L == 2 else gf.H_L1_fourterm(L, prec)


def _h2_complement(pt, prec):
    return complement_genfun(InjectionId.for_L("B", pt["L"]), prec)


def _h2_alternate(pt, prec):
    L = pt["L"]
    return gf.H_32_secondary(prec) if L == 3 else gf.H_L2_long(L, prec)


def _counts(family, i) -> Side:
    return lambda pt, prec: genfun_of_set(family(pt["L"], i), prec)


def _b_correction(pt, N):
    return (N == 3) + (N == 9 and pt["L"] == 4)


def _b_correction_without_9(pt, N):
    return int(N == 3)


@functools.lru_cache(maxsize=None)
def _samples(which: str) -> tuple:
    return tuple(random_admissible(which, 25, 100, seed=0))


def _special_params(which: str, L: int) -> dict:
    p = {"a": mono(L + 1), "z": mono(1)}
    if which != "qbinom":
        p["b"] = mono(1, -1)
        p["c"] = mono(2, -1)
    return p


def _transform_side(which: str, special: bool) -> tuple[Side, Side]:
    def params(pt):
        return _special_params(which, pt["L"]) if special else _samples(which)[pt["sample"]]

    return (
        lambda pt, prec: transform_sides(which, params(pt), prec)[0],
        lambda pt, prec: transform_sides(which, params(pt), prec)[1],
    )


def _r(a: int, b: int) -> tuple[int, ...]:
    return tuple(range(a, b + 1))


# the registry


@functools.lru_cache(maxsize=1)
def _build_registry() -> tuple[IdentityRecord, ...]:
    R = IdentityRecord
    L = "L"
    recs = [
        R("ineq-A-sets", "inequality-of-counts",
          "smallest part 1 without L outnumbers parts in 2..L+1, norm by norm",
          (("A1 counts", _counts(set_A, 1)), ("A2 counts", _counts(set_A, 2))),
          ((L, _r(2, 10)),), 101),
        R("ineq-B-sets", "inequality-of-counts",
          "smallest part 2 without L+1, plus the norm-3 and (L=4) norm-9 corrections, outnumbers parts in 3..L+2",
          (("B1 counts", _counts(set_B, 1)), ("B2 counts", _counts(set_B, 2))),
          ((L, _r(3, 10)),), 101, correction=_b_correction),
        R("ineq-B-sets-without-norm9-correction", "inequality-of-counts",
          "dropping the norm-9 correction at L=4 breaks the B inequality exactly once",
          (("B1 counts", _counts(set_B, 1)), ("B2 counts", _counts(set_B, 2))),
          ((L, (4,)),), 101, correction=_b_correction_without_9,
          expect_fail=Expectation(9, negatives=(9,))),
        R("ineq-A-sets-at-L1", "inequality-of-counts",
          "at L=1 the A inequality fails at every even norm",
          (("A1 counts", _counts(set_A, 1)), ("A2 counts", _counts(set_A, 2))),
          ((L, (1,)),), 101, expect_fail=Expectation(2)),
        R("ineq-B-sets-at-L1", "inequality-of-counts",
          "at L=1 the B inequality fails at every multiple of 3 from 6 on",
          (("B1 counts", _counts(set_B, 1)), ("B2 counts", _counts(set_B, 2))),
          ((L, (1,)),), 101, correction=_b_correction_without_9, expect_fail=Expectation(6)),
        R("ineq-B-sets-at-L2", "inequality-of-counts",
          "at L=2 the B inequality fails at every odd norm from 7 on",
          (("B1 counts", _counts(set_B, 1)), ("B2 counts", _counts(set_B, 2))),
          ((L, (2,)),), 101, correction=_b_correction_without_9, expect_fail=Expectation(7)),
        R("alt-smallest-equals-t-stat", "equality",
          "alternating smallest-part count equals the t-statistic count, by two sums and two enumerations",
          (("sum over smallest part", _fixed("weighted_inf_lhs")),
           ("sum over chains", _fixed("t_sum_rhs")),
           ("product form", _fixed("alt_smallest_inf")),
           ("alternating enumeration", lambda pt, prec: weighted_genfun(POSITIVE, Weight.ALTERNATING_SMALLEST, prec)),
           ("t enumeration", lambda pt, prec: weighted_genfun(POSITIVE, Weight.T_STATISTIC, prec)))),
        R("rank-distinct-forms", "equality",
          "signed rank count on distinct partitions, three ways",
          (("finite products", _fixed("rank_distinct_mid")),
           ("triangular sum", _fixed("rank_distinct_rhs")),
           ("enumeration", lambda pt, prec: weighted_genfun(DISTINCT, Weight.ALTERNATING_RANK_DISTINCT, prec)))),
        R("rank-distinct-over-euler-triangular", "equality",
          "the triangular rank sum over (q;q)_inf is the t-statistic sum",
          (("triangular / (q;q)_inf", _over_euler(_fixed("rank_distinct_rhs"))), ("t sum", _fixed("t_sum_rhs")))),
        R("rank-distinct-over-euler-products", "equality",
          "the finite-product rank sum over (q;q)_inf is the alternating smallest-part product sum",
          (("products / (q;q)_inf", _over_euler(_fixed("rank_distinct_mid"))), ("alternating", _fixed("alt_smallest_inf")))),
        R("bounded-alt-smallest-nonneg", "nonneg",
          "alternating smallest-part count with largest minus smallest at most L is non-negative",
          (("weighted sum", _series("weighted_ls", L)),), ((L, _r(1, 12)),), 300),
        R("bounded-alt-smallest-forms", "equality",
          "alternating bounded-difference count: product sum, binomial sum, 2phi1 form, enumeration",
          (("product sum", _series("weighted_ls", L)),
           ("binomial sum", _series("weighted_ls_binom", L)),
           ("2phi1", _series("weighted_ls_phi", L)),
           ("enumeration", _bounded_weighted)),
          ((L, _r(0, 12)),)),
        R("bounded-alt-smallest-decomposition", "equality",
          "the alternating count is G_L1 plus twice the odd-smallest-part (>1) count",
          (("weighted sum", _series("weighted_ls", L)),
           ("G + 2 odd", lambda pt, prec: gf.G_L1(pt["L"], prec) + gf.odds_min_gt1(pt["L"], prec) * 2)),
          ((L, _r(1, 12)),)),
        R("bounded-alt-smallest-explicit", "equality",
          "the alternating count as an explicit sum of non-negative pieces",
          (("weighted sum", _series("weighted_ls", L)), ("explicit", _series("weighted_ls_pieces", L))),
          ((L, _r(1, 12)),)),
        R("odd-smallest-forms", "equality",
          "odd smallest part > 1 with bounded difference: closed sum vs enumeration",
          (("closed sum", _series("odds_min_gt1", L)),
           ("enumeration", lambda pt, prec: genfun_of_set(
               bounded_difference(pt["L"], smallest_part_at_least=2, smallest_part_parity=1), prec))),
          ((L, _r(0, 12)),)),
        R("jackson-forms", "equality",
          "Jackson-transformed 2phi2 and its simplified sum equal the alternating count",
          (("weighted sum", _series("weighted_ls", L)),
           ("2phi2", _series("jackson_phi", L)),
           ("simplified", _series("jackson_rhs", L))),
          ((L, _r(0, 12)),)),
        R("jackson-side-nonneg", "nonneg",
          "the Jackson-transformed sum is non-negative",
          (("simplified", _series("jackson_rhs", L)),), ((L, _r(1, 10)),)),
        R("intermediate-form", "equality",
          "the third-Heine intermediate sum equals the alternating count",
          (("weighted sum", _series("weighted_ls", L)), ("intermediate", _series("intermediate", L))),
          ((L, _r(0, 12)),)),
        R("divisor-series-nonneg-off-4", "nonneg",
          "the L=0 alternating divisor series is non-negative away from multiples of 4",
          (("divisor series", _fixed("mod4_series")),), (), mask=lambda n: n % 4 != 0),
        R("divisor-series-negative-at-4", "nonneg",
          "the L=0 alternating divisor series dips to -1 at q^4",
          (("divisor series", _fixed("mod4_series")),), (),
          expect_fail=Expectation(4, prefix=(0, 1, 0, 2, -1))),
        R("H1-nonneg", "nonneg", "H_{L,1} is non-negative for L >= 2",
          (("H_L1", _series("H_L1", L)),), ((L, _r(2, 12)),)),
        R("H1-at-L1-negative", "nonneg", "H_{1,1} = q/(1+q) alternates",
          (("H_L1", _series("H_L1", L)),), ((L, (1,)),),
          expect_fail=Expectation(2, prefix=(0, 1, -1, 1, -1))),
        R("H1-forms-agree", "equality",
          "H_{L,1}: difference of products, non-negative form, set-difference count",
          (("products", _series("H_L1", L)),
           ("non-negative form", _series("H_L1_secondary", L)),
           ("set difference", _set_difference(set_A))),
          ((L, _r(1, 12)),)),
        R("gamma-complement", "equality",
          "unmapped A-set partitions are generated by the non-negative complement formulas",
          (("complement count", _h1_complement), ("complement formula", _h1_alternate),
           ("H_L1", _series("H_L1", L))),
          ((L, _r(2, 8)),), 120),
        R("H2-nonneg", "nonneg", "H_{L,2} (with its corrections) is non-negative for L >= 3",
          (("H_L2", _series("H_L2", L)),), ((L, _r(3, 12)),)),
        R("H2-at-L1-negative", "nonneg", "H_{1,2} goes negative at q^6",
          (("H_L2", _series("H_L2", L)),), ((L, (1,)),),
          expect_fail=Expectation(6, prefix=(0, 0, 1, 0, 0, 1, -1))),
        R("H2-at-L2-negative", "nonneg", "H_{2,2} goes negative at q^7",
          (("H_L2", _series("H_L2", L)),), ((L, (2,)),),
          expect_fail=Expectation(7, prefix=(0, 0, 1, 0, 0, 0, 1, -1))),
        R("H2-forms-agree", "equality",
          "H_{L,2}: difference of products with corrections vs set-difference count",
          (("products", _series("H_L2", L)),
           ("set difference + corrections", lambda pt, prec: _set_difference(set_B)(pt, prec)
            + PowerSeries.from_terms({3: 1, 9: int(pt["L"] == 4)}, prec))),
          ((L, _r(1, 12)),)),
        R("gamma1-complement", "equality",
          "unmapped B-set partitions (odd L) are generated by the non-negative complement formulas",
          (("complement count", _h2_complement), ("complement formula", _h2_alternate),
           ("H_L2", _series("H_L2", L))),
          ((L, (3, 5, 7, 9, 11)),), 120),
        R("H2-long-terms-nonneg", "nonneg",
          "each of the eleven complement summands is non-negative on its own",
          (("term", _long_term),), ((L, (5, 7, 9, 11)), ("term", _r(1, 11)))),
        R("finite-summation", "equality",
          "sum_{s=1}^L q^{2s+1}/(q^s;q)_{L+2-s} in closed form",
          (("sum", _series("summation_lhs", L)), ("closed form", _series("summation_rhs", L))),
          ((L, _r(1, 20)),)),
        R("infinite-summation", "equality",
          "sum_{s>=1} q^{2s+1}/(q^s;q)_inf in closed form, also as the large-L finite sum",
          (("sum", _fixed("infinite_summation_lhs")), ("closed form", _fixed("infinite_summation_rhs")),
           ("finite closed form at L=prec", lambda pt, prec: gf.summation_rhs(prec, prec))),
          ()),
        R("G1-H1-relation", "equality", "G_{L,1} (1-q^L) = H_{L,1}",
          (("G (1-q^L)", lambda pt, prec: gf.G_L1(pt["L"], prec).mul_binomial(pt["L"])),
           ("H_L1", _series("H_L1", L))),
          ((L, _r(1, 12)),), 300),
        R("G1-nonneg", "nonneg", "G_{L,1} is non-negative",
          (("G_L1", _series("G_L1", L)),), ((L, _r(1, 12)),), 300),
        R("G1-definition", "equality", "G_{L,1} counts smallest part 1 minus smallest part >= 2",
          (("closed form", _series("G_L1", L)),
           ("set difference", lambda pt, prec: genfun_of_set(bounded_difference(pt["L"], smallest_part_equals=1), prec)
            - genfun_of_set(bounded_difference(pt["L"], smallest_part_at_least=2), prec))),
          ((L, _r(1, 12)),)),
        R("binomial-shift", "equality", "[L+n-1, n-1]/(1-q^n) = [L-1+n, n]/(1-q^L)",
          (("over 1-q^n", _series("shift_lhs", "n", L)), ("over 1-q^L", _series("shift_rhs", "n", L))),
          (("n", _r(1, 30)), (L, _r(1, 30))), 100),
        R("G2-H2star-relation", "equality", "G_{L,2} (1-q^L) = H*_{L,2}",
          (("G (1-q^L)", lambda pt, prec: gf.G_L2(pt["L"], prec).mul_binomial(pt["L"])),
           ("Hstar", _series("Hstar_L2", L))),
          ((L, _r(3, 12)),)),
        R("G2-definition", "equality", "G_{L,2} counts smallest part 2 minus smallest part >= 3",
          (("closed form", _series("G_L2", L)),
           ("set difference", lambda pt, prec: genfun_of_set(bounded_difference(pt["L"], smallest_part_equals=2), prec)
            - genfun_of_set(bounded_difference(pt["L"], smallest_part_at_least=3), prec))),
          ((L, _r(1, 12)),)),
    ]
    for which in TRANSFORMS:
        lhs, rhs = _transform_side(which, special=False)
        recs.append(R(f"transform-{which}", "equality",
                      f"{which} at seeded random signed-monomial parameters",
                      (("left", lhs), ("right", rhs)), (("sample", _r(0, 24)),), 100))
        lhs, rhs = _transform_side(which, special=True)
        recs.append(R(f"transform-{which}-specialized", "equality",
                      f"{which} at a=q^(L+1), b=-q, c=-q^2, z=q",
                      (("left", lhs), ("right", rhs)), ((L, _r(1, 8)),), 100))
    recs.sort(key=lambda r: r.id)
    ids = [r.id for r in recs]
    assert len(ids) == len(set(ids)), "duplicate record id"
    return tuple(recs)


def registry() -> list[IdentityRecord]:
    return list(_build_registry())


def get(record_id: str) -> IdentityRecord:
    for r in _build_registry():
        if r.id == record_id:
            return r
    raise KeyError(f"unknown identity {record_id!r}")


# checking


def _check(rec: IdentityRecord, pt: dict, prec: int) -> VerifyReport:
    rep = VerifyReport(rec.id, dict(pt), prec, "pass", expected_fail=rec.is_fixture)
    if rec.kind == "equality":
        (label0, f0), *rest = rec.sides
        base = f0(pt, prec)
        worst = None
        for label, f in rest:
            d = first_discrepancy(base, f(pt, prec))
            if d is not None and (worst is None or d < worst[0]):
                worst = (d, label)
        if worst is not None:
            rep.status, rep.first_discrepancy = "fail", worst[0]
            rep.detail = f"{label0} and {worst[1]} differ at q^{worst[0]}"
        prefix = base.coeffs[:16]
    elif rec.kind == "nonneg":
        s = rec.sides[0][1](pt, prec)
        neg = [n for n in s.negative_indices() if rec.mask is None or rec.mask(n)]
        rep.negative_indices = neg
        if neg:
            rep.status, rep.first_discrepancy = "fail", neg[0]
            rep.detail = f"coefficient of q^{neg[0]} is {s[neg[0]]}"
        prefix = s.coeffs[:16]
    else:
        lhs = rec.sides[0][1](pt, prec)
        rhs = rec.sides[1][1](pt, prec)
        corr = rec.correction or (lambda _pt, _n: 0)
        bad = [N for N in range(1, prec) if lhs[N] + corr(pt, N) < rhs[N]]
        rep.negative_indices = bad
        if bad:
            N = bad[0]
            rep.status, rep.first_discrepancy = "fail", N
            rep.detail = f"norm {N}: {lhs[N]} + {corr(pt, N)} < {rhs[N]}"
        prefix = tuple(lhs[N] + corr(pt, N) - rhs[N] for N in range(min(prec, 16)))

    exp = rec.expect_fail
    if exp is None:
        rep.as_expected = rep.status == "pass"
    else:
        reached = exp.witness < prec
        ok = rep.status == "fail" and rep.first_discrepancy == exp.witness
        if ok and exp.negatives is not None:
            ok = tuple(rep.negative_indices) == exp.negatives
        if ok and exp.prefix is not None:
            ok = tuple(prefix[: len(exp.prefix)]) == exp.prefix
        # below the witness there is nothing to see; a clean pass is the honest outcome
        rep.as_expected = ok if reached else rep.status == "pass"
    return rep


def verify(record_id: str, point: dict | None = None, prec: int | None = None) -> VerifyReport:
    rec = get(record_id)
    point = dict(point or {})
    if set(point) != set(rec.param_names):
        raise ValueError(f"{record_id} takes parameters {rec.param_names}, got {tuple(point)}")
    for name, values in rec.grid:
        if point[name] not in values:
            raise ValueError(f"{record_id}: {name}={point[name]} is outside the grid {min(values)}..{max(values)}")
    return _check(rec, point, prec if prec is not None else rec.default_prec)


def verify_all(
    prec: int | dict[str, int] | None = None,
    ids: Sequence[str] | None = None,
    restrict: dict[str, Iterable[int]] | None = None,
) -> list[VerifyReport]:
    """Every selected record at every (restricted) grid point, in deterministic order.

    ``prec`` is either one precision for all records or a per-id override map.
    """
    out = []
    chosen = [get(i) for i in ids] if ids is not None else registry()
    for rec in sorted(chosen, key=lambda r: r.id):
        if isinstance(prec, dict):
            p = prec.get(rec.id, rec.default_prec)
        else:
            p = prec if prec is not None else rec.default_prec
        for pt in rec.points(restrict):
            out.append(_check(rec, pt, p))
    return out


def exit_status(reports: Iterable[VerifyReport]) -> int:
    return 0 if all(r.ok for r in reports) else 1


def to_json_lines(reports: Iterable[VerifyReport]) -> str:
    return "".join(json.dumps(r.to_json(), sort_keys=True) + "\n" for r in reports)


def _fmt_point(pt: dict) -> str:
    return ",".join(f"{k}={v}" for k, v in pt.items()) or "-"


def summary(reports: Sequence[VerifyReport]) -> str:
    """Plain-text table, one line per report, then a totals line."""
    rows = [("id", "point", "prec", "status", "witness", "note")]
    for r in reports:
        note = "expected fail" if r.expected_fail else ""
        if not r.ok:
            note = (note + "; " if note else "") + "UNEXPECTED"
        w = "" if r.first_discrepancy is None else str(r.first_discrepancy)
        rows.append((r.id, _fmt_point(r.point), str(r.prec), r.status, w, note))
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in rows]
    bad = sum(1 for r in reports if not r.ok)
    lines.append(f"{len(reports)} checks, {len(reports) - bad} as expected, {bad} unexpected")
    return "\n".join(lines) + "\n"
