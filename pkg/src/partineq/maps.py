"""The six injections behind the A- and B-family partition inequalities.

Each map is a guarded case analysis evaluated in the published order.  An
input that matches no case raises :class:`UnmatchedCaseError`; that can only
happen through a transcription bug, so it is never caught here.

Two readings differ from the literal printed text, both forced by norm
preservation:

* ``gamma2star`` case iv keeps ``3^{f_3}`` in the image (the printed ``3^1``
  would change the norm whenever ``f_3 != 1``); this is also how the even-L
  map ``gamma2`` reads with ``m = 2``.
* The documented norm-9 collision of ``gamma2star`` is ``(4,5)`` and
  ``(3^3)`` landing on ``(2,3,4)``.  ``(2,4,5)`` has norm 11 and contains the
  forbidden part 5, so it cannot be the common image.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from partineq.fps import PowerSeries
from partineq.partitions import (
    ConstraintSet,
    Partition,
    count_series,
    enumerate_partitions,
    set_A,
    set_B,
)


class MapDomainError(ValueError):
    """Input partition is outside the domain set of the map."""


class ExcludedInputError(ValueError):
    """Input lies in the domain set but has a norm the map does not handle."""

    def __init__(self, norm: int, reason: str):
        super().__init__(f"norm {norm} excluded: {reason}")
        self.norm = norm
        self.reason = reason


class UnmatchedCaseError(AssertionError):
    """No case of the map applies; the case analysis is not exhaustive."""


VARIANTS = ("gammastar", "gamma", "gamma1star", "gamma1", "gamma2star", "gamma2")

# norms at which the published map is known to be two-to-one
DOCUMENTED_COLLISIONS = {"gamma2star": {9: ((Partition({4: 1, 5: 1}), Partition({3: 3})), Partition({2: 1, 3: 1, 4: 1}))}}

EXCLUDED_REASON = "the B-family maps are defined on norm > 3 only (the delta_{N,3} correction)"


@dataclass(frozen=True)
class InjectionId:
    variant: str
    L: int

    def __post_init__(self):
        v, L = self.variant, self.L
        ok = {
            "gammastar": L == 2,
            "gamma": L >= 3,
            "gamma1star": L == 3,
            "gamma1": L >= 5 and L % 2 == 1,
            "gamma2star": L == 4,
            "gamma2": L >= 6 and L % 2 == 0,
        }
        if v not in ok:
            raise ValueError(f"unknown injection {v!r}; expected one of {', '.join(VARIANTS)}")
        if not ok[v]:
            raise ValueError(f"injection {v} is not defined for L={L}")

    @classmethod
    def for_L(cls, family: str, L: int) -> "InjectionId":
        """The map proving the A-family (``"A"``) or B-family (``"B"``) inequality at ``L``."""
        if family == "A":
            return cls("gammastar" if L == 2 else "gamma", L)
        if family == "B":
            if L == 3:
                return cls("gamma1star", L)
            if L == 4:
                return cls("gamma2star", L)
            return cls("gamma1" if L % 2 else "gamma2", L)
        raise ValueError(f"unknown family {family!r}")

    @property
    def family(self) -> str:
        return "A" if self.variant in ("gammastar", "gamma") else "B"

    def domain(self) -> ConstraintSet:
        return set_A(self.L, 2) if self.family == "A" else set_B(self.L, 2)

    def codomain(self) -> ConstraintSet:
        return set_A(self.L, 1) if self.family == "A" else set_B(self.L, 1)

    def excluded_norms(self) -> tuple[int, ...]:
        return () if self.family == "A" else (1, 2, 3)

    def __str__(self):
        return f"{self.variant}(L={self.L})"


def _out(f: dict[int, int]) -> Partition:
    return Partition({p: v for p, v in f.items() if v})


def _gammastar(f):
    f2, f3 = f.get(2, 0), f.get(3, 0)
    if f2 > 0:
        return "i", _out({1: 2 * f2, 3: f3})
    if f3 > 0:
        return "ii", _out({1: 3, 3: f3 - 1})
    return None


def _gamma(f, L):
    s = min(f)
    fL = f.get(L, 0)
    g = dict(f)
    if 2 < s < L + 1:
        g[s] -= 1
        g[L] = g.get(L, 0) - (fL - (1 if L == s else 0))
        g[1] = (fL - (1 if L == s else 0)) * L + 1
        g[s - 1] = g.get(s - 1, 0) + 1
        return "i", _out(g)
    if s == L + 1:
        return "ii", _out({1: L + 1, L + 1: f[L + 1] - 1})
    if s == 2:
        g[2] -= 1
        g[L] = 0
        g[1] = fL * L + 2
        return "iii", _out(g)
    return None


def _gamma1star(f):
    f3, f4, f5 = f.get(3, 0), f.get(4, 0), f.get(5, 0)
    if f4 > 0:
        return "i", _out({2: 2 * f4, 3: f3, 5: f5})
    if f3 == 0:
        return "ii", _out({2: 1, 3: 1, 5: f5 - 1})
    if f3 > 1:
        return "iii", _out({2: 3, 3: f3 - 2, 5: f5})
    if f3 == 1 and f5 > 0:
        return "iv", _out({2: 1, 3: 2, 5: f5 - 1})
    return None


def _gamma1(f, L):
    m = (L + 1) // 2
    g = dict(f)
    if f.get(2 * m, 0) > 0:
        g[2] = f[2 * m] * m
        g[2 * m] = 0
        return "i", _out(g)
    evens = [i for i in range(2, m) if f.get(2 * i, 0) > 0]
    if evens:
        i = max(evens)
        g[2] = i
        g[2 * i] -= 1
        return "ii", _out(g)
    s = min(f)
    if s % 2 == 1 and s > 3:
        g[2] = 1
        g[s - 2] = g.get(s - 2, 0) + 1
        g[s] -= 1
        return "iii", _out(g)
    f3 = f.get(3, 0)
    if f3 >= 2:
        g[2] = 1
        g[3] -= 2
        g[4] = 1
        return "iv", _out(g)
    if f3 == 1:
        js = [j for j in range(2, m + 1) if f.get(2 * j + 1, 0) > 0]
        if js:
            j = js[0]
            g[3] = 0
            g[2 * j + 1] -= 1
            g[2] = 1
            g[j + 1] = g.get(j + 1, 0) + 2
            return "v", _out(g)
    return None


def _gamma2star(f):
    f3, f4, f5, f6 = (f.get(i, 0) for i in (3, 4, 5, 6))
    if f5 > 0 and f5 % 2 == 0:
        return "i", _out({2: (f5 // 2) * 5, 3: f3, 4: f4, 6: f6})
    if f5 % 2 == 1 and f3 > 0:
        return "ii", _out({2: ((f5 - 1) // 2) * 5 + 4, 3: f3 - 1, 4: f4, 6: f6})
    if f5 % 2 == 1 and f3 == 0:
        return "iii", _out({2: ((f5 - 1) // 2) * 5 + 1, 3: 1, 4: f4, 6: f6})
    if f5 == 0 and f6 > 0:
        return "iv.1", _out({2: 3, 3: f3, 4: f4, 6: f6 - 1})
    if f5 == 0 and f6 == 0 and f4 > 0:
        return "iv.2", _out({2: 2, 3: f3, 4: f4 - 1})
    if f4 == f5 == f6 == 0:
        if f3 == 2:
            return "v.1", _out({2: 1, 4: 1})
        if f3 >= 3:
            return "v.2", _out({2: 1, 3: f3 - 2, 4: 1})
    return None


def _gamma2(f, L):
    m = L // 2
    top = 2 * m + 1
    ft = f.get(top, 0)
    g = dict(f)
    if ft > 0 and ft % 2 == 0:
        g[top] = 0
        g[2] = (ft // 2) * top
        return "i", _out(g)
    if ft % 2 == 1:
        odd = [k for k in range(2, m + 1) if f.get(2 * k - 1, 0) > 0]
        g[top] = 0
        if odd:
            k = max(odd)
            g[2] = ((ft - 1) // 2) * top + m + k
            g[2 * k - 1] -= 1
            return "ii", _out(g)
        g[2] = ((ft - 1) // 2) * top + 1
        g[2 * m - 1] = 1
        return "iii", _out(g)
    evens = [k for k in range(2, m + 2) if f.get(2 * k, 0) > 0]
    if evens:
        k = max(evens)
        g[2] = k
        g[2 * k] -= 1
        return "iv", _out(g)
    f3 = f.get(3, 0)
    if f3 == 1:
        ii = [i for i in range(2, m + 1) if f.get(2 * i + 1, 0) > 0]
        if ii:
            i = ii[0]
            g[3] = 0
            g[2 * i + 1] -= 1
            g[2] = 1
            g[i + 1] = g.get(i + 1, 0) + 2
            return "v", _out(g)
        return None
    if f3 > 1:
        g[2] = 1
        g[3] -= 2
        g[4] = 1
        return "vi", _out(g)
    ii = [i for i in range(2, m) if f.get(2 * i + 1, 0) > 0]
    if ii:
        i = ii[0]
        g[2] = 1
        g[2 * i - 1] = g.get(2 * i - 1, 0) + 1
        g[2 * i + 1] -= 1
        return "vii", _out(g)
    return None


def apply_with_case(mid: InjectionId, p: Partition) -> tuple[Partition, str]:
    """Image of ``p`` together with the label of the case that produced it."""
    if not mid.domain().contains(p):
        raise MapDomainError(f"{p} is not in the domain {mid.domain().name} of {mid}")
    if p.norm in mid.excluded_norms():
        raise ExcludedInputError(p.norm, EXCLUDED_REASON)
    f = p.freq
    v, L = mid.variant, mid.L
    if v == "gammastar":
        r = _gammastar(f)
    elif v == "gamma":
        r = _gamma(f, L)
    elif v == "gamma1star":
        r = _gamma1star(f)
    elif v == "gamma1":
        r = _gamma1(f, L)
    elif v == "gamma2star":
        r = _gamma2star(f)
    else:
        r = _gamma2(f, L)
    if r is None:
        raise UnmatchedCaseError(f"no case of {mid} applies to {p}")
    case, image = r
    return image, case


def apply(mid: InjectionId, p: Partition) -> Partition:
    return apply_with_case(mid, p)[0]


@dataclass
class MapReport:
    map: InjectionId
    checked_norm_range: tuple[int, int]
    injectivity_ok: bool = True
    norm_preserved_ok: bool = True
    codomain_ok: bool = True
    collisions: list = field(default_factory=list)
    excluded_inputs: list = field(default_factory=list)
    domain_counts: dict = field(default_factory=dict)
    case_counts: dict = field(default_factory=dict)

    @property
    def documented_collisions_only(self) -> bool:
        """Every collision is documented, and every documented one in range was found."""
        doc = DOCUMENTED_COLLISIONS.get(self.map.variant, {})
        found = {(a.norm, frozenset((a, b)), img) for a, b, img in self.collisions}
        lo, hi = self.checked_norm_range
        expected = {
            (n, frozenset(pre), img) for n, (pre, img) in doc.items() if lo <= n <= hi
        }
        return found == expected

    @property
    def ok(self) -> bool:
        return self.norm_preserved_ok and self.codomain_ok and self.documented_collisions_only

    def to_json(self) -> dict:
        return {
            "map": self.map.variant,
            "L": self.map.L,
            "checked_norm_range": list(self.checked_norm_range),
            "injectivity_ok": self.injectivity_ok,
            "norm_preserved_ok": self.norm_preserved_ok,
            "codomain_ok": self.codomain_ok,
            "documented_collisions_only": self.documented_collisions_only,
            "collisions": [[str(a), str(b), str(img)] for a, b, img in self.collisions],
            "excluded_inputs": [[n, reason] for n, reason in self.excluded_inputs],
        }


def _images(mid: InjectionId, N: int, report: MapReport | None = None) -> dict[Partition, Partition]:
    """image -> first preimage over all domain partitions of norm N."""
    codomain = mid.codomain()
    seen: dict[Partition, Partition] = {}
    domain = enumerate_partitions(N, mid.domain())
    if report is not None:
        report.domain_counts[N] = len(domain)
    for p in domain:
        try:
            img, case = apply_with_case(mid, p)
        except ExcludedInputError as exc:
            if report is not None:
                report.excluded_inputs.append((N, exc.reason))
            continue
        if report is not None:
            report.case_counts[case] = report.case_counts.get(case, 0) + 1
            if img.norm != p.norm:
                report.norm_preserved_ok = False
            if not codomain.contains(img):
                report.codomain_ok = False
            if img in seen:
                report.injectivity_ok = False
                report.collisions.append((seen[img], p, img))
                continue
        seen.setdefault(img, p)
    return seen


def verify_injection(mid: InjectionId, N_max: int, N_min: int = 1) -> MapReport:
    """Apply the map to every domain partition of norm N_min..N_max and audit the results."""
    if N_max < 1:
        raise ValueError("N_max must be at least 1")
    report = MapReport(mid, (N_min, N_max))
    for N in range(N_min, N_max + 1):
        _images(mid, N, report)
    return report


def image_complement(mid: InjectionId, N: int) -> list[Partition]:
    """Codomain partitions of norm N that are not images, in canonical order."""
    images = _images(mid, N)
    return [p for p in enumerate_partitions(N, mid.codomain()) if p not in images]


EXHAUSTIVE_BOUND = 60


def complement_counts(mid: InjectionId, prec: int, exhaustive_to: int = EXHAUSTIVE_BOUND) -> list[int]:
    """|image_complement(mid, N)| for N < prec.

    Below ``exhaustive_to`` every domain partition is mapped and the distinct
    images are subtracted from a count of the codomain.  Beyond it the map is
    trusted to be injective, so the complement count is codomain minus domain;
    that shortcut is only taken when the exhaustive range found no collision
    other than a documented one, otherwise the whole range is done by brute force.
    """
    codomain = mid.codomain()
    total = count_series(codomain, prec)
    dom = count_series(mid.domain(), prec)
    documented = DOCUMENTED_COLLISIONS.get(mid.variant, {})
    # excluded and collision norms must stay in the brute-force range
    exhaustive_to = max(exhaustive_to, 1 + max((*mid.excluded_norms(), *documented), default=0))
    out = []
    trusted = True
    for N in range(prec):
        if N >= exhaustive_to and trusted:
            out.append(total[N] - dom[N])
            continue
        report = MapReport(mid, (N, N))
        images = _images(mid, N, report) if N else {}
        if not report.codomain_ok:
            raise UnmatchedCaseError(f"{mid} sends a norm-{N} partition outside the codomain")
        if report.collisions and N not in documented:
            trusted = False
        out.append(total[N] - len(images))
    return out


def complement_genfun(mid: InjectionId, prec: int, exhaustive_to: int = EXHAUSTIVE_BOUND) -> PowerSeries:
    return PowerSeries(complement_counts(mid, prec, exhaustive_to), prec)


def preimage_table(mid: InjectionId, N: int) -> list[tuple[Partition | None, Partition]]:
    """Codomain partitions of norm N paired with their preimage (or None)."""
    inverse = {img: pre for img, pre in _images(mid, N).items()}
    return [(inverse.get(p), p) for p in enumerate_partitions(N, mid.codomain())]
