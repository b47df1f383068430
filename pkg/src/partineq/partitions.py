"""Partitions in frequency representation, their statistics, and set oracles.

Two independent ways of counting a constrained family are provided:

* :func:`enumerate_partitions` lists every member explicitly (recursive
  descent over part sizes), which is the ground truth for small norms;
* :func:`count_series` counts members of every norm below ``prec`` with a
  frequency-by-frequency dynamic program on plain integer lists.

Neither path touches the closed-form builders in :mod:`partineq.genfun`, so
either can serve as an oracle for them.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Mapping

from partineq.fps import PowerSeries


class Partition:
    """A partition stored as sorted ``(part, frequency)`` pairs, zero frequencies dropped."""

    __slots__ = ("_items", "_norm")

    def __init__(self, freq: Mapping[int, int] | None = None):
        items = []
        for part, f in sorted((freq or {}).items()):
            if part < 1:
                raise ValueError(f"parts must be positive integers, got {part}")
            if f < 0:
                raise ValueError(f"frequency of {part} is negative")
            if f:
                items.append((int(part), int(f)))
        self._items = tuple(items)
        self._norm = sum(p * f for p, f in items)

    @classmethod
    def from_parts(cls, parts) -> "Partition":
        freq: dict[int, int] = {}
        for p in parts:
            freq[p] = freq.get(p, 0) + 1
        return cls(freq)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Read the canonical text form, e.g. ``"1^4 3^2 10^1"``; ``^1`` may be omitted."""
        text = text.strip().strip("()").replace(",", " ")
        freq: dict[int, int] = {}
        for tok in text.split():
            m = re.fullmatch(r"(\d+)(?:\^(\d+))?", tok)
            if not m:
                raise ValueError(f"cannot parse partition token {tok!r}")
            part = int(m.group(1))
            freq[part] = freq.get(part, 0) + int(m.group(2) or 1)
        return cls(freq)

    @property
    def freq(self) -> dict[int, int]:
        return dict(self._items)

    def f(self, part: int) -> int:
        for p, f in self._items:
            if p == part:
                return f
        return 0

    @property
    def items(self) -> tuple[tuple[int, int], ...]:
        return self._items

    @property
    def norm(self) -> int:
        return self._norm

    @property
    def parts(self) -> tuple[int, ...]:
        """Parts in weakly increasing order."""
        return tuple(p for p, f in self._items for _ in range(f))

    def __bool__(self):
        return bool(self._items)

    def __eq__(self, other):
        if isinstance(other, Partition):
            return self._items == other._items
        return NotImplemented

    def __lt__(self, other):
        return self.parts < other.parts

    def __hash__(self):
        return hash(self._items)

    def __str__(self):
        if not self._items:
            return "()"
        return " ".join(f"{p}^{f}" for p, f in self._items)

    def __repr__(self):
        return f"Partition({str(self)!r})"

    def tuple_str(self) -> str:
        """Frequency notation with unit exponents omitted, e.g. ``(1^10, 2)``."""
        body = ", ".join(f"{p}^{f}" if f > 1 else f"{p}" for p, f in self._items)
        return f"({body})"

    def to_json(self) -> list[list[int]]:
        return [[p, f] for p, f in self._items]

    @classmethod
    def from_json(cls, pairs) -> "Partition":
        return cls({p: f for p, f in pairs})


def norm(p: Partition) -> int:
    return p.norm


@dataclass(frozen=True)
class Stats:
    smallest: int
    largest: int
    count: int
    rank: int


def stats(p: Partition) -> Stats:
    """Smallest part, largest part, number of parts and rank ``largest - count``."""
    if not p:
        raise ValueError("smallest and largest parts are undefined for the empty partition")
    items = p.items
    nu = sum(f for _, f in items)
    largest = items[-1][0]
    return Stats(items[0][0], largest, nu, largest - nu)


def t_stat(p: Partition) -> int:
    """Length of the initial odd-frequency chain: largest t with f_1..f_t all odd."""
    t = 0
    freq = p.freq
    while freq.get(t + 1, 0) % 2 == 1:
        t += 1
    return t


# constraint sets


@dataclass(frozen=True)
class ConstraintSet:
    """Membership conditions for a family of partitions.

    ``fixed_frequencies`` pins the multiplicity of individual parts (a zero
    entry is the same as forbidding the part).  ``smallest_part_parity`` is 0
    for even and 1 for odd.
    """

    min_part: int | None = None
    max_part: int | None = None
    forbidden_parts: frozenset = frozenset()
    smallest_part_equals: int | None = None
    smallest_part_at_least: int | None = None
    largest_minus_smallest_at_most: int | None = None
    smallest_part_parity: int | None = None
    nonempty: bool = False
    fixed_frequencies: tuple = ()
    distinct: bool = False
    name: str = field(default="", compare=False)

    def fixed(self) -> dict[int, int]:
        return dict(self.fixed_frequencies)

    @property
    def needs_smallest(self) -> bool:
        return (
            self.smallest_part_equals is not None
            or self.smallest_part_at_least is not None
            or self.largest_minus_smallest_at_most is not None
            or self.smallest_part_parity is not None
        )

    def lower(self) -> int:
        lo = 1
        for v in (self.min_part, self.smallest_part_at_least, self.smallest_part_equals):
            if v is not None:
                lo = max(lo, v)
        return lo

    def is_consistent(self) -> bool:
        lo = self.lower()
        if self.max_part is not None and lo > self.max_part:
            return False
        if self.smallest_part_equals is not None:
            s = self.smallest_part_equals
            if s in self.forbidden_parts or self.fixed().get(s, None) == 0:
                return False
            if self.smallest_part_parity is not None and s % 2 != self.smallest_part_parity:
                return False
        for p, f in self.fixed_frequencies:
            if f > 0 and (p in self.forbidden_parts or p < lo):
                return False
            if f > 1 and self.distinct:
                return False
            if f > 0 and self.max_part is not None and p > self.max_part:
                return False
        return True

    def allows_part(self, p: int) -> bool:
        if p < 1 or p in self.forbidden_parts:
            return False
        if self.min_part is not None and p < self.min_part:
            return False
        if self.max_part is not None and p > self.max_part:
            return False
        return self.fixed().get(p, 1) != 0

    def contains(self, p: Partition) -> bool:
        """Independent membership test, used to re-check enumerator output."""
        if not p:
            return not self.nonempty and not self.needs_smallest and not any(
                f > 0 for _, f in self.fixed_frequencies
            )
        for part, f in p.items:
            if not self.allows_part(part):
                return False
            if self.distinct and f > 1:
                return False
        fixed = self.fixed()
        for part, f in fixed.items():
            if p.f(part) != f:
                return False
        st = stats(p)
        if self.smallest_part_equals is not None and st.smallest != self.smallest_part_equals:
            return False
        if self.smallest_part_at_least is not None and st.smallest < self.smallest_part_at_least:
            return False
        if self.smallest_part_parity is not None and st.smallest % 2 != self.smallest_part_parity:
            return False
        if (
            self.largest_minus_smallest_at_most is not None
            and st.largest - st.smallest > self.largest_minus_smallest_at_most
        ):
            return False
        return True


UNRESTRICTED = ConstraintSet(name="U*")
POSITIVE = ConstraintSet(nonempty=True, name="U")
DISTINCT = ConstraintSet(nonempty=True, distinct=True, name="D")


def set_A(L: int, i: int) -> ConstraintSet:
    """A_{L,1}: smallest part 1, parts <= L+1, f_L = delta_{L,1}; A_{L,2}: parts in 2..L+1."""
    if L < 1:
        raise ValueError("A-sets are defined for L >= 1")
    if i == 1:
        if L == 1:
            return ConstraintSet(
                max_part=2, smallest_part_equals=1, nonempty=True,
                fixed_frequencies=((1, 1),), name="A_{1,1}",
            )
        return ConstraintSet(
            max_part=L + 1, forbidden_parts=frozenset({L}), smallest_part_equals=1,
            nonempty=True, name=f"A_{{{L},1}}",
        )
    if i == 2:
        return ConstraintSet(min_part=2, max_part=L + 1, nonempty=True, name=f"A_{{{L},2}}")
    raise ValueError(f"unknown A-set index {i}")


def set_B(L: int, i: int) -> ConstraintSet:
    """B_{L,1}: smallest part 2, parts <= L+2, f_{L+1} = delta_{L,1}; B_{L,2}: parts in 3..L+2."""
    if L < 1:
        raise ValueError("B-sets are defined for L >= 1")
    if i == 1:
        if L == 1:
            return ConstraintSet(
                max_part=3, smallest_part_equals=2, nonempty=True,
                fixed_frequencies=((2, 1),), name="B_{1,1}",
            )
        return ConstraintSet(
            max_part=L + 2, forbidden_parts=frozenset({L + 1}), smallest_part_equals=2,
            nonempty=True, name=f"B_{{{L},1}}",
        )
    if i == 2:
        return ConstraintSet(min_part=3, max_part=L + 2, nonempty=True, name=f"B_{{{L},2}}")
    raise ValueError(f"unknown B-set index {i}")


def set_C(L: int, s: int, i: int) -> ConstraintSet:
    """C_{L,s,1}: smallest part s, parts <= L+s, L+s-1 absent; C_{L,s,2}: parts in s+1..L+s."""
    if L < 1 or s < 1:
        raise ValueError("C-sets need L >= 1 and s >= 1")
    if i == 1:
        return ConstraintSet(
            max_part=L + s, forbidden_parts=frozenset({L + s - 1}), smallest_part_equals=s,
            nonempty=True, name=f"C_{{{L},{s},1}}",
        )
    if i == 2:
        return ConstraintSet(min_part=s + 1, max_part=L + s, nonempty=True, name=f"C_{{{L},{s},2}}")
    raise ValueError(f"unknown C-set index {i}")


def set_Cstar(L: int, s: int) -> ConstraintSet:
    """C*_{L,s,1}: smallest part s, parts <= L+s, part L absent (needs L >= s+1)."""
    if L < s + 1:
        raise ValueError(f"C*-sets need L >= s+1, got L={L}, s={s}")
    return ConstraintSet(
        max_part=L + s, forbidden_parts=frozenset({L}), smallest_part_equals=s,
        nonempty=True, name=f"C*_{{{L},{s},1}}",
    )


def bounded_difference(L: int, **kw) -> ConstraintSet:
    """Non-empty partitions with largest minus smallest part at most L."""
    return ConstraintSet(largest_minus_smallest_at_most=L, nonempty=True, **kw)


# enumeration


def _smallest_candidates(c: ConstraintSet, N: int) -> list[int]:
    if c.smallest_part_equals is not None:
        s = c.smallest_part_equals
        ok = c.allows_part(s) and s >= c.lower() and (
            c.smallest_part_parity is None or s % 2 == c.smallest_part_parity
        )
        return [s] if ok else []
    lo = c.lower()
    hi = N if c.max_part is None else min(N, c.max_part)
    out = []
    for s in range(lo, hi + 1):
        if c.smallest_part_parity is not None and s % 2 != c.smallest_part_parity:
            continue
        if c.allows_part(s):
            out.append(s)
    return out


def _window(c: ConstraintSet, s: int, N: int) -> list[int]:
    """Allowed parts strictly above the smallest part ``s`` for norm budget ``N``."""
    hi = N
    if c.max_part is not None:
        hi = min(hi, c.max_part)
    if c.largest_minus_smallest_at_most is not None:
        hi = min(hi, s + c.largest_minus_smallest_at_most)
    return [p for p in range(s + 1, hi + 1) if c.allows_part(p)]


def _choices(c: ConstraintSet, fixed: dict[int, int], part: int, budget: int, forced: bool):
    """Admissible frequencies of ``part`` in descending order."""
    if part in fixed:
        f = fixed[part]
        if (forced and f == 0) or f * part > budget:
            return []
        return [f]
    top = budget // part
    if c.distinct:
        top = min(top, 1)
    lo = 1 if forced else 0
    return list(range(top, lo - 1, -1))


def enumerate_partitions(N: int, c: ConstraintSet = UNRESTRICTED) -> list[Partition]:
    """Every partition of ``N`` in ``c``, each once, lexicographic on increasing part lists."""
    if N < 0:
        raise ValueError("norm must be non-negative")
    if not c.is_consistent():
        return []
    fixed = c.fixed()
    out: list[Partition] = []
    if N == 0:
        empty = Partition()
        return [empty] if c.contains(empty) else []

    def descend(parts: list[int], idx: int, budget: int, chosen: dict[int, int]):
        if idx == len(parts):
            if budget == 0 and all(chosen.get(p, 0) == f for p, f in fixed.items()):
                out.append(Partition(chosen))
            return
        part = parts[idx]
        for f in _choices(c, fixed, part, budget, False):
            if f:
                chosen[part] = f
            descend(parts, idx + 1, budget - f * part, chosen)
            chosen.pop(part, None)

    for s in _smallest_candidates(c, N):
        if any(f > 0 and p < s for p, f in fixed.items()):
            continue
        window = _window(c, s, N)
        for f in _choices(c, fixed, s, N, True):
            descend(window, 0, N - f * s, {s: f})
    return out


# alias matching the operation name; shadows the builtin only inside callers that import it
enumerate = enumerate_partitions  # noqa: A001


# counting oracle on integer lists


def _part_factor(c: list[int], part: int, mode: str, fixed: int | None):
    """Multiply count vector ``c`` by the generating factor of one part size, in place."""
    p = len(c)
    if fixed is not None:
        k = fixed * part
        if mode == "forced" and fixed == 0:
            c[:] = [0] * p
            return
        c[k:] = c[: p - k] if k < p else []
        c[:k] = [0] * min(k, p)
        return
    if mode == "distinct" or mode == "distinct-forced":
        if mode == "distinct-forced":
            c[part:] = c[: p - part] if part < p else []
            c[:part] = [0] * min(part, p)
        else:
            for i in range(p - 1, part - 1, -1):
                c[i] += c[i - part]
        return
    if mode == "forced":
        c[part:] = c[: p - part] if part < p else []
        c[:part] = [0] * min(part, p)
    for i in range(part, p):
        c[i] += c[i - part]


def count_series(c: ConstraintSet, prec: int, weight=None) -> list[int]:
    """Number (or signed weight, by smallest part) of members of ``c`` of each norm below ``prec``.

    ``weight`` optionally maps the smallest part to an integer multiplier.
    """
    out = [0] * prec
    if not c.is_consistent():
        return out
    fixed = c.fixed()
    if prec > 0 and c.contains(Partition()):
        out[0] = 1 if weight is None else 0
    for s in _smallest_candidates(c, prec - 1):
        if any(f > 0 and p < s for p, f in fixed.items()):
            continue
        w = 1 if weight is None else weight(s)
        if not w:
            continue
        vec = [0] * prec
        vec[0] = 1
        _part_factor(vec, s, "distinct-forced" if c.distinct else "forced", fixed.get(s))
        for part in _window(c, s, prec - 1):
            _part_factor(vec, part, "distinct" if c.distinct else "free", fixed.get(part))
        # pinned parts above the window (or above prec) leave nothing below prec
        hi = max(_window(c, s, prec - 1), default=s)
        if any(f > 0 and p > hi for p, f in fixed.items()):
            continue
        for n in range(prec):
            out[n] += w * vec[n]
    return out


def count(N: int, c: ConstraintSet) -> int:
    return count_series(c, N + 1)[N]


class Weight(str, enum.Enum):
    ALTERNATING_SMALLEST = "alternating-smallest-part"
    T_STATISTIC = "t-statistic"
    ALTERNATING_RANK_DISTINCT = "alternating-rank-on-distinct"


def weight_of(w: Weight | str, p: Partition) -> int:
    w = Weight(w)
    if not p:
        return 0
    if w is Weight.ALTERNATING_SMALLEST:
        return 1 if stats(p).smallest % 2 else -1
    if w is Weight.T_STATISTIC:
        return t_stat(p)
    if any(f > 1 for _, f in p.items):
        raise ValueError("rank weight is defined on partitions into distinct parts")
    return -1 if stats(p).rank % 2 else 1


def genfun_of_set(c: ConstraintSet, prec: int, method: str = "count") -> PowerSeries:
    """Generating function of ``c`` to ``prec``, by counting or by explicit enumeration."""
    if method == "enumerate":
        return PowerSeries([len(enumerate_partitions(n, c)) for n in range(prec)], prec)
    if method != "count":
        raise ValueError(f"unknown method {method!r}")
    return PowerSeries(count_series(c, prec), prec)


def _t_weight_counts(prec: int) -> list[int]:
    """sum over partitions of t(pi) q^|pi|, straight from the chain definition.

    t(pi) = i exactly when f_1..f_i are odd and f_{i+1} is even, so the total is
    sum_i i * #{f_1..f_i odd, f_{i+1} even, higher parts free}.
    """
    out = [0] * prec
    # free[j]: parts > i+1 unrestricted, rebuilt per i; chain[j]: f_1..f_i odd
    chain = [0] * prec
    chain[0] = 1
    i = 0
    while True:
        i += 1
        # extend chain with an odd frequency of part i
        nxt = [0] * prec
        for n in range(prec):
            if chain[n]:
                for f in range(1, (prec - 1 - n) // i + 1, 2):
                    nxt[n + f * i] += chain[n]
        chain = nxt
        if not any(chain):
            break
        # even frequency of part i+1, everything above free
        vec = [0] * prec
        for n in range(prec):
            if chain[n]:
                for f in range(0, (prec - 1 - n) // (i + 1) + 1, 2):
                    vec[n + f * (i + 1)] += chain[n]
        for part in range(i + 2, prec):
            for n in range(part, prec):
                vec[n] += vec[n - part]
        for n in range(prec):
            out[n] += i * vec[n]
    return out


def _rank_distinct_counts(prec: int) -> list[int]:
    """sum over distinct partitions of (-1)^(largest - count), tracked by a parity DP."""
    out = [0] * prec
    # below[par][n]: distinct partitions of n with all parts < l and count parity par
    below = [[1] + [0] * (prec - 1), [0] * prec]
    for l in range(1, prec):
        for par in (0, 1):
            sign = -1 if (l - par - 1) % 2 else 1
            src = below[par]
            for n in range(prec - l):
                if src[n]:
                    out[n + l] += sign * src[n]
        even, odd = below
        below = [
            [even[n] + (odd[n - l] if n >= l else 0) for n in range(prec)],
            [odd[n] + (even[n - l] if n >= l else 0) for n in range(prec)],
        ]
    return out


def weighted_genfun(c: ConstraintSet, weight: Weight | str, prec: int, method: str = "count") -> PowerSeries:
    """sum of weight(pi) q^|pi| over members of ``c``, for norms below ``prec``."""
    w = Weight(weight)
    if w is Weight.ALTERNATING_RANK_DISTINCT and not c.distinct:
        raise ValueError("rank weight requires a distinct-parts constraint set")
    if method == "enumerate":
        coeffs = [sum(weight_of(w, p) for p in enumerate_partitions(n, c)) for n in range(prec)]
        return PowerSeries(coeffs, prec)
    if w is Weight.ALTERNATING_SMALLEST:
        return PowerSeries(count_series(c, prec, weight=lambda s: 1 if s % 2 else -1), prec)
    if w is Weight.T_STATISTIC:
        if c not in (UNRESTRICTED, POSITIVE):
            raise ValueError("t-statistic counting is only implemented for unrestricted partitions")
        return PowerSeries(_t_weight_counts(prec), prec)
    if c != DISTINCT:
        raise ValueError("rank-weight counting is only implemented for all distinct partitions")
    return PowerSeries(_rank_distinct_counts(prec), prec)
