"""Closed-form q-series builders, addressed by a small string grammar.

A :class:`SeriesId` such as ``H_L1:3`` or ``H_Lsk:5:2:6`` names a builder and
its integer parameters.  Every builder returns an exact
:class:`~partineq.fps.PowerSeries`; infinite sums stop as soon as the next
term's lowest possible exponent reaches ``prec``.

Builders work on plain coefficient lists and only use the linear-time
kernels for multiplying or dividing by ``1 +- q^k``; a full Cauchy product is
never needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from partineq.fps import PowerSeries, _div_binomial, _mul_binomial, q_binom
from partineq.hypergeom import mono, phi, poch


class ParameterError(ValueError):
    """Builder parameters outside the range where the formula is defined."""


# list kernels


def _unit(prec: int) -> list[int]:
    c = [0] * prec
    c[0] = 1
    return c


def _mono(exponent: int, prec: int, coeff: int = 1) -> list[int]:
    c = [0] * prec
    if 0 <= exponent < prec:
        c[exponent] = coeff
    return c


def _shifted(c: list[int], k: int) -> list[int]:
    p = len(c)
    if k >= p:
        return [0] * p
    return [0] * k + c[: p - k]


def _div_poch(c: list[int], start: int, count: int, step: int = 1, sign: int = -1) -> list[int]:
    """c <- c / prod_{i<count} (1 + sign*q^(start + step*i))."""
    p = len(c)
    for i in range(count):
        e = start + step * i
        if e >= p:
            break
        _div_binomial(c, e, sign)
    return c


def _mul_poch(c: list[int], start: int, count: int, step: int = 1, sign: int = -1) -> list[int]:
    p = len(c)
    for i in range(count):
        e = start + step * i
        if e >= p:
            break
        _mul_binomial(c, e, sign)
    return c


def _acc(total: list[int], term: list[int], scale: int = 1) -> None:
    for i, v in enumerate(term):
        if v:
            total[i] += scale * v


def _ps(c: list[int]) -> PowerSeries:
    return PowerSeries._wrap(c, len(c))


def _recip_minus_one(start: int, count: int, prec: int, step: int = 1) -> list[int]:
    """1/(q^start; q^step)_count - 1: a 'reciprocal product take away one' term."""
    c = _div_poch(_unit(prec), start, count, step)
    c[0] -= 1
    return c


def _times(a: list[int], b: list[int]) -> list[int]:
    return list((_ps(a) * _ps(b)).coeffs)


# the A-family series


def H_L1(L: int, prec: int) -> PowerSeries:
    """q/((q;q)_{L-1}(1-q^{L+1})) - (1/(q^2;q)_L - 1)."""
    t = _div_poch(_mono(1, prec), 1, L - 1)
    _div_binomial(t, L + 1, -1) if L + 1 < prec else None
    _acc(t, _recip_minus_one(2, L, prec), -1)
    return _ps(t)


def H_L1_secondary(L: int, prec: int) -> PowerSeries:
    """Manifestly non-negative form of H_L1; valid for every L >= 1."""
    total = [0] * prec
    for s in range(2, L + 1):
        _acc(total, _div_poch(_mono(2 * s + 1, prec), s, L + 2 - s))
    t = _mono(1, prec)
    _div_poch(t, L + 1, 1)
    _acc(total, t)
    # q^3 (1 - q^(L-2)) = q^3 - q^(L+1), a polynomial even for L < 2
    t = _mono(3, prec)
    if L + 1 < prec:
        t[L + 1] -= 1
    _acc(total, _div_poch(t, 1, L + 1))
    return _ps(total)


def H_L1_fourterm(L: int, prec: int) -> PowerSeries:
    """Complement of the gamma image for L >= 3, one summand per complement shape."""
    total = [0] * prec
    for s in range(2, L):
        _acc(total, _div_poch(_mono(2 * s + 1, prec), s, L + 2 - s))
    t = _mono(2 * L + 1, prec)
    _div_poch(t, L, 2)
    _acc(total, t)
    _acc(total, _div_poch(_mono(1, prec), L + 1, 1))
    t = [0] * prec
    for e in range(3, L + 1):
        if e < prec:
            t[e] = 1
    _acc(total, _div_poch(t, 2, L))
    return _ps(total)


def H_21_secondary(prec: int) -> PowerSeries:
    """q/(1-q^3) + q^5/((1-q^2)(1-q^3)): the complement of the L=2 map."""
    total = _div_poch(_mono(1, prec), 3, 1)
    _acc(total, _div_poch(_mono(5, prec), 2, 2))
    return _ps(total)


def summation_lhs(L: int, prec: int) -> PowerSeries:
    total = [0] * prec
    for s in range(1, L + 1):
        _acc(total, _div_poch(_mono(2 * s + 1, prec), s, L + 2 - s))
    return _ps(total)


def summation_rhs(L: int, prec: int) -> PowerSeries:
    total = _unit(prec)
    _acc(total, _div_poch(_mono(1, prec), L + 1, 1), -1)
    t = _mono(1, prec, 2)
    t[0] = -1
    _acc(total, _div_poch(t, 1, L + 1))
    return _ps(total)


def infinite_summation_lhs(prec: int) -> PowerSeries:
    """sum_{s>=1} q^(2s+1)/(q^s;q)_inf, stepping 1/(q^s;q)_inf -> 1/(q^(s+1);q)_inf."""
    total = [0] * prec
    r = _div_poch(_unit(prec), 1, prec)
    s = 1
    while 2 * s + 1 < prec:
        _acc(total, _shifted(r, 2 * s + 1))
        _mul_binomial(r, s, -1)
        s += 1
    return _ps(total)


def infinite_summation_rhs(prec: int) -> PowerSeries:
    total = _mono(0, prec)
    if prec > 1:
        total[1] -= 1
    t = _mono(1, prec, 2)
    t[0] = -1
    _acc(total, _div_poch(t, 1, prec))
    return _ps(total)


# the B-family series


def H_Lsk(L: int, s: int, k: int, prec: int) -> PowerSeries:
    """q^s(1-q^k)/(q^s;q)_{L+1} - (1/(q^{s+1};q)_L - 1)."""
    t = _mono(s, prec)
    if s + k < prec:
        t[s + k] -= 1
    _div_poch(t, s, L + 1)
    _acc(t, _recip_minus_one(s + 1, L, prec), -1)
    return _ps(t)


def H_L2(L: int, prec: int) -> PowerSeries:
    """q^3 + delta_{L,4} q^9 + q^2(1-q^{L+1})/(q^2;q)_{L+1} - (1/(q^3;q)_L - 1)."""
    t = list(H_Lsk(L, 2, L + 1, prec).coeffs)
    if prec > 3:
        t[3] += 1
    if L == 4 and prec > 9:
        t[9] += 1
    return _ps(t)


def Hstar_L2(L: int, prec: int) -> PowerSeries:
    return H_Lsk(L, 2, L, prec)


def H_32_secondary(prec: int) -> PowerSeries:
    total = _div_poch(_mono(10, prec), 3, 3)
    _acc(total, _div_poch(_mono(11, prec), 3, 2, step=2))
    _acc(total, _div_poch(_mono(2, prec), 5, 1))
    return _ps(total)


def H_L2_long_terms(L: int, prec: int) -> list[PowerSeries]:
    """The eleven manifestly non-negative summands for odd L >= 5, in catalog order."""
    h = (L + 1) // 2
    terms = []

    t = [0] * prec
    for j in range(2, (L - 1) // 2 + 1):
        a = _div_poch(_mono(2 * j, prec), 3, h, step=2)
        _div_poch(a, 4, j - 1, step=2)
        _acc(t, _times(a, _recip_minus_one(2 * j + 2, h - j, prec, step=2)))
    terms.append(t)

    terms.append(_div_poch(_mono(2, prec), L + 1, 2))

    t = [0] * prec
    for j in range(4, L + 1):
        _acc(t, _div_poch(_mono(3 * j + 2, prec), j, L + 3 - j))
    terms.append(t)

    t = [0] * prec
    for j in range((L + 5) // 2, L + 1):
        _acc(t, _div_poch(_mono(2 * j + 2, prec), j + 1, L + 2 - j))
    terms.append(t)

    t = [0] * prec
    for j in range(4, (L + 3) // 2 + 1):
        a = _div_poch(_mono(2 * j + 2, prec), 2 * j - 1, (L + 5) // 2 - j, step=2)
        inner = _div_poch(_unit(prec), j + 1, j - 2)
        _div_poch(inner, 2 * j, (L + 3) // 2 - j, step=2)
        inner[0] -= 1
        _acc(t, _times(a, inner))
    terms.append(t)

    t = [0] * prec
    for j in range(2, (L - 1) // 2 + 1):
        a = _div_poch(_mono(2 * j + 3, prec), 2 * j + 3, h - j, step=2)
        _acc(t, _times(a, _recip_minus_one(2 * j + 2, h - j, prec, step=2)))
    terms.append(t)

    t = [0] * prec
    for j in range(3, (L - 1) // 2 + 1):
        _acc(t, _div_poch(_mono(2 * j + 2, prec), 2 * j + 1, L + 2 - 2 * j))
    terms.append(t)

    a = _div_poch(_mono(6, prec), 5, (L - 1) // 2, step=2)
    terms.append(_times(a, _recip_minus_one(6, (L - 3) // 2, prec, step=2)))

    terms.append(_div_poch(_mono(13, prec), 3, L))

    a = _mono(5, prec)
    if prec > 9:
        a[9] += 1
    _div_poch(a, 3, h, step=2)
    terms.append(_times(a, _recip_minus_one(6, (L - 3) // 2, prec, step=2)))

    terms.append(_div_poch(_mono(11, prec), 3, h, step=2))
    return [_ps(t) for t in terms]


def H_L2_long(L: int, prec: int) -> PowerSeries:
    total = [0] * prec
    for t in H_L2_long_terms(L, prec):
        _acc(total, list(t.coeffs))
    return _ps(total)


# sums over the number of parts


def _binom_sum(L: int, prec: int, exp_of_n: Callable[[int], int], denom) -> list[int]:
    """sum_{n>=1} q^{exp(n)} * B_n / denom(n), B_n = [L+n-1 choose n-1]_q, stepped in n."""
    total = [0] * prec
    b = _unit(prec)
    n = 1
    while exp_of_n(n) < prec:
        term = _shifted(b, exp_of_n(n))
        k, sign = denom(n)
        _div_binomial(term, k, sign)
        _acc(total, term)
        # B_{n+1} = B_n (1 - q^{L+n}) / (1 - q^n)
        if L + n < prec:
            _mul_binomial(b, L + n, -1)
        _div_binomial(b, n, -1)
        n += 1
    return total


def G_L1(L: int, prec: int) -> PowerSeries:
    """q/(q;q)_{L+1} - sum_{n>=1} q^{2n}/(1-q^n) [L+n-1 choose n-1]."""
    total = _div_poch(_mono(1, prec), 1, L + 1)
    _acc(total, _binom_sum(L, prec, lambda n: 2 * n, lambda n: (n, -1)), -1)
    return _ps(total)


def G_L2(L: int, prec: int) -> PowerSeries:
    total = _div_poch(_mono(2, prec), 2, L + 1)
    _acc(total, _binom_sum(L, prec, lambda n: 3 * n, lambda n: (n, -1)), -1)
    return _ps(total)


def weighted_ls_binom(L: int, prec: int) -> PowerSeries:
    """sum_{n>=1} q^n/(1+q^n) [L+n-1 choose n-1]."""
    return _ps(_binom_sum(L, prec, lambda n: n, lambda n: (n, 1)))


def weighted_ls(L: int, prec: int) -> PowerSeries:
    """sum_{s>=1} (-1)^(s+1) q^s/(q^s;q)_{L+1}; L=0 gives the divisor-type series."""
    total = [0] * prec
    for s in range(1, prec):
        _acc(total, _div_poch(_mono(s, prec), s, L + 1), 1 if s % 2 else -1)
    return _ps(total)


def mod4_series(prec: int) -> PowerSeries:
    return weighted_ls(0, prec)


def odds_min_gt1(L: int, prec: int) -> PowerSeries:
    total = [0] * prec
    n = 1
    while 2 * n + 1 < prec:
        _acc(total, _div_poch(_mono(2 * n + 1, prec), 2 * n + 1, L + 1))
        n += 1
    return _ps(total)


def weighted_ls_pieces(L: int, prec: int) -> PowerSeries:
    total = [0] * prec
    for s in range(2, L + 1):
        _acc(total, _div_poch(_mono(2 * s + 1, prec), s, L + 2 - s))
    _acc(total, _div_poch(_mono(1, prec), L + 1, 1))
    t = _mono(3, prec)
    if L + 1 < prec:
        t[L + 1] -= 1
    _acc(total, _div_poch(t, 1, L + 1))
    if L < prec:
        _div_binomial(total, L, -1)
    _acc(total, list(odds_min_gt1(L, prec).coeffs), 2)
    return _ps(total)


def jackson_rhs(L: int, prec: int) -> PowerSeries:
    """1/(q;q)_L sum_{n>=1} q^{n(n+1)/2}/((-q;q)_n (1-q^{L+n}))."""
    total = [0] * prec
    d = _unit(prec)
    n = 1
    while n * (n + 1) // 2 < prec:
        _div_binomial(d, n, 1)
        term = _shifted(d, n * (n + 1) // 2)
        if L + n < prec:
            _div_binomial(term, L + n, -1)
        _acc(total, term)
        n += 1
    return _ps(_div_poch(total, 1, L))


def intermediate(L: int, prec: int) -> PowerSeries:
    """1/(q;q)_L sum_{n>=1} (-q^{1-L};q)_{n-1}/(-q;q)_n q^{L(n-1)+n}.

    A factor 1+q^e with e < 0 is q^e (1+q^-e); those q^e are folded into the
    term's exponent, which stays non-negative and grows with n.
    """
    total = [0] * prec
    n = 1
    while True:
        shift = L * (n - 1) + n
        c = _unit(prec)
        for i in range(n - 1):
            e = 1 - L + i
            if e > 0:
                _mul_binomial(c, e, 1)
            elif e == 0:
                c = [2 * v for v in c]
            else:
                shift += e
                _mul_binomial(c, -e, 1)
        if shift >= prec:
            break
        _div_poch(c, 1, n, sign=1)
        _acc(total, _shifted(c, shift))
        n += 1
    return _ps(_div_poch(total, 1, L))


# the unrestricted series


def weighted_inf_lhs(prec: int) -> PowerSeries:
    """sum_{n>=1} q^n/((1+q^n)(q;q)_{n-1})."""
    total = [0] * prec
    r = _unit(prec)
    n = 1
    while n < prec:
        term = _shifted(r, n)
        _div_binomial(term, n, 1)
        _acc(total, term)
        _div_binomial(r, n, -1)
        n += 1
    return _ps(total)


def alt_smallest_inf(prec: int) -> PowerSeries:
    """sum_{n>=1} (-1)^(n+1) q^n/(q^n;q)_inf."""
    total = [0] * prec
    r = _div_poch(_unit(prec), 1, prec)
    for n in range(1, prec):
        _acc(total, _shifted(r, n), 1 if n % 2 else -1)
        _mul_binomial(r, n, -1)
    return _ps(total)


def t_sum_rhs(prec: int) -> PowerSeries:
    """sum_{n>=1} q^{n(n+1)/2}/((q^2;q^2)_n (q^{n+1};q)_inf)."""
    total = [0] * prec
    n = 1
    while n * (n + 1) // 2 < prec:
        t = _div_poch(_mono(n * (n + 1) // 2, prec), 2, n, step=2)
        _div_poch(t, n + 1, prec)
        _acc(total, t)
        n += 1
    return _ps(total)


def rank_distinct_mid(prec: int) -> PowerSeries:
    """sum_{n>=0} (-1)^n (q;q)_n q^{n+1}."""
    total = [0] * prec
    r = _unit(prec)
    n = 0
    while n + 1 < prec:
        _acc(total, _shifted(r, n + 1), -1 if n % 2 else 1)
        n += 1
        _mul_binomial(r, n, -1)
    return _ps(total)


def rank_distinct_rhs(prec: int) -> PowerSeries:
    """sum_{n>=1} q^{n(n+1)/2}/(-q;q)_n."""
    total = [0] * prec
    d = _unit(prec)
    n = 1
    while n * (n + 1) // 2 < prec:
        _div_binomial(d, n, 1)
        _acc(total, _shifted(d, n * (n + 1) // 2))
        n += 1
    return _ps(total)


# hypergeometric forms of the bounded-difference sum


def weighted_ls_phi(L: int, prec: int) -> PowerSeries:
    """q/(1+q) * 2phi1(q^{L+1}, -q; -q^2; q, q)."""
    body = phi([mono(L + 1), mono(1, -1)], [mono(2, -1)], mono(1), prec)
    return _ps(_div_binomial(list(body.shift(1).coeffs), 1, 1))


def jackson_phi(L: int, prec: int) -> PowerSeries:
    """q/(1+q) (q^{L+2};q)_inf/(q;q)_inf * 2phi2(q^{L+1}, q; -q^2, q^{L+2}; q, -q^2)."""
    body = phi([mono(L + 1), mono(1)], [mono(2, -1), mono(L + 2)], mono(2, -1), prec)
    pre = poch(mono(L + 2), None, prec)
    c = list((pre * body).shift(1).coeffs)
    _div_poch(c, 1, prec)
    _div_binomial(c, 1, 1)
    return _ps(c)


def shift_lhs(n: int, L: int, prec: int) -> PowerSeries:
    """[L+n-1 choose n-1]_q / (1-q^n)."""
    return q_binom(L + n - 1, n - 1, prec).div_binomial(n, -1)


def shift_rhs(n: int, L: int, prec: int) -> PowerSeries:
    """[L-1+n choose n]_q / (1-q^L)."""
    return q_binom(L - 1 + n, n, prec).div_binomial(L, -1)


# registry and string grammar


@dataclass(frozen=True)
class Builder:
    func: Callable
    params: tuple[str, ...]
    check: Callable[..., bool]
    requirement: str
    source: str


def _any(*_):
    return True


BUILDERS: dict[str, Builder] = {
    "H_L1": Builder(H_L1, ("L",), lambda L: L >= 1, "L >= 1", "difference of A-set generating functions"),
    "H_L1_secondary": Builder(H_L1_secondary, ("L",), lambda L: L >= 1, "L >= 1", "non-negative form of H_L1"),
    "H_L1_fourterm": Builder(H_L1_fourterm, ("L",), lambda L: L >= 3, "L >= 3", "four-term complement form"),
    "H_21_secondary": Builder(H_21_secondary, (), _any, "", "complement of the L=2 map"),
    "H_L2": Builder(H_L2, ("L",), lambda L: L >= 1, "L >= 1", "difference of B-set generating functions"),
    "H_32_secondary": Builder(H_32_secondary, (), _any, "", "complement of the L=3 B-map"),
    "H_L2_long": Builder(H_L2_long, ("L",), lambda L: L >= 5 and L % 2 == 1, "odd L >= 5", "eleven-term complement form"),
    "H_Lsk": Builder(H_Lsk, ("L", "s", "k"), lambda L, s, k: L >= 1 and s >= 1 and k >= 0, "L >= 1, s >= 1, k >= 0", "eventually-positive family"),
    "Hstar_L2": Builder(Hstar_L2, ("L",), lambda L: L >= 1, "L >= 1", "numerator of G_L2"),
    "G_L1": Builder(G_L1, ("L",), lambda L: L >= 1, "L >= 1", "smallest part 1 minus smallest part >= 2"),
    "G_L2": Builder(G_L2, ("L",), lambda L: L >= 1, "L >= 1", "smallest part 2 minus smallest part >= 3"),
    "weighted_ls": Builder(weighted_ls, ("L",), lambda L: L >= 0, "L >= 0", "alternating smallest part, l - s <= L"),
    "weighted_ls_binom": Builder(weighted_ls_binom, ("L",), lambda L: L >= 0, "L >= 0", "q-binomial form"),
    "weighted_ls_phi": Builder(weighted_ls_phi, ("L",), lambda L: L >= 0, "L >= 0", "2phi1 form"),
    "jackson_phi": Builder(jackson_phi, ("L",), lambda L: L >= 0, "L >= 0", "2phi2 form after Jackson"),
    "weighted_inf_lhs": Builder(weighted_inf_lhs, (), _any, "", "alternating smallest part, unrestricted"),
    "alt_smallest_inf": Builder(alt_smallest_inf, (), _any, "", "alternating smallest part, product form"),
    "t_sum_rhs": Builder(t_sum_rhs, (), _any, "", "t-statistic generating function"),
    "rank_distinct_mid": Builder(rank_distinct_mid, (), _any, "", "signed rank on distinct partitions"),
    "rank_distinct_rhs": Builder(rank_distinct_rhs, (), _any, "", "lost-notebook form"),
    "odds_min_gt1": Builder(odds_min_gt1, ("L",), lambda L: L >= 0, "L >= 0", "odd smallest part > 1, l - s <= L"),
    "summation_lhs": Builder(summation_lhs, ("L",), lambda L: L >= 1, "L >= 1", "finite summation formula, sum side"),
    "summation_rhs": Builder(summation_rhs, ("L",), lambda L: L >= 1, "L >= 1", "finite summation formula, product side"),
    "infinite_summation_lhs": Builder(infinite_summation_lhs, (), _any, "", "infinite summation formula, sum side"),
    "infinite_summation_rhs": Builder(infinite_summation_rhs, (), _any, "", "infinite summation formula, product side"),
    "jackson_rhs": Builder(jackson_rhs, ("L",), lambda L: L >= 0, "L >= 0", "Jackson-transformed sum"),
    "intermediate": Builder(intermediate, ("L",), lambda L: L >= 0, "L >= 0", "third-Heine intermediate sum"),
    "weighted_ls_pieces": Builder(weighted_ls_pieces, ("L",), lambda L: L >= 1, "L >= 1", "non-negative decomposition"),
    "mod4_series": Builder(mod4_series, (), _any, "", "L = 0 alternating divisor series"),
    "shift_lhs": Builder(shift_lhs, ("n", "L"), lambda n, L: n >= 1 and L >= 1, "n >= 1, L >= 1", "binomial over 1-q^n"),
    "shift_rhs": Builder(shift_rhs, ("n", "L"), lambda n, L: n >= 1 and L >= 1, "n >= 1, L >= 1", "binomial over 1-q^L"),
}


@dataclass(frozen=True)
class SeriesId:
    name: str
    params: tuple[int, ...] = ()

    def __post_init__(self):
        b = BUILDERS.get(self.name)
        if b is None:
            raise ParameterError(f"unknown series {self.name!r}")
        if len(self.params) != len(b.params):
            raise ParameterError(f"{self.name} takes parameters ({', '.join(b.params)}), got {len(self.params)}")
        if not b.check(*self.params):
            raise ParameterError(f"{self.name}{self.params} violates {b.requirement}")

    @classmethod
    def parse(cls, text: str) -> "SeriesId":
        name, *rest = text.strip().split(":")
        try:
            params = tuple(int(x) for x in rest)
        except ValueError:
            raise ParameterError(f"parameters of {text!r} must be integers") from None
        return cls(name, params)

    def __str__(self):
        return ":".join([self.name, *map(str, self.params)])


def build(sid: SeriesId | str, prec: int) -> PowerSeries:
    if isinstance(sid, str):
        sid = SeriesId.parse(sid)
    return BUILDERS[sid.name].func(*sid.params, prec)
