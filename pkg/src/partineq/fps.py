"""Truncated formal power series in q with exact integer coefficients.

A :class:`PowerSeries` holds the coefficients of q^0 .. q^(prec-1).  Binary
operations truncate to the smaller precision of their operands, so a result
never claims more accuracy than its inputs had.

Multiplication is schoolbook (quadratic in ``prec``) with zero skipping; the
builders elsewhere in the package lean on the sparse helpers
:meth:`PowerSeries.mul_binomial` and :meth:`PowerSeries.div_binomial`, which
multiply or divide by a single factor ``1 + sign*q^k`` in linear time.
"""

from __future__ import annotations

from typing import Iterable, Sequence


class NotInvertibleError(ArithmeticError):
    """Raised when a series has no inverse in the truncated ring."""


class PrecisionError(ValueError):
    """Raised when an operation would need coefficients beyond ``prec``."""


class PowerSeries:
    """Immutable truncated power series ``sum(coeffs[n] * q**n for n < prec)``."""

    __slots__ = ("coeffs", "prec")

    def __init__(self, coeffs: Iterable[int], prec: int | None = None):
        c = [int(x) for x in coeffs]
        if prec is None:
            prec = len(c)
        if prec < 1:
            raise PrecisionError(f"precision must be positive, got {prec}")
        if len(c) < prec:
            c.extend([0] * (prec - len(c)))
        elif len(c) > prec:
            del c[prec:]
        object.__setattr__(self, "coeffs", tuple(c))
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, name, value):
        raise AttributeError("PowerSeries is immutable")

    # construction helpers

    @classmethod
    def _wrap(cls, coeffs: list[int], prec: int) -> "PowerSeries":
        # trusted fast path: coeffs already has length prec and holds ints
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", tuple(coeffs))
        object.__setattr__(obj, "prec", prec)
        return obj

    @classmethod
    def zero(cls, prec: int) -> "PowerSeries":
        return cls((), prec)

    @classmethod
    def one(cls, prec: int) -> "PowerSeries":
        return cls.monomial(0, prec)

    @classmethod
    def monomial(cls, exponent: int, prec: int, coeff: int = 1) -> "PowerSeries":
        """``coeff * q**exponent``; vanishes when ``exponent >= prec``."""
        if exponent < 0:
            raise PrecisionError(f"negative exponent {exponent} is not a power series")
        c = [0] * prec
        if exponent < prec:
            c[exponent] = coeff
        return cls._wrap(c, prec)

    @classmethod
    def from_terms(cls, terms: dict[int, int], prec: int) -> "PowerSeries":
        """Build from a sparse ``{exponent: coefficient}`` map; high terms are dropped."""
        c = [0] * prec
        for e, v in terms.items():
            if e < 0:
                raise PrecisionError(f"negative exponent {e} is not a power series")
            if e < prec:
                c[e] += v
        return cls._wrap(c, prec)

    # container protocol

    def __getitem__(self, n):
        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return self.prec

    def __eq__(self, other):
        if isinstance(other, PowerSeries):
            return self.prec == other.prec and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.prec, self.coeffs))

    def __repr__(self):
        terms = []
        for n, a in enumerate(self.coeffs):
            if a:
                terms.append(f"{a}" if n == 0 else f"{a}*q^{n}")
            if len(terms) == 8:
                terms.append("...")
                break
        body = " + ".join(terms) if terms else "0"
        return f"PowerSeries({body}, prec={self.prec})"

    # arithmetic

    def truncate(self, prec: int) -> "PowerSeries":
        if prec > self.prec:
            raise PrecisionError(f"cannot extend precision {self.prec} to {prec}")
        if prec == self.prec:
            return self
        return PowerSeries._wrap(list(self.coeffs[:prec]), prec)

    def __add__(self, other):
        if isinstance(other, int):
            other = PowerSeries.monomial(0, self.prec, other)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        p = min(self.prec, other.prec)
        a, b = self.coeffs, other.coeffs
        return PowerSeries._wrap([a[i] + b[i] for i in range(p)], p)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries._wrap([-x for x in self.coeffs], self.prec)

    def __sub__(self, other):
        if isinstance(other, int):
            other = PowerSeries.monomial(0, self.prec, other)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        p = min(self.prec, other.prec)
        a, b = self.coeffs, other.coeffs
        return PowerSeries._wrap([a[i] - b[i] for i in range(p)], p)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return PowerSeries._wrap([other * x for x in self.coeffs], self.prec)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        p = min(self.prec, other.prec)
        a, b = self.coeffs, other.coeffs
        out = [0] * p
        # iterate over the sparser operand in the outer loop
        if sum(1 for x in a[:p] if x) > sum(1 for x in b[:p] if x):
            a, b = b, a
        for i in range(p):
            ai = a[i]
            if not ai:
                continue
            for j in range(p - i):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
        return PowerSeries._wrap(out, p)

    __rmul__ = __mul__

    def shift(self, k: int) -> "PowerSeries":
        """Multiply by q^k (k >= 0), keeping the precision."""
        if k < 0:
            raise PrecisionError("shift by a negative power needs a Laurent series")
        if k >= self.prec:
            return PowerSeries.zero(self.prec)
        return PowerSeries._wrap([0] * k + list(self.coeffs[: self.prec - k]), self.prec)

    def mul_binomial(self, k: int, sign: int = -1) -> "PowerSeries":
        """Multiply by ``1 + sign*q^k``."""
        return PowerSeries._wrap(_mul_binomial(list(self.coeffs), k, sign), self.prec)

    def div_binomial(self, k: int, sign: int = -1) -> "PowerSeries":
        """Divide by ``1 + sign*q^k``; ``k`` must be positive."""
        return PowerSeries._wrap(_div_binomial(list(self.coeffs), k, sign), self.prec)

    def invert(self) -> "PowerSeries":
        return invert(self)

    def first_negative(self) -> int | None:
        return first_negative(self)

    def negative_indices(self) -> list[int]:
        return [n for n, a in enumerate(self.coeffs) if a < 0]

    def is_nonnegative(self) -> bool:
        return first_negative(self) is None


# in-place list kernels shared with the builders


def _mul_binomial(c: list[int], k: int, sign: int) -> list[int]:
    """c <- c * (1 + sign*q^k), in place; walks downward so sources are unmodified."""
    if k < 0:
        raise PrecisionError("negative exponent in binomial factor")
    p = len(c)
    if k == 0:
        f = 1 + sign
        for i in range(p):
            c[i] *= f
        return c
    if sign == -1:
        for i in range(p - 1, k - 1, -1):
            c[i] -= c[i - k]
    else:
        for i in range(p - 1, k - 1, -1):
            c[i] += sign * c[i - k]
    return c


def _div_binomial(c: list[int], k: int, sign: int) -> list[int]:
    """c <- c / (1 + sign*q^k), in place; walks upward to reuse fresh values."""
    if k <= 0:
        raise NotInvertibleError(f"1 + ({sign})*q^{k} is not a unit in the truncated ring")
    p = len(c)
    if sign == -1:
        for i in range(k, p):
            c[i] += c[i - k]
    else:
        for i in range(k, p):
            c[i] -= sign * c[i - k]
    return c


# module-level operations


def add(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    return a + b


def mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    return a * b


def invert(a: PowerSeries) -> PowerSeries:
    """Multiplicative inverse; the constant term must be +1 or -1."""
    c0 = a.coeffs[0]
    if c0 not in (1, -1):
        raise NotInvertibleError(f"constant term {c0} is not a unit; series is not invertible")
    p = a.prec
    ac = a.coeffs
    support = [j for j in range(1, p) if ac[j]]
    b = [0] * p
    b[0] = c0
    for n in range(1, p):
        s = 0
        for j in support:
            if j > n:
                break
            s += ac[j] * b[n - j]
        # c0 * c0 == 1, so dividing by c0 is multiplying by it
        b[n] = -s * c0
    return PowerSeries._wrap(b, p)


def poch_finite(s: int, L: int, prec: int) -> PowerSeries:
    """(q^s; q)_L = prod_{i<L} (1 - q^(s+i)), truncated to ``prec``."""
    if L < 0:
        raise ValueError(f"factor count must be non-negative, got {L}")
    if s < 0:
        raise ValueError(f"exponent offset must be non-negative, got {s}")
    c = [0] * prec
    c[0] = 1
    for i in range(L):
        e = s + i
        if e >= prec:
            break
        _mul_binomial(c, e, -1)
    return PowerSeries._wrap(c, prec)


def poch_infinite(s: int, prec: int) -> PowerSeries:
    """(q^s; q)_inf truncated to ``prec``; factors with exponent >= prec are exactly 1."""
    if s < 1:
        raise ValueError("(q^0; q)_inf vanishes identically; offset must be >= 1")
    return poch_finite(s, max(0, prec - s), prec)


def reciprocal_poch(s: int, L: int, prec: int, step: int = 1) -> PowerSeries:
    """1 / (q^s; q^step)_L computed by repeated linear-time division."""
    if s < 1:
        raise NotInvertibleError("(q^0; q)_L has zero constant term")
    c = [0] * prec
    c[0] = 1
    for i in range(L):
        e = s + step * i
        if e >= prec:
            break
        _div_binomial(c, e, -1)
    return PowerSeries._wrap(c, prec)


def q_binom(top: int, bottom: int, prec: int) -> PowerSeries:
    """Gaussian binomial coefficient [top choose bottom]_q, truncated to ``prec``."""
    if bottom < 0 or top < 0:
        raise ValueError("q-binomial arguments must be non-negative")
    if bottom > top:
        raise ValueError(f"bottom {bottom} exceeds top {top}")
    k = min(bottom, top - bottom)
    # (q^(top-k+1); q)_k / (q; q)_k; the quotient is a polynomial, so
    # truncated division is exact below prec
    c = [0] * prec
    c[0] = 1
    for i in range(1, k + 1):
        e = top - k + i
        if e < prec:
            _mul_binomial(c, e, -1)
        if i < prec:
            _div_binomial(c, i, -1)
    return PowerSeries._wrap(c, prec)


def first_negative(a: PowerSeries) -> int | None:
    for n, x in enumerate(a.coeffs):
        if x < 0:
            return n
    return None


def first_discrepancy(a: PowerSeries, b: PowerSeries) -> int | None:
    """Smallest exponent below the common precision where ``a`` and ``b`` differ."""
    p = min(a.prec, b.prec)
    ac, bc = a.coeffs, b.coeffs
    for n in range(p):
        if ac[n] != bc[n]:
            return n
    return None


def series(coeffs: Sequence[int], prec: int) -> PowerSeries:
    """Convenience constructor used by tests and builders: pad/truncate ``coeffs``."""
    return PowerSeries(coeffs, prec)
