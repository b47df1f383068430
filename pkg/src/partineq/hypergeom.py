"""Basic hypergeometric series with signed-monomial parameters.

Every parameter is ``sign * q**exponent``.  Upper parameters may carry a
negative exponent: a factor ``1 - a*q^i`` with ``e = exponent + i < 0`` is
rewritten as ``-sign * q^e * (1 - sign*q^-e)``, and the term keeps track of the
accumulated power of q separately from its coefficient list.  Lower
parameters and the argument ``z`` must have exponent >= 1 so that every
denominator is a unit and the terms march off to higher and higher order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from partineq.fps import NotInvertibleError, PowerSeries, _div_binomial, _mul_binomial, first_discrepancy


class InadmissibleError(ValueError):
    """A specialization that leaves the signed-monomial world or cannot terminate."""


@dataclass(frozen=True)
class MonomialParam:
    sign: int
    exponent: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")

    def __mul__(self, other: "MonomialParam") -> "MonomialParam":
        return MonomialParam(self.sign * other.sign, self.exponent + other.exponent)

    def __truediv__(self, other: "MonomialParam") -> "MonomialParam":
        return MonomialParam(self.sign * other.sign, self.exponent - other.exponent)

    def __str__(self):
        body = "1" if self.exponent == 0 else ("q" if self.exponent == 1 else f"q^{self.exponent}")
        return body if self.sign == 1 else f"-{body}"

    @classmethod
    def parse(cls, text: str) -> "MonomialParam":
        t = text.strip().replace(" ", "")
        sign = 1
        if t.startswith("-"):
            sign, t = -1, t[1:]
        if t == "1":
            return cls(sign, 0)
        if t == "q":
            return cls(sign, 1)
        if t.startswith("q^"):
            return cls(sign, int(t[2:]))
        raise ValueError(f"cannot parse monomial parameter {text!r}")


def mono(exponent: int, sign: int = 1) -> MonomialParam:
    return MonomialParam(sign, exponent)


def poch(a: MonomialParam, n: int | None, prec: int) -> PowerSeries:
    """(a; q)_n for a numerator; ``n=None`` means the infinite product."""
    if a.exponent < 0:
        raise InadmissibleError(f"({a}; q)_n with a negative exponent is not a power series")
    c = [0] * prec
    c[0] = 1
    count = prec if n is None else n
    for i in range(count):
        e = a.exponent + i
        if e >= prec:
            break
        _mul_binomial(c, e, -a.sign)
    return PowerSeries._wrap(c, prec)


def reciprocal_poch(a: MonomialParam, n: int | None, prec: int) -> PowerSeries:
    """1 / (a; q)_n; needs ``a.exponent >= 1``."""
    if a.exponent < 1:
        raise InadmissibleError(f"({a}; q)_n is not a unit in the truncated ring")
    c = [0] * prec
    c[0] = 1
    count = prec if n is None else n
    for i in range(count):
        e = a.exponent + i
        if e >= prec:
            break
        _div_binomial(c, e, -a.sign)
    return PowerSeries._wrap(c, prec)


def _negative_budget(uppers, start: int) -> int:
    """Total (positive) amount by which factors with index >= start can lower the q-power."""
    total = 0
    for a in uppers:
        for i in range(start, -a.exponent):
            total += -(a.exponent + i)
    return total


def phi(uppers, lowers, z: MonomialParam, prec: int) -> PowerSeries:
    """r-phi-s with signed-monomial parameters, truncated to ``prec``."""
    uppers, lowers = list(uppers), list(lowers)
    if z.exponent < 1:
        raise InadmissibleError(f"argument z={z} must have exponent >= 1 for the sum to terminate")
    for b in lowers:
        if b.exponent < 1:
            raise InadmissibleError(f"lower parameter {b} must have exponent >= 1 to be invertible")
    power = 1 - len(uppers) + len(lowers)
    if power < 0:
        raise InadmissibleError("r > s+1 would need negative powers of q^(n choose 2)")

    extra = _negative_budget(uppers, 0)
    width = prec + extra
    body = [0] * width
    body[0] = 1
    shift = 0
    total = [0] * prec
    n = 0
    while True:
        # add the current term, whose coefficient list starts at q^shift
        lo = max(0, -shift)
        for i in range(lo, min(width, prec - shift)):
            v = body[i]
            if v:
                total[shift + i] += v
        # ratio term_{n+1} / term_n
        for a in uppers:
            e = a.exponent + n
            if e > 0:
                _mul_binomial(body, e, -a.sign)
            elif e == 0:
                if a.sign == 1:
                    return PowerSeries._wrap(total, prec)
                body = [2 * v for v in body]
            else:
                shift += e
                if a.sign == 1:
                    body = [-v for v in body]
                _mul_binomial(body, -e, -a.sign)
        _div_binomial(body, n + 1, -1)
        for b in lowers:
            _div_binomial(body, b.exponent + n, -b.sign)
        # [(-1)^n q^(n choose 2)]^power grows by (-q^n)^power from n to n+1
        if power % 2 == 1:
            body = [-v for v in body]
        shift += power * n
        if z.sign == -1:
            body = [-v for v in body]
        shift += z.exponent
        n += 1
        if shift - _negative_budget(uppers, n) >= prec:
            break
        if not any(body):
            break
    return PowerSeries._wrap(total, prec)


# transformation formulas

TRANSFORMS = ("qbinom", "heine1", "heine2", "heine3", "jackson")


@dataclass
class TransformCheck:
    which: str
    params: dict
    prec: int
    passed: bool
    first_discrepancy: int | None

    def to_json(self) -> dict:
        return {
            "transform": self.which,
            "params": {k: str(v) for k, v in self.params.items()},
            "prec": self.prec,
            "passed": self.passed,
            "first_discrepancy": self.first_discrepancy,
        }


def transform_sides(which: str, params: dict, prec: int) -> tuple[PowerSeries, PowerSeries]:
    """Both sides of a transformation formula, or InadmissibleError."""
    a = params.get("a")
    b = params.get("b")
    c = params.get("c")
    z = params["z"]
    try:
        if which == "qbinom":
            lhs = phi([a], [], z, prec)
            rhs = poch(a * z, None, prec) * reciprocal_poch(z, None, prec)
            return lhs, rhs
        lhs = phi([a, b], [c], z, prec)
        inv = reciprocal_poch(c, None, prec) * reciprocal_poch(z, None, prec)
        if which == "heine1":
            pre = poch(b, None, prec) * poch(a * z, None, prec) * inv
            rhs = pre * phi([c / b, z], [a * z], b, prec)
        elif which == "heine2":
            pre = poch(c / b, None, prec) * poch(b * z, None, prec) * inv
            rhs = pre * phi([a * b * z / c, b], [b * z], c / b, prec)
        elif which == "heine3":
            pre = poch(a * b * z / c, None, prec) * reciprocal_poch(z, None, prec)
            rhs = pre * phi([c / a, c / b], [c], a * b * z / c, prec)
        elif which == "jackson":
            pre = poch(a * z, None, prec) * reciprocal_poch(z, None, prec)
            rhs = pre * phi([a, c / b], [c, a * z], b * z, prec)
        else:
            raise ValueError(f"unknown transformation {which!r}; expected one of {', '.join(TRANSFORMS)}")
    except NotInvertibleError as exc:
        raise InadmissibleError(str(exc)) from exc
    return lhs, rhs


def check_transform(which: str, params: dict, prec: int) -> TransformCheck:
    lhs, rhs = transform_sides(which, params, prec)
    d = first_discrepancy(lhs, rhs)
    return TransformCheck(which, dict(params), prec, d is None, d)


def random_admissible(which: str, count: int, prec: int, seed: int = 0, max_exponent: int = 5):
    """``count`` admissible random parameter assignments for ``which``, deterministic in ``seed``."""
    rng = random.Random(f"{which}:{seed}")
    out = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > 10000 * count:
            raise RuntimeError(f"could not find {count} admissible assignments for {which}")
        params = {
            "a": mono(rng.randint(0, max_exponent), rng.choice((1, -1))),
            "z": mono(rng.randint(1, max_exponent), rng.choice((1, -1))),
        }
        if which != "qbinom":
            params["b"] = mono(rng.randint(0, max_exponent), rng.choice((1, -1)))
            params["c"] = mono(rng.randint(1, max_exponent), rng.choice((1, -1)))
        try:
            transform_sides(which, params, min(prec, 8))
        except InadmissibleError:
            continue
        out.append(params)
    return out
