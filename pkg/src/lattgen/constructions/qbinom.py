"""Gaussian binomials and the generator-count bounds built from them."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..field import ALEPH0, Cardinal, Field, prime_power


class BadRange(ValueError):
    pass


TABLE1_QS = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19)


def qbinom(q, m: int, r: int):
    """Number of r-dimensional subspaces of an m-dimensional space over GF(q).

    ``q`` may be :data:`ALEPH0`; for 1 <= r <= m-1 the answer is then ALEPH0.
    """
    if not 0 <= r <= m:
        raise BadRange(f"need 0 <= r <= m, got r={r}, m={m}")
    if isinstance(q, Cardinal):
        if q.is_finite:
            q = int(q)
        else:
            return 1 if r in (0, m) else ALEPH0
    if q < 2:
        raise BadRange("q must be at least 2")
    r = min(r, m - r)
    num = den = 1
    for i in range(r):
        num *= q ** (m - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def qbinom_log10(q, m: int, r: int) -> float:
    v = qbinom(q, m, r)
    if isinstance(v, Cardinal):
        return math.inf
    return math.log10(v)


def sci(value: int, digits: int = 3) -> tuple[float, int]:
    """(mantissa rounded to ``digits`` decimals, exponent) of a big integer."""
    s = str(value)
    e = len(s) - 1
    mant = round(int(s[: digits + 2]) / 10 ** (min(len(s), digits + 2) - 1), digits)
    if mant >= 10:
        mant, e = round(mant / 10, digits), e + 1
    return mant, e


@dataclass(frozen=True)
class Table1Row:
    q: int
    value: int
    mantissa: float
    exponent: int
    log10: float

    def __str__(self) -> str:
        return f"q={self.q:>2}  mu ~ {self.mantissa:.3f}e{self.exponent}  log10 = {self.log10:.4f}"


def table1(d: int = 80) -> list[Table1Row]:
    rows = []
    for q in TABLE1_QS:
        v = qbinom(q, d, d // 2)
        mant, e = sci(v)
        rows.append(Table1Row(q, v, mant, e, math.log10(v)))
    return rows


@dataclass(frozen=True)
class Bounds:
    t: Cardinal
    d: int
    M: int
    m: Cardinal
    lower: Cardinal
    upper_thm1: Cardinal
    upper_thm2: Cardinal

    def to_json(self) -> dict:
        return {k: (v.to_json() if isinstance(v, Cardinal) else v)
                for k, v in self.__dict__.items()}


def _plus(c: Cardinal, n: int) -> Cardinal:
    return c if not c.is_finite else Cardinal(c.value + n)


def bounds(t, d: int) -> Bounds:
    """Lower and upper bounds on generating-set sizes of Sub(F^d), |gen F| = t."""
    if d < 3:
        raise BadRange("d must be at least 3")
    t = t if isinstance(t, Cardinal) else Cardinal(int(t))
    h, hc = d // 2, -(-d // 2)
    M = d * d // 4
    assert M == h * hc
    m = t.ceil_div(M)
    lower = m if (not m.is_finite or m.value > 4) else Cardinal(4)
    return Bounds(t, d, M, m, lower, _plus(m, 4), _plus(m, 5))


def mu(F: Field, d: int):
    """Number of height-floor(d/2) subspaces; ALEPH0 over an infinite field."""
    if d < 3:
        raise BadRange("d must be at least 3")
    if not F.is_finite:
        return ALEPH0
    return qbinom(F.order, d, d // 2)


def parse_q(text: str):
    s = text.strip().lower()
    if s in ("q", "aleph0", "inf"):
        return ALEPH0
    q = int(s)
    if prime_power(q) is None:
        raise BadRange(f"{q} is not a prime power")
    return q


__all__ = ["qbinom", "qbinom_log10", "table1", "Table1Row", "bounds", "Bounds", "mu", "sci",
           "BadRange", "TABLE1_QS", "parse_q"]
