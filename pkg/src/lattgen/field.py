"""Exact scalar fields: GF(p), GF(p^n) and the rationals.

Elements are handled in two layers.  Internally every algorithm works on
*raw* values (an ``int`` code for finite fields, a ``Fraction`` for Q) and
calls the owning :class:`Field` for arithmetic.  :class:`FieldElement` wraps
a raw value together with its field for the public API.

Extension-field codes pack the coefficient vector ``c0 + c1 w + ... ``
as the integer ``c0 + c1 p + c2 p^2 + ...``, so enumerating codes in
increasing order is the coefficient-vector lexicographic order with the
highest-degree coefficient most significant.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence


class FieldError(ValueError):
    pass


class DivisionByZero(FieldError, ZeroDivisionError):
    pass


class FieldMismatch(FieldError):
    pass


class InfiniteField(FieldError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, n)`` with ``q == p**n``, or None."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            n = 0
            while q % p == 0:
                q //= p
                n += 1
            return (p, n) if q == 1 else None
    return None


# --- polynomials over GF(p), coefficient lists with constant term first ---

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _poly_trim([x % p for x in a])
    m = _poly_trim([x % p for x in m])
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * mi) % p
        _poly_trim(a)
    return a


def is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Exhaustive factor search; adequate for the small degrees used here."""
    f = _poly_trim([c % p for c in coeffs])
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    for k in range(1, n // 2 + 1):
        for tail in itertools.product(range(p), repeat=k):
            g = list(tail) + [1]
            if not _poly_mod(f, g, p):
                return False
    return True


def default_modulus(p: int, n: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree n (ordered by its code)."""
    for code in range(p**n):
        low = [(code // p**i) % p for i in range(n)]
        cand = low + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise FieldError(f"no irreducible polynomial of degree {n} over GF({p})")


@dataclass(frozen=True)
class Cardinal:
    """A cardinal that is either a natural number or aleph_0 (``value is None``)."""

    value: int | None

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    def ceil_div(self, n: int) -> "Cardinal":
        # least m with m*n >= t; aleph_0 stays aleph_0
        if self.value is None:
            return self
        return Cardinal(-(-self.value // n))

    def __int__(self) -> int:
        if self.value is None:
            raise InfiniteField("aleph0 has no integer value")
        return self.value

    def __str__(self) -> str:
        return "aleph0" if self.value is None else str(self.value)

    def to_json(self):
        return "aleph0" if self.value is None else self.value


ALEPH0 = Cardinal(None)


@dataclass(frozen=True)
class Field:
    kind: str  # "prime" | "extension" | "rationals"
    p: int | None = None
    n: int = 1
    modulus: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind == "rationals":
            if self.p is not None or self.modulus is not None or self.n != 1:
                raise FieldError("the rationals take no characteristic or modulus")
            return
        if self.kind not in ("prime", "extension"):
            raise FieldError(f"unknown field kind {self.kind!r}")
        if self.p is None or not is_prime(self.p):
            raise FieldError(f"{self.p} is not a prime")
        if self.kind == "prime":
            if self.n != 1 or self.modulus is not None:
                raise FieldError("prime fields have degree 1 and no modulus")
            return
        if self.n < 2 or self.modulus is None or len(self.modulus) != self.n + 1:
            raise FieldError("extension needs a degree-n modulus")
        if self.modulus[-1] != 1:
            raise FieldError("modulus must be monic")
        if not is_irreducible(self.modulus, self.p):
            raise FieldError(f"modulus {list(self.modulus)} is reducible over GF({self.p})")

    # -- descriptive -------------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return self.kind != "rationals"

    @property
    def order(self) -> int | None:
        return None if self.kind == "rationals" else self.p**self.n

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == "rationals" else self.p

    @cached_property
    def prime_subfield(self) -> "Field":
        return self if self.kind != "extension" else GF(self.p)

    def spec(self) -> str:
        if self.kind == "rationals":
            return "Q"
        if self.kind == "prime":
            return str(self.p)
        if self.modulus == default_modulus(self.p, self.n):
            return f"{self.p}^{self.n}"
        return f"{self.p}^{self.n}:" + ",".join(map(str, self.modulus))

    def __str__(self) -> str:
        if self.kind == "rationals":
            return "Q"
        if self.kind == "prime":
            return f"GF({self.p})"
        return f"GF({self.p}^{self.n})"

    # -- raw arithmetic ----------------------------------------------------

    @property
    def zero(self):
        return Fraction(0) if self.kind == "rationals" else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == "rationals" else 1

    @cached_property
    def _tables(self):
        q = self.order
        p, n = self.p, self.n
        vecs = [[(c // p**i) % p for i in range(n)] for c in range(q)]

        def code(v):
            return sum(x * p**i for i, x in enumerate(v))

        add = [[code([(a + b) % p for a, b in zip(va, vb)]) for vb in vecs] for va in vecs]
        mul = []
        for va in vecs:
            row = []
            for vb in vecs:
                prod = [0] * (2 * n - 1)
                for i, a in enumerate(va):
                    if a:
                        for j, b in enumerate(vb):
                            prod[i + j] += a * b
                red = _poly_mod(prod, self.modulus, p)
                row.append(code(red + [0] * (n - len(red))))
            mul.append(row)
        neg = [code([(-a) % p for a in v]) for v in vecs]
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
        return add, mul, neg, inv

    def add(self, a, b):
        if self.kind == "extension":
            return self._tables[0][a][b]
        if self.kind == "prime":
            return (a + b) % self.p
        return a + b

    def neg(self, a):
        if self.kind == "extension":
            return self._tables[2][a]
        if self.kind == "prime":
            return (-a) % self.p
        return -a

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.kind == "extension":
            return self._tables[1][a][b]
        if self.kind == "prime":
            return a * b % self.p
        return a * b

    def inv(self, a):
        if not a:
            raise DivisionByZero(f"0 has no inverse in {self}")
        if self.kind == "extension":
            return self._tables[3][a]
        if self.kind == "prime":
            return pow(a, self.p - 2, self.p)
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def from_int(self, k: int):
        """Image of the integer k under the unique ring map Z -> F."""
        if self.kind == "rationals":
            return Fraction(k)
        return k % self.p  # k*1 lives in the prime subfield: code k mod p

    def power(self, a, e: int):
        r = self.one
        for _ in range(e):
            r = self.mul(r, a)
        return r

    # -- conversion ----------------------------------------------------------

    def raw(self, x):
        """Coerce ints, strings, Fractions or FieldElements to a raw value."""
        if isinstance(x, FieldElement):
            if x.field != self:
                raise FieldMismatch(f"element of {x.field} used in {self}")
            return x.value
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, Fraction):
            if self.kind == "rationals":
                return x
            return self.div(self.from_int(x.numerator), self.from_int(x.denominator))
        if isinstance(x, str):
            return self.parse_raw(x)
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def __call__(self, x) -> "FieldElement":
        return FieldElement(self, self.raw(x))

    def parse_raw(self, s: str):
        s = s.strip().replace(" ", "")
        if not s:
            raise FieldError("empty field element")
        if self.kind == "rationals":
            try:
                return Fraction(s)
            except (ValueError, ZeroDivisionError) as exc:
                raise FieldError(f"bad rational {s!r}") from exc
        if self.kind == "prime":
            if "/" in s:
                num, den = s.split("/", 1)
                return self.div(self.parse_raw(num), self.parse_raw(den))
            try:
                return int(s) % self.p
            except ValueError as exc:
                raise FieldError(f"bad element {s!r} of {self}") from exc
        return self._parse_poly(s)

    _TERM = re.compile(r"([+-]?)(\d*)\*?(w(?:\^(\d+))?)?")

    def _parse_poly(self, s: str):
        p, n = self.p, self.n
        coeffs = [0] * max(n, 1)
        pos = 0
        if s[0] not in "+-":
            s = "+" + s
        while pos < len(s):
            m = self._TERM.match(s, pos)
            if not m or m.end() == pos or not (m.group(2) or m.group(3)):
                raise FieldError(f"bad element {s.lstrip('+')!r} of {self}")
            sign = -1 if m.group(1) == "-" else 1
            c = int(m.group(2)) if m.group(2) else 1
            deg = 0
            if m.group(3):
                deg = int(m.group(4)) if m.group(4) else 1
            while deg >= len(coeffs):
                coeffs.append(0)
            coeffs[deg] += sign * c
            pos = m.end()
        red = _poly_mod(coeffs, self.modulus, p)
        return sum((x % p) * p**i for i, x in enumerate(red))

    def format_raw(self, a) -> str:
        if self.kind == "rationals":
            return str(a)
        if self.kind == "prime":
            return str(a)
        p = self.p
        coeffs = [(a // p**i) % p for i in range(self.n)]
        terms = []
        for deg in range(self.n - 1, -1, -1):
            c = coeffs[deg]
            if not c:
                continue
            if deg == 0:
                terms.append(str(c))
            else:
                mono = "w" if deg == 1 else f"w^{deg}"
                terms.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(terms) if terms else "0"

    # -- enumeration -------------------------------------------------------

    def raw_elements(self) -> list:
        if not self.is_finite:
            raise InfiniteField("Q cannot be enumerated")
        return list(range(self.order))

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, a) for a in self.raw_elements()]


def field_enumerate(F: Field) -> list["FieldElement"]:
    return F.elements()


@dataclass(frozen=True)
class FieldElement:
    field: Field
    value: object

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        return self.field.raw(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.field, self.field.div(self._other(other), self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(self.field, self.field.power(self.value, e))

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.raw(other)
        except (TypeError, FieldError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self):
        return self.field.format_raw(self.value)

    def __repr__(self):
        return f"{self.field}({self})"


_OPS = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
    "neg": lambda a, b: -a,
    "inv": lambda a, b: a.inverse(),
}


def field_arith(op: str, a: FieldElement, b: FieldElement | None = None) -> FieldElement:
    if op not in _OPS:
        raise ValueError(f"unknown operation {op!r}")
    binary = op in ("add", "sub", "mul", "div")
    if binary != (b is not None):
        raise ValueError(f"{op} takes {'two operands' if binary else 'one operand'}")
    if b is not None and a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    return _OPS[op](a, b)


# --- constructors and the field spec grammar -------------------------------

QQ = Field("rationals")


def GF(p: int, n: int = 1, modulus: Iterable[int] | None = None) -> Field:
    """GF(p^n); ``GF(q)`` with q a prime power also works (default modulus)."""
    if n == 1 and not is_prime(p):
        pp = prime_power(p)
        if pp is None:
            raise FieldError(f"{p} is not a prime power")
        p, n = pp
    if n == 1 and modulus is None:
        return Field("prime", p)
    if not is_prime(p):
        raise FieldError(f"{p} is not a prime")
    if modulus is None:
        mod = default_modulus(p, n)
    else:
        mod = [c % p for c in modulus]
        if len(_poly_trim(list(mod))) != n + 1:
            raise FieldError(f"modulus must have degree {n}")
        lead_inv = pow(mod[-1], p - 2, p)
        mod = tuple(c * lead_inv % p for c in mod)
    if n == 1:
        # a linear modulus adds nothing
        return Field("prime", p)
    return Field("extension", p, n, tuple(mod))


def parse_field(spec: str) -> Field:
    """Parse ``p``, ``q`` (prime power), ``p^n[:c0,...,cn]`` or ``Q``."""
    s = spec.strip()
    if s in ("Q", "QQ", "q"):
        return QQ
    modulus = None
    if ":" in s:
        s, mod = s.split(":", 1)
        try:
            modulus = [int(c) for c in mod.split(",")]
        except ValueError as exc:
            raise FieldError(f"bad modulus in field spec {spec!r}") from exc
    try:
        if "^" in s:
            p_s, n_s = s.split("^", 1)
            p, n = int(p_s), int(n_s)
        else:
            q = int(s)
            pp = prime_power(q)
            if pp is None:
                raise FieldError(f"{q} is not a prime power")
            p, n = pp
    except ValueError as exc:
        raise FieldError(f"bad field spec {spec!r}") from exc
    if not is_prime(p):
        raise FieldError(f"{p} is not a prime")
    return GF(p, n, modulus)


def field_generating_data(F: Field) -> tuple[Cardinal, list[FieldElement]]:
    """Minimum generating-set size t and a witness generating set.

    Prime fields (Q included) need no generators.  For GF(p^n), n >= 2, a
    primitive element generates: its multiplicative order p^n - 1 rules out
    every proper subfield.
    """
    if F.kind != "extension":
        return Cardinal(0), []
    q = F.order
    for a in range(2, q):
        x, order = a, 1
        while x != 1:
            x = F.mul(x, a)
            order += 1
        if order == q - 1:
            return Cardinal(1), [FieldElement(F, a)]
    raise FieldError(f"{F} has no primitive element")  # pragma: no cover


def generated_subfield(F: Field, gens: Iterable) -> set:
    """Raw values of the subfield of a finite field generated by ``gens``."""
    if not F.is_finite:
        raise InfiniteField("subfield closure needs a finite field")
    closed = {F.zero, F.one}
    closed.update(F.raw(g) for g in gens)
    frontier = list(closed)
    while frontier:
        new = []
        items = list(closed)
        for a in frontier:
            for b in items:
                for c in (F.add(a, b), F.mul(a, b), F.neg(a)):
                    if c not in closed:
                        closed.add(c)
                        new.append(c)
            if a:
                c = F.inv(a)
                if c not in closed:
                    closed.add(c)
                    new.append(c)
        frontier = new
    return closed
