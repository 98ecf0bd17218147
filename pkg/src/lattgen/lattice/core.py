"""Finite lattices: subspace lattices, explicit tables, and direct products.

Base lattices (subspace and table kinds) use dense integer handles with
precomputed meet/join tables.  Product elements are tuples of factor
handles and are never materialized all at once.
"""

from __future__ import annotations

import functools
import itertools
import math
import re
from typing import Iterator, Sequence

import numpy as np

from ..field import Field, parse_field
from ..linalg import AmbientMismatch, Subspace


class TooLarge(ValueError):
    pass


class NotAnElement(ValueError):
    pass


SUBSPACE_LIMIT = 10**6
TABLE_LIMIT = 8192


def gaussian_count(q: int, m: int, r: int) -> int:
    num = den = 1
    for i in range(r):
        num *= q ** (m - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


class FiniteLattice:
    kind: str = "abstract"
    size: int

    def meet(self, x, y):
        raise NotImplementedError

    def join(self, x, y):
        raise NotImplementedError

    def leq(self, x, y) -> bool:
        return self.meet(x, y) == x

    @property
    def factors(self) -> list["BaseLattice"]:
        return [self]

    def spec(self) -> str:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.spec()} size={self.size}>"


class BaseLattice(FiniteLattice):
    """A lattice on handles ``0..size-1`` backed by meet/join tables."""

    _meet_table: np.ndarray | None = None
    _join_table: np.ndarray | None = None

    def _build_tables(self) -> tuple[np.ndarray, np.ndarray]:
        raise NotImplementedError

    def tables(self) -> tuple[np.ndarray, np.ndarray]:
        if self._meet_table is None:
            if self.size > TABLE_LIMIT:
                raise TooLarge(f"{self.spec()} has {self.size} elements; tables capped at {TABLE_LIMIT}")
            self._meet_table, self._join_table = self._build_tables()
        return self._meet_table, self._join_table

    @property
    def meet_table(self) -> np.ndarray:
        return self.tables()[0]

    @property
    def join_table(self) -> np.ndarray:
        return self.tables()[1]

    def meet(self, x: int, y: int) -> int:
        return int(self.meet_table[x, y])

    def join(self, x: int, y: int) -> int:
        return int(self.join_table[x, y])

    def elements(self) -> range:
        return range(self.size)

    def leq_matrix(self) -> np.ndarray:
        m = self.meet_table
        return m == np.arange(self.size)[:, None]

    @functools.cached_property
    def bottom(self) -> int:
        return int(np.flatnonzero(self.leq_matrix().all(axis=1))[0])

    @functools.cached_property
    def top(self) -> int:
        return int(np.flatnonzero(self.leq_matrix().all(axis=0))[0])

    @functools.cached_property
    def heights(self) -> np.ndarray:
        """Length of the longest chain from the bottom (rank in a modular lattice)."""
        leq = self.leq_matrix()
        order = np.argsort(leq.sum(axis=0), kind="stable")  # down-set size is a linear extension
        h = np.zeros(self.size, dtype=np.int64)
        for x in order:
            below = np.flatnonzero(leq[:, x])
            below = below[below != x]
            h[x] = 0 if below.size == 0 else int(h[below].max()) + 1
        return h

    def height(self, x: int) -> int:
        return int(self.heights[x])

    def atoms(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.heights == 1)]

    def elements_of_height(self, h: int) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.heights == h)]

    def covers(self) -> list[tuple[int, int]]:
        """Pairs (x, y) with y covering x."""
        lt = self.leq_matrix() & ~np.eye(self.size, dtype=bool)
        between = (lt.astype(np.int64) @ lt.astype(np.int64)) > 0
        xs, ys = np.nonzero(lt & ~between)
        return [(int(x), int(y)) for x, y in zip(xs, ys)]

    def is_meet_irreducible(self, x: int) -> bool:
        if x == self.top:
            return False
        leq = self.leq_matrix()
        ups = [int(y) for y in np.flatnonzero(leq[x]) if y != x]
        minimal = [y for y in ups if not any(z != y and leq[z, y] for z in ups)]
        return len(minimal) == 1

    def is_join_irreducible(self, x: int) -> bool:
        if x == self.bottom:
            return False
        leq = self.leq_matrix()
        downs = [int(y) for y in np.flatnonzero(leq[:, x]) if y != x]
        maximal = [y for y in downs if not any(z != y and leq[y, z] for z in downs)]
        return len(maximal) == 1

    def label(self, x: int) -> str:
        return str(x)

    def encode(self, x: int):
        return x

    def decode(self, obj) -> int:
        if isinstance(obj, int) and 0 <= obj < self.size:
            return obj
        raise NotAnElement(f"{obj!r} is not an element of {self.spec()}")


class SubspaceLattice(BaseLattice):
    """Sub(F^d), handles ordered rank-major then by canonical matrix."""

    kind = "subspace"

    def __init__(self, field: Field, d: int):
        if not field.is_finite:
            raise TooLarge("Sub(Q^d) is infinite; use SubspaceAlgebra for term evaluation")
        if d < 1:
            raise ValueError("d must be at least 1")
        q = field.order
        total = sum(gaussian_count(q, d, r) for r in range(d + 1))
        if total > SUBSPACE_LIMIT:
            raise TooLarge(f"Sub(GF({q})^{d}) has {total} elements (limit {SUBSPACE_LIMIT})")
        self.field = field
        self.d = d
        self.size = total
        self.subspaces: list[Subspace] = _enumerate_subspaces(field, d)
        assert len(self.subspaces) == total
        self._index = {S.basis: i for i, S in enumerate(self.subspaces)}
        self.ranks = np.array([S.rank for S in self.subspaces], dtype=np.int64)

    def spec(self) -> str:
        return f"sub:{self.field.spec()}:{self.d}"

    # handles <-> subspaces
    def subspace(self, x: int) -> Subspace:
        return self.subspaces[x]

    def index_of(self, S: Subspace) -> int:
        if S.field != self.field or S.dim_ambient != self.d:
            raise AmbientMismatch(f"{S!r} is not in {self.spec()}")
        return self._index[S.basis]

    def span(self, rows) -> int:
        return self.index_of(Subspace.span(self.field, rows, self.d))

    @functools.cached_property
    def bottom(self) -> int:
        return 0

    @functools.cached_property
    def top(self) -> int:
        return self.size - 1

    @functools.cached_property
    def heights(self) -> np.ndarray:
        return self.ranks

    def label(self, x: int) -> str:
        return str(self.subspaces[x])

    def encode(self, x: int):
        return self.subspaces[x].to_json()

    def decode(self, obj) -> int:
        if isinstance(obj, Subspace):
            return self.index_of(obj)
        if isinstance(obj, list):
            return self.index_of(Subspace.from_json(self.field, obj, self.d))
        return super().decode(obj)

    @functools.cached_property
    def perp(self) -> np.ndarray:
        return np.array([self.index_of(S.orthogonal_complement()) for S in self.subspaces],
                        dtype=np.int64)

    def _build_tables(self):
        F, d, n = self.field, self.d, self.size
        q = F.order
        weights = [q**c for c in range(d)]
        masks = []
        for S in self.subspaces:
            m = 0
            for v in S.vectors():
                m |= 1 << sum(a * w for a, w in zip(v, weights))
            masks.append(m)
        by_mask = {m: i for i, m in enumerate(masks)}
        meet = np.empty((n, n), dtype=np.int32)
        for i in range(n):
            mi = masks[i]
            meet[i, i] = i
            for j in range(i):
                meet[i, j] = meet[j, i] = by_mask[mi & masks[j]]
        perp = self.perp
        # (x v y)^perp = x^perp ^ y^perp
        join = perp[meet[np.ix_(perp, perp)]].astype(np.int32)
        return meet, join

    def meet(self, x: int, y: int) -> int:
        if self._meet_table is None and self.size > TABLE_LIMIT:
            return self.index_of(self.subspaces[x].meet(self.subspaces[y]))
        return int(self.meet_table[x, y])

    def join(self, x: int, y: int) -> int:
        if self._meet_table is None and self.size > TABLE_LIMIT:
            return self.index_of(self.subspaces[x].join(self.subspaces[y]))
        return int(self.join_table[x, y])


def _enumerate_subspaces(F: Field, d: int) -> list[Subspace]:
    elems = F.raw_elements()
    zero, one = F.zero, F.one
    out: list[Subspace] = []
    for r in range(d + 1):
        batch = []
        for pivots in itertools.combinations(range(d), r):
            free = [(t, c) for t, p in enumerate(pivots) for c in range(p + 1, d) if c not in pivots]
            for vals in itertools.product(elems, repeat=len(free)):
                rows = [[zero] * d for _ in range(r)]
                for t, p in enumerate(pivots):
                    rows[t][p] = one
                for (t, c), v in zip(free, vals):
                    rows[t][c] = v
                batch.append(tuple(tuple(row) for row in rows))
        batch.sort(key=lambda b: [x for row in b for x in row])
        out.extend(Subspace(F, d, b) for b in batch)
    return out


@functools.lru_cache(maxsize=32)
def build_subspace_lattice(field: Field, d: int) -> SubspaceLattice:
    return SubspaceLattice(field, d)


class TableLattice(BaseLattice):
    """A lattice given by its order relation."""

    kind = "table"

    def __init__(self, leq: np.ndarray, labels: Sequence[str] | None = None, name: str = "table"):
        leq = np.asarray(leq, dtype=bool)
        n = leq.shape[0]
        if leq.shape != (n, n) or n == 0:
            raise ValueError("leq must be a nonempty square matrix")
        self.size = n
        self._leq = leq
        self.labels = list(labels) if labels is not None else [str(i) for i in range(n)]
        self.name = name
        self._lookup = {lab: i for i, lab in enumerate(self.labels)}
        self._meet_table, self._join_table = self._glb_tables()

    def _glb_tables(self):
        leq, n = self._leq, self.size
        if not (leq.diagonal().all() and not (leq & leq.T & ~np.eye(n, dtype=bool)).any()):
            raise ValueError("relation is not a partial order")
        # glb(x, y): the common lower bound above every other common lower bound
        meet = np.empty((n, n), dtype=np.int32)
        join = np.empty((n, n), dtype=np.int32)
        for x in range(n):
            for y in range(x, n):
                lo = np.flatnonzero(leq[:, x] & leq[:, y])
                best = [z for z in lo if leq[lo, z].all()]
                hi = np.flatnonzero(leq[x] & leq[y])
                least = [z for z in hi if leq[z, hi].all()]
                if len(best) != 1 or len(least) != 1:
                    raise ValueError("order is not a lattice")
                meet[x, y] = meet[y, x] = best[0]
                join[x, y] = join[y, x] = least[0]
        return meet, join

    def _build_tables(self):  # pragma: no cover - built in __init__
        return self._glb_tables()

    def leq_matrix(self) -> np.ndarray:
        return self._leq

    def spec(self) -> str:
        return self.name

    def label(self, x: int) -> str:
        return self.labels[x]

    def encode(self, x: int):
        return self.labels[x]

    def decode(self, obj) -> int:
        if isinstance(obj, str) and obj in self._lookup:
            return self._lookup[obj]
        return super().decode(obj)

    @classmethod
    def chain(cls, n: int) -> "TableLattice":
        idx = np.arange(n)
        return cls(idx[:, None] <= idx[None, :], name=f"chain:{n}")

    @classmethod
    def m3(cls) -> "TableLattice":
        leq = np.eye(5, dtype=bool)
        leq[0, :] = True
        leq[:, 4] = True
        return cls(leq, ["0", "a", "b", "c", "1"], name="m3")

    @classmethod
    def from_subspace(cls, L: BaseLattice) -> "TableLattice":
        return cls(L.leq_matrix(), [L.label(i) for i in range(L.size)], name=L.spec())


class ProductLattice(FiniteLattice):
    """Direct product; elements are tuples of base-lattice handles."""

    kind = "product"

    def __init__(self, factors: Sequence[FiniteLattice], name: str | None = None):
        flat: list[BaseLattice] = []
        for L in factors:
            flat.extend(L.factors)
        if not flat:
            raise ValueError("empty product")
        self._factors = flat
        self.size = math.prod(L.size for L in flat)
        self._name = name
        self.power_of: tuple[FiniteLattice, int] | None = None

    @property
    def factors(self) -> list[BaseLattice]:
        return self._factors

    @property
    def arity(self) -> int:
        return len(self._factors)

    def spec(self) -> str:
        if self._name:
            return self._name
        return "prod:" + ",".join(L.spec() for L in self._factors)

    def meet(self, x, y):
        return tuple(L.meet(a, b) for L, a, b in zip(self._factors, x, y))

    def join(self, x, y):
        return tuple(L.join(a, b) for L, a, b in zip(self._factors, x, y))

    def leq(self, x, y) -> bool:
        return all(L.leq(a, b) for L, a, b in zip(self._factors, x, y))

    @property
    def bottom(self):
        return tuple(L.bottom for L in self._factors)

    @property
    def top(self):
        return tuple(L.top for L in self._factors)

    def elements(self) -> Iterator[tuple]:
        return itertools.product(*(range(L.size) for L in self._factors))

    def height(self, x) -> int:
        return sum(L.height(a) for L, a in zip(self._factors, x))

    def label(self, x) -> str:
        return "(" + ",".join(L.label(a) for L, a in zip(self._factors, x)) + ")"

    def encode(self, x):
        return [L.encode(a) for L, a in zip(self._factors, x)]

    def decode(self, obj) -> tuple:
        if not isinstance(obj, (list, tuple)) or len(obj) != len(self._factors):
            raise NotAnElement(f"expected a list of {len(self._factors)} components")
        return tuple(L.decode(o) for L, o in zip(self._factors, obj))

    @functools.cached_property
    def strides(self) -> np.ndarray:
        s = np.ones(len(self._factors), dtype=np.int64)
        for c in range(len(self._factors) - 2, -1, -1):
            s[c] = s[c + 1] * self._factors[c + 1].size
        return s

    def pack(self, x) -> int:
        return int(sum(int(a) * int(s) for a, s in zip(x, self.strides)))

    def unpack(self, code: int) -> tuple:
        out = []
        for L, s in zip(self._factors, self.strides):
            a, code = divmod(code, int(s))
            out.append(int(a))
        return tuple(out)

    def __eq__(self, other):
        return isinstance(other, ProductLattice) and self._factors == other._factors

    def __hash__(self):
        return hash(tuple(id(f) for f in self._factors))


def product_lattice(factors: Sequence[FiniteLattice]) -> ProductLattice:
    return ProductLattice(factors)


def power_lattice(L: FiniteLattice, k: int) -> ProductLattice:
    if k < 1:
        raise ValueError("power exponent must be positive")
    P = ProductLattice([L] * k, name=f"pow:{L.spec()}:{k}")
    P.kind = "power"
    P.power_of = (L, k)
    return P


def project(gens: Sequence[tuple], S: Sequence[int]) -> list[tuple]:
    """Restrict product elements to the factor indices in ``S`` (0-based)."""
    S = list(S)
    if not S:
        raise ValueError("projection needs a nonempty index set")
    return [tuple(g[i] for i in S) for g in gens]


def project_lattice(P: ProductLattice, S: Sequence[int]) -> FiniteLattice:
    fs = [P.factors[i] for i in S]
    return fs[0] if len(fs) == 1 else ProductLattice(fs)


class SubspaceAlgebra:
    """Meet/join on :class:`Subspace` values of any field, ℚ included."""

    def __init__(self, field: Field, d: int):
        self.field = field
        self.d = d

    def meet(self, x: Subspace, y: Subspace) -> Subspace:
        return x.meet(y)

    def join(self, x: Subspace, y: Subspace) -> Subspace:
        return x.join(y)

    def leq(self, x: Subspace, y: Subspace) -> bool:
        return x <= y

    @property
    def bottom(self) -> Subspace:
        return Subspace.zero(self.field, self.d)

    @property
    def top(self) -> Subspace:
        return Subspace.full(self.field, self.d)

    def span(self, rows) -> Subspace:
        return Subspace.span(self.field, rows, self.d)


class ProductAlgebra:
    """Componentwise meet/join over a list of algebras (tuples of values)."""

    def __init__(self, parts: Sequence):
        self.parts = list(parts)

    def meet(self, x, y):
        return tuple(A.meet(a, b) for A, a, b in zip(self.parts, x, y))

    def join(self, x, y):
        return tuple(A.join(a, b) for A, a, b in zip(self.parts, x, y))


# --- lattice spec strings ---------------------------------------------------

_PROD_SPLIT = re.compile(r",(?=(?:sub|pow|prod|chain|m3)\b)")


def parse_lattice(spec: str) -> FiniteLattice:
    """``sub:<field>:<d>``, ``pow:<inner>:<k>``, ``prod:<a>,<b>,...``,
    plus ``chain:<n>`` and ``m3`` for small test lattices."""
    s = spec.strip()
    if s.startswith("sub:"):
        body, _, d = s[4:].rpartition(":")
        if not body:
            raise ValueError(f"bad lattice spec {spec!r}")
        return build_subspace_lattice(parse_field(body), int(d))
    if s.startswith("pow:"):
        inner, _, k = s[4:].rpartition(":")
        return power_lattice(parse_lattice(inner), int(k))
    if s.startswith("prod:"):
        parts = _PROD_SPLIT.split(s[5:])
        return ProductLattice([parse_lattice(p) for p in parts])
    if s.startswith("chain:"):
        return TableLattice.chain(int(s[6:]))
    if s == "m3":
        return TableLattice.m3()
    raise ValueError(f"bad lattice spec {spec!r}")
