"""Exact linear algebra over a :class:`~lattgen.field.Field`.

Matrices are lists of rows of raw field values.  A :class:`Subspace` keeps
its basis in reduced row echelon form, which makes equality of subspaces
plain tuple equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .field import Field, FieldElement, FieldError


class AmbientMismatch(ValueError):
    pass


def _raw_matrix(field: Field, M) -> list[list]:
    return [[field.raw(x) for x in row] for row in M]


def rref_raw(field: Field, M: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Gauss-Jordan elimination on raw values; returns nonzero rows and pivots."""
    A = [list(row) for row in M]
    if not A:
        return [], []
    ncols = len(A[0])
    zero = field.zero
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(A)):
            if A[i][c] != zero:
                piv = i
                break
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = field.inv(A[r][c])
        if inv != field.one:
            A[r] = [field.mul(inv, x) for x in A[r]]
        row_r = A[r]
        for i in range(len(A)):
            if i != r:
                f = A[i][c]
                if f != zero:
                    A[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(A[i], row_r)]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rref(field: Field, M) -> tuple[list[list[FieldElement]], int]:
    """Reduced row echelon form and rank of ``M`` (entries coerced into ``field``)."""
    R, piv = rref_raw(field, _raw_matrix(field, M))
    return [[FieldElement(field, x) for x in row] for row in R], len(piv)


def nullspace_raw(field: Field, M: Sequence[Sequence], ncols: int) -> list[list]:
    """Basis of {x : M x = 0} (x a column vector of length ncols)."""
    R, pivots = rref_raw(field, M)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for row, pc in zip(R, pivots):
            v[pc] = field.neg(row[f])
        basis.append(v)
    return basis


@dataclass(frozen=True)
class Subspace:
    field: Field
    dim_ambient: int
    basis: tuple[tuple, ...]  # raw values, rref, no zero rows

    # -- construction ----------------------------------------------------

    @classmethod
    def span(cls, field: Field, rows: Iterable, dim: int | None = None) -> "Subspace":
        rows = _raw_matrix(field, rows)
        if dim is None:
            if not rows:
                raise ValueError("ambient dimension needed for an empty spanning set")
            dim = len(rows[0])
        if any(len(r) != dim for r in rows):
            raise AmbientMismatch(f"rows must have length {dim}")
        R, _ = rref_raw(field, rows)
        return cls(field, dim, tuple(tuple(r) for r in R))

    @classmethod
    def from_raw(cls, field: Field, rows: Iterable, dim: int) -> "Subspace":
        """Like :meth:`span` for rows already holding raw field values.

        ``span`` coerces ints as integers, which misreads the raw codes of
        extension-field elements.
        """
        rows = [list(r) for r in rows]
        if any(len(r) != dim for r in rows):
            raise AmbientMismatch(f"rows must have length {dim}")
        R, _ = rref_raw(field, rows)
        return cls(field, dim, tuple(tuple(r) for r in R))

    @classmethod
    def zero(cls, field: Field, dim: int) -> "Subspace":
        return cls(field, dim, ())

    @classmethod
    def full(cls, field: Field, dim: int) -> "Subspace":
        return cls(field, dim, tuple(
            tuple(field.one if i == j else field.zero for j in range(dim)) for i in range(dim)))

    @classmethod
    def point(cls, field: Field, coords: Sequence) -> "Subspace":
        return cls.span(field, [coords])

    # -- basic properties ------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.basis)

    dim = rank

    @property
    def pivots(self) -> tuple[int, ...]:
        out = []
        for row in self.basis:
            for c, x in enumerate(row):
                if x != self.field.zero:
                    out.append(c)
                    break
        return tuple(out)

    def rows(self) -> list[list[FieldElement]]:
        return [[FieldElement(self.field, x) for x in row] for row in self.basis]

    def _check(self, other: "Subspace"):
        if other.field != self.field or other.dim_ambient != self.dim_ambient:
            raise AmbientMismatch(
                f"{self.field}^{self.dim_ambient} vs {other.field}^{other.dim_ambient}")

    # -- lattice operations ----------------------------------------------

    def join(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if not other.basis or other.basis == self.basis:
            return self
        if not self.basis:
            return other
        R, _ = rref_raw(self.field, list(self.basis) + list(other.basis))
        return Subspace(self.field, self.dim_ambient, tuple(tuple(r) for r in R))

    def meet(self, other: "Subspace") -> "Subspace":
        # Zassenhaus: rows (a|a) and (b|0); rows (0|z) span the intersection
        self._check(other)
        if not self.basis or not other.basis:
            return Subspace.zero(self.field, self.dim_ambient)
        if other.basis == self.basis:
            return self
        d, F = self.dim_ambient, self.field
        stacked = [list(a) + list(a) for a in self.basis]
        stacked += [list(b) + [F.zero] * d for b in other.basis]
        R, pivots = rref_raw(F, stacked)
        inter = [row[d:] for row, pc in zip(R, pivots) if pc >= d]
        R2, _ = rref_raw(F, inter)
        return Subspace(F, d, tuple(tuple(r) for r in R2))

    __or__ = join
    __and__ = meet

    def contains(self, v: Sequence) -> bool:
        return self._contains_raw([self.field.raw(x) for x in v])

    def _contains_raw(self, v: list) -> bool:
        if len(v) != self.dim_ambient:
            raise AmbientMismatch(f"vector of length {len(v)} in ambient {self.dim_ambient}")
        # reduce v against the rref basis
        F = self.field
        for row, pc in zip(self.basis, self.pivots):
            f = v[pc]
            if f != F.zero:
                v = [F.sub(x, F.mul(f, y)) for x, y in zip(v, row)]
        return all(x == F.zero for x in v)

    def __le__(self, other: "Subspace") -> bool:
        self._check(other)
        if self.rank > other.rank:
            return False
        return all(other._contains_raw(list(row)) for row in self.basis)

    def __lt__(self, other: "Subspace") -> bool:
        return self.rank < other.rank and self <= other

    def __ge__(self, other: "Subspace") -> bool:
        return other <= self

    def __gt__(self, other: "Subspace") -> bool:
        return other < self

    def orthogonal_complement(self) -> "Subspace":
        """{x : <x, b> = 0 for every basis vector b} under the standard form."""
        d = self.dim_ambient
        if not self.basis:
            return Subspace.full(self.field, d)
        ns = nullspace_raw(self.field, self.basis, d)
        return Subspace.from_raw(self.field, ns, d) if ns else Subspace.zero(self.field, d)

    def vectors(self) -> list[tuple]:
        """All vectors of a subspace over a finite field (raw tuples)."""
        F = self.field
        elems = F.raw_elements()
        out = []
        for coefs in itertools.product(elems, repeat=self.rank):
            v = [F.zero] * self.dim_ambient
            for c, row in zip(coefs, self.basis):
                if c:
                    v = [F.add(x, F.mul(c, y)) for x, y in zip(v, row)]
            out.append(tuple(v))
        return out

    def map_rows(self, field: Field, fn) -> "Subspace":
        return Subspace.from_raw(field, [[fn(x) for x in row] for row in self.basis], self.dim_ambient)

    # -- rendering and JSON ----------------------------------------------

    def to_json(self) -> list[list[str]]:
        return [[self.field.format_raw(x) for x in row] for row in self.basis]

    @classmethod
    def from_json(cls, field: Field, rows, dim: int) -> "Subspace":
        if not isinstance(rows, list):
            raise FieldError("a subspace is encoded as a list of rows")
        return cls.span(field, [[str(x) for x in r] for r in rows], dim)

    def __str__(self) -> str:
        if not self.basis:
            return "0"
        return "<" + "; ".join(",".join(self.field.format_raw(x) for x in r) for r in self.basis) + ">"

    def __repr__(self) -> str:
        return f"Subspace({self.field}^{self.dim_ambient}, {self})"


def span_join(A: Subspace, B: Subspace) -> Subspace:
    return A.join(B)


def span_meet(A: Subspace, B: Subspace) -> Subspace:
    return A.meet(B)


def contains(S: Subspace, v: Sequence) -> bool:
    return S.contains(v)


def solve_combination(field: Field, vectors: Sequence[Sequence], target: Sequence):
    """Coefficients lambda with sum lambda_j vectors[j] == target, or None.

    The direct "does a combination exist" test used as an oracle for
    :meth:`Subspace.contains`.
    """
    vecs = _raw_matrix(field, vectors)
    t = [field.raw(x) for x in target]
    k, d = len(vecs), len(t)
    # augmented system: columns are the vectors
    aug = [[vecs[j][i] for j in range(k)] + [t[i]] for i in range(d)]
    R, pivots = rref_raw(field, aug)
    if k in pivots:
        return None
    lam = [field.zero] * k
    for row, pc in zip(R, pivots):
        lam[pc] = row[k]
    return [FieldElement(field, x) for x in lam]


def mat_vec(field: Field, M: Sequence[Sequence], v: Sequence) -> list:
    out = []
    for row in M:
        acc = field.zero
        for a, b in zip(row, v):
            acc = field.add(acc, field.mul(a, b))
        out.append(acc)
    return out


def mat_inverse(field: Field, M: Sequence[Sequence]) -> list[list]:
    n = len(M)
    aug = [list(row) + [field.one if i == j else field.zero for j in range(n)]
           for i, row in enumerate(M)]
    R, pivots = rref_raw(field, aug)
    if pivots[:n] != list(range(n)) or len(R) < n:
        raise ValueError("singular matrix")
    return [row[n:] for row in R]


def mat_mul(field: Field, A, B) -> list[list]:
    cols = list(zip(*B))
    return [[_dot(field, r, c) for c in cols] for r in A]


def _dot(field, r, c):
    acc = field.zero
    for a, b in zip(r, c):
        acc = field.add(acc, field.mul(a, b))
    return acc
