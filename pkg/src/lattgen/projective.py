"""Projective-space view of Sub(F^d).

Points are 1-dimensional subspaces.  Indices of frame atoms are 1-based,
matching the usual a_1..a_d notation.  Every coordinate-ring operation
below is the evaluation of a lattice polynomial in the frame atoms; field
arithmetic appears only when building or reading points.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import reduce
from typing import Sequence

from .field import Field, FieldElement
from .linalg import Subspace, mat_inverse, mat_mul, mat_vec, solve_combination


class ProjectiveError(ValueError):
    pass


class NotInCoordinateRing(ProjectiveError):
    pass


class BadIndices(ProjectiveError):
    pass


class OutOfInterval(ProjectiveError):
    pass


class PointAtInfinity(ProjectiveError):
    pass


class NotAtoms(ProjectiveError):
    pass


class NotPointOrLine(ProjectiveError):
    pass


class DegenerateQuadrangle(ProjectiveError):
    pass


class NotASubfield(ProjectiveError):
    pass


# ---------------------------------------------------------------------------
# points and their rendering

def _unit(F: Field, d: int, i: int, val=1) -> list:
    v = [F.zero] * d
    v[i - 1] = F.raw(val)
    return v


def render(S: Subspace) -> list[FieldElement]:
    """Homogeneous coordinates: last entry -1 for finite points,
    leading entry 1 for points at infinity."""
    if S.rank != 1:
        raise NotAtoms(f"{S} is not a point")
    F = S.field
    v = list(S.basis[0])
    last = v[-1]
    if last != F.zero:
        s = F.div(F.neg(F.one), last)
    else:
        lead = next(x for x in v if x != F.zero)
        s = F.inv(lead)
    return [FieldElement(F, F.mul(s, x)) for x in v]


@dataclass(frozen=True)
class ProjectivePoint:
    subspace: Subspace

    def __post_init__(self):
        if self.subspace.rank != 1:
            raise NotAtoms(f"{self.subspace} is not a point")

    @classmethod
    def of(cls, F: Field, coords: Sequence) -> "ProjectivePoint":
        return cls(Subspace.point(F, coords))

    @property
    def coords(self) -> list[FieldElement]:
        return render(self.subspace)

    @property
    def is_finite(self) -> bool:
        return self.subspace.basis[0][-1] != self.subspace.field.zero

    def __str__(self) -> str:
        parts = [str(x) for x in self.coords]
        if self.is_finite:
            parts[-1] = "-1"
        return "[" + ",".join(parts) + "]"


def point_str(S: Subspace) -> str:
    """Points in bracket form, anything else in rref form."""
    return str(ProjectivePoint(S)) if S.rank == 1 else str(S)


def parse_point(F: Field, text: str) -> Subspace:
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ProjectiveError(f"point literal must look like [x1,...,xd]: {text!r}")
    S = Subspace.point(F, [e.strip() for e in body[1:-1].split(",")])
    if S.rank != 1:
        raise ProjectiveError("the zero vector is not a point")
    return S


# ---------------------------------------------------------------------------
# frames

@dataclass(frozen=True)
class Frame:
    owner: Field
    d: int
    atoms: tuple = dc_field(repr=False)
    cs: dict = dc_field(repr=False, compare=False, hash=False)

    def a(self, i: int) -> Subspace:
        self._idx(i)
        return self.atoms[i - 1]

    def c(self, i: int, j: int) -> Subspace:
        self._idx(i, j)
        if i == j:
            raise BadIndices("c_{i,j} needs i != j")
        return self.cs[(i, j)]

    def _idx(self, *ix: int):
        for i in ix:
            if not 1 <= i <= self.d:
                raise BadIndices(f"index {i} outside 1..{self.d}")

    @property
    def zero(self) -> Subspace:
        return Subspace.zero(self.owner, self.d)

    @property
    def one(self) -> Subspace:
        return Subspace.full(self.owner, self.d)

    def laws_hold(self) -> bool:
        top = reduce(Subspace.join, self.atoms)
        if top != self.one:
            return False
        for (i, j), c in self.cs.items():
            aj = self.a(j)
            if (c | aj) != (self.a(i) | aj) or (c & aj) != self.zero:
                return False
        return True


def canonical_frame(F: Field, d: int) -> Frame:
    if d < 3:
        raise ValueError("frames need d >= 3")
    atoms = tuple(Subspace.from_raw(F, [_unit(F, d, i)], d) for i in range(1, d + 1))
    cs = {}
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            if i != j:
                v = _unit(F, d, i)
                v[j - 1] = F.neg(F.one)
                cs[(i, j)] = Subspace.from_raw(F, [v], d)
    return Frame(F, d, atoms, cs)


# ---------------------------------------------------------------------------
# coordinate rings R(i,j)

def _distinct(fr: Frame, *ix: int):
    fr._idx(*ix)
    if len(set(ix)) != len(ix):
        raise BadIndices(f"indices {ix} must be pairwise distinct")


def in_ring(fr: Frame, i: int, j: int, x: Subspace) -> bool:
    aj = fr.a(j)
    return (x | aj) == (fr.a(i) | aj) and (x & aj) == fr.zero


def _need_ring(fr: Frame, i: int, j: int, *xs: Subspace):
    for x in xs:
        if not in_ring(fr, i, j, x):
            raise NotInCoordinateRing(f"{point_str(x) if x.rank == 1 else x} is not in R({i},{j})")


def delta(fr: Frame, i: int, j: int, r) -> Subspace:
    """The point with r at position j and -1 at position i."""
    _distinct(fr, i, j)
    F = fr.owner
    v = [F.zero] * fr.d
    v[j - 1] = F.raw(r)
    v[i - 1] = F.neg(F.one)
    return Subspace.from_raw(F, [v], fr.d)


def delta_read(fr: Frame, i: int, j: int, x: Subspace) -> FieldElement:
    _distinct(fr, i, j)
    _need_ring(fr, i, j, x)
    F = fr.owner
    v = x.basis[0]
    s = F.div(F.neg(F.one), v[i - 1])
    return FieldElement(F, F.mul(s, v[j - 1]))


def projectivity(fr: Frame, kind: str, p: int, q: int, r: int, x: Subspace) -> Subspace:
    """Perspective maps out of [0, a_p v a_q].

    ``r-for-p`` lands in [0, a_r v a_q], ``r-for-q`` in [0, a_p v a_r].
    """
    _distinct(fr, p, q, r)
    if not x <= (fr.a(p) | fr.a(q)):
        raise OutOfInterval(f"{x} is not below a_{p} v a_{q}")
    if kind == "r-for-p":
        return (x | fr.c(p, r)) & (fr.a(r) | fr.a(q))
    if kind == "r-for-q":
        return (x | fr.c(q, r)) & (fr.a(p) | fr.a(r))
    raise ValueError(f"unknown projectivity {kind!r}")


def _rforp(fr, i, j, k, x):
    return (x | fr.c(i, k)) & (fr.a(k) | fr.a(j))


def _rforq(fr, i, j, k, x):
    return (x | fr.c(j, k)) & (fr.a(i) | fr.a(k))


def coring_add(fr: Frame, i: int, j: int, k: int, x: Subspace, y: Subspace) -> Subspace:
    _distinct(fr, i, j, k)
    _need_ring(fr, i, j, x, y)
    ai, aj, ak = fr.a(i), fr.a(j), fr.a(k)
    return (ai | aj) & (((x | ak) & (fr.c(i, k) | aj)) | _rforp(fr, i, j, k, y))


def coring_mul(fr: Frame, i: int, j: int, k: int, x: Subspace, y: Subspace) -> Subspace:
    _distinct(fr, i, j, k)
    _need_ring(fr, i, j, x, y)
    return (fr.a(i) | fr.a(j)) & (_rforq(fr, i, j, k, x) | _rforp(fr, i, j, k, y))


def coring_sub(fr: Frame, i: int, j: int, k: int, x: Subspace, y: Subspace) -> Subspace:
    _distinct(fr, i, j, k)
    _need_ring(fr, i, j, x, y)
    ai, aj, ak = fr.a(i), fr.a(j), fr.a(k)
    inner = (fr.c(j, k) | x) & (aj | _rforq(fr, i, j, k, y))
    return (ai | aj) & (ak | inner)


def coring_recip(fr: Frame, i: int, j: int, k: int, x: Subspace) -> Subspace:
    """Reciprocal in R(i,j); the ring zero a_i goes to a_j."""
    _distinct(fr, i, j, k)
    _need_ring(fr, i, j, x)
    ai, aj, ak = fr.a(i), fr.a(j), fr.a(k)
    t = (x | fr.c(k, i)) & (aj | ak)
    t = (t | fr.c(j, i)) & (ak | ai)
    return (t | fr.c(k, j)) & (ai | aj)


def extract_coordinate(fr: Frame, u: Subspace, iota: int) -> Subspace:
    """delta_{d,iota}(u_iota) for a finite point u, as a lattice polynomial."""
    d = fr.d
    if not 1 <= iota <= d - 1:
        raise BadIndices(f"coordinate index {iota} outside 1..{d - 1}")
    if u.rank != 1:
        raise NotAtoms(f"{u} is not a point")
    if u.basis[0][-1] == fr.owner.zero:
        raise PointAtInfinity(f"{point_str(u)} has no finite coordinates")
    rest = u
    for j in range(1, d):
        if j != iota:
            rest = rest | fr.a(j)
    return (fr.a(iota) | fr.a(d)) & rest


# ---------------------------------------------------------------------------
# geometry of the plane

def _normalized(S: Subspace) -> list:
    F = S.field
    v = list(S.basis[0])
    total = reduce(F.add, v, F.zero)
    s = F.inv(total) if total != F.zero else F.inv(next(x for x in v if x != F.zero))
    return [F.mul(s, x) for x in v]


def third_atom(a: Subspace, b: Subspace) -> Subspace:
    """A third atom below a v b, or 0 when a = b.

    Vectors are scaled to coordinate sum 1; a vector with sum 0 is scaled
    to leading entry 1 instead, which still yields an atom distinct from a
    and b.
    """
    if a.rank != 1 or b.rank != 1:
        raise NotAtoms("third_atom takes two atoms")
    if a == b:
        return Subspace.zero(a.field, a.dim_ambient)
    F = a.field
    w = [F.add(x, y) for x, y in zip(_normalized(a), _normalized(b))]
    return Subspace.from_raw(F, [w], a.dim_ambient)


def _kind(S: Subspace) -> int:
    if S.rank == 1:
        return 1
    if S.rank == S.dim_ambient - 1 and S.rank >= 1:
        return 2
    raise NotPointOrLine(f"{S} is neither a point nor a line")


def ftype_of(quad: Sequence[Subspace]) -> tuple[int, ...]:
    return tuple(_kind(S) for S in quad)


def type_of(quad: Sequence[Subspace]) -> tuple[int, int]:
    f = ftype_of(quad)
    return f.count(1), f.count(2)


def general_position(quad: Sequence[Subspace]) -> bool:
    g = list(quad)
    for x, y in itertools.permutations(g, 2):
        if x <= y:
            return False
    for x, y, z in itertools.combinations(g, 3):
        if x.rank == y.rank == z.rank == 1 and x <= (y | z):
            return False
        n = x.dim_ambient
        if x.rank == y.rank == z.rank == n - 1 and (x & y) <= z:
            return False
    return True


def canonical_quadrangle(F: Field) -> tuple[Subspace, ...]:
    """(a_1, a_2, a_3, [1,1,-1]) of the plane over F."""
    fr = canonical_frame(F, 3)
    return fr.a(1), fr.a(2), fr.a(3), Subspace.point(F, [1, 1, -1])


def _adapted(quad: Sequence[Subspace]) -> list[list]:
    """Columns l_i*v_i with v_4 = l_1 v_1 + l_2 v_2 + l_3 v_3."""
    F = quad[0].field
    vs = [list(S.basis[0]) for S in quad]
    lam = solve_combination(F, vs[:3], vs[3])
    if lam is not None:
        lam = [x.value for x in lam]
    if lam is None or any(x == F.zero for x in lam):
        raise DegenerateQuadrangle("the four points are not in general position")
    cols = [[F.mul(l, x) for x in v] for l, v in zip(lam, vs[:3])]
    return [[cols[c][r] for c in range(3)] for r in range(3)]


def quadrangle_transform(src: Sequence[Subspace], dst: Sequence[Subspace]) -> list[list]:
    """Matrix M (acting on column vectors) with F*M v_i = dst_i for the src points v_i."""
    for quad in (src, dst):
        if len(quad) != 4 or any(S.rank != 1 or S.dim_ambient != 3 for S in quad):
            raise DegenerateQuadrangle("need four points of a projective plane")
        if not general_position(quad):
            raise DegenerateQuadrangle("quadruple is not in general position")
    F = src[0].field
    A, B = _adapted(src), _adapted(dst)
    M = mat_mul(F, B, mat_inverse(F, A))
    for s, t in zip(src, dst):
        if apply_matrix(M, s) != t:  # pragma: no cover - linear algebra guarantees this
            raise DegenerateQuadrangle("transport failed")
    return M


def apply_matrix(M: Sequence[Sequence], S: Subspace) -> Subspace:
    F = S.field
    if not S.basis:
        return S
    return Subspace.from_raw(F, [mat_vec(F, M, row) for row in S.basis], S.dim_ambient)


def embed(X: Subspace, F: Field) -> Subspace:
    """F-span of a subspace over a subfield of F (the prime subfield or F itself)."""
    P = X.field
    if P == F:
        return X
    if not (P.kind == "prime" and F.is_finite and F.characteristic == P.p):
        raise NotASubfield(f"{P} is not a subfield of {F} this embedding knows")
    return Subspace.from_raw(F, [[F.from_int(int(x)) for x in row] for row in X.basis],
                             X.dim_ambient)


__all__ = [
    "Frame", "ProjectivePoint", "canonical_frame", "render", "point_str", "parse_point",
    "delta", "delta_read", "in_ring", "projectivity", "coring_add", "coring_mul", "coring_sub",
    "coring_recip", "extract_coordinate", "third_atom", "type_of", "ftype_of",
    "general_position", "canonical_quadrangle", "quadrangle_transform", "apply_matrix", "embed",
    "ProjectiveError", "NotInCoordinateRing", "BadIndices", "OutOfInterval", "PointAtInfinity",
    "NotAtoms", "NotPointOrLine", "DegenerateQuadrangle", "NotASubfield",
]
