"""Named configurations of the Fano plane and exhaustive checks on them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..field import GF
from ..lattice.closure import closure
from ..lattice.core import SubspaceLattice, build_subspace_lattice, power_lattice
from ..linalg import Subspace
from ..projective import general_position, type_of

# points of PG(2,2) under their customary names
FANO_POINTS = {
    "a1": (1, 0, 0), "a2": (0, 1, 0), "a3": (0, 0, 1),
    "b1": (0, 1, 1), "b2": (1, 0, 1), "b3": (1, 1, 0),
    "c": (1, 1, 1),
}
FANO_LINES = {
    "u1": ("a2", "a3", "b1"), "u2": ("a1", "a3", "b2"), "u3": ("a1", "a2", "b3"),
    "v1": ("a1", "b1", "c"), "v2": ("a2", "b2", "c"), "v3": ("a3", "b3", "c"),
    "w": ("b1", "b2", "b3"),
}


def fano_lattice() -> tuple[SubspaceLattice, dict[int, str], dict[str, int]]:
    """Sub(GF(2)^3) with handle -> name and name -> handle maps."""
    F = GF(2)
    L = build_subspace_lattice(F, 3)
    names = {"0": L.bottom, "1": L.top}
    pts = {}
    for n, v in FANO_POINTS.items():
        pts[n] = Subspace.point(F, v)
        names[n] = L.index_of(pts[n])
    for n, ps in FANO_LINES.items():
        line = pts[ps[0]] | pts[ps[1]]
        if not pts[ps[2]] <= line:  # pragma: no cover - fixed data
            raise AssertionError(f"{n} is not a line")
        names[n] = L.index_of(line)
    labels = {h: n for n, h in names.items()}
    assert len(labels) == L.size
    return L, labels, names


@dataclass
class FanoReport:
    generators: list[str]
    size: int
    elements: list[str]
    position_1_0: int
    has_0_c: bool

    def to_json(self) -> dict:
        return {"generators": self.generators, "closure_size": self.size,
                "elements": self.elements, "position_of_(1,0)": self.position_1_0,
                "contains_(0,c)": self.has_0_c}


FANO_PAIR_GENERATORS = (("a1", "a1"), ("a2", "a2"), ("a3", "a3"), ("c", "w"))


def fano_check(gens=FANO_PAIR_GENERATORS, backend: str | None = None) -> FanoReport:
    """Close the named pairs in Sub(GF(2)^3)^2 and report the result."""
    L, labels, names = fano_lattice()
    P = power_lattice(L, 2)
    handles = [(names[x], names[y]) for x, y in gens]
    R = closure(P, handles, backend=backend)
    fmt = lambda e: f"({labels[e[0]]},{labels[e[1]]})"  # noqa: E731
    return FanoReport(
        generators=[fmt(g) for g in handles],
        size=R.size,
        elements=[fmt(e) for e in R.elements],
        position_1_0=R.position((L.top, L.bottom)),
        has_0_c=(L.bottom, names["c"]) in R,
    )


def complete_quadrangles(L: SubspaceLattice):
    """Ordered 4-tuples of atoms in general position."""
    atoms = [L.subspace(a) for a in L.atoms()]
    for quad in itertools.permutations(atoms, 4):
        if general_position(quad):
            yield tuple(L.index_of(x) for x in quad)


def quadrangles_generate(L: SubspaceLattice) -> tuple[int, int]:
    """(number of complete quadrangles, number that generate L); unordered."""
    total = good = 0
    seen = set()
    for quad in complete_quadrangles(L):
        key = frozenset(quad)
        if key in seen:
            continue
        seen.add(key)
        total += 1
        good += closure(L, list(quad)).reached_full
    return total, good


def generating_quadruple_types(L: SubspaceLattice) -> dict[tuple[int, int], int]:
    """Count 4-element generating sets of points and lines by type."""
    cand = [x for x in range(L.size) if L.height(x) in (1, L.d - 1)]
    counts: dict[tuple[int, int], int] = {}
    for quad in itertools.combinations(cand, 4):
        if closure(L, list(quad)).reached_full:
            t = type_of([L.subspace(x) for x in quad])
            counts[t] = counts.get(t, 0) + 1
    return counts


__all__ = ["FANO_POINTS", "FANO_LINES", "fano_lattice", "fano_check", "FanoReport",
           "FANO_PAIR_GENERATORS", "complete_quadrangles", "quadrangles_generate",
           "generating_quadruple_types"]
