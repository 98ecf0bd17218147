"""Explicit generating sets and their Kronecker-delta certificates.

Generators are kept as subspaces (tuples of subspaces for products) so
that recipes over Q still make sense; ``GenSetRecipe.lattice`` gives the
finite lattice with integer handles whenever one can be built.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import cached_property, reduce
from typing import Sequence

from ..field import Field, FieldElement, field_generating_data, generated_subfield, parse_field
from ..lattice.closure import closure
from ..lattice.core import (FiniteLattice, ProductLattice, SubspaceAlgebra, TooLarge,
                            build_subspace_lattice, power_lattice)
from ..lattice.terms import (LatticeTerm, Var, join_all, meet_all, permute_variables,
                             shift_variables, term_eval_many)
from ..linalg import Subspace
from ..projective import canonical_frame, general_position, third_atom
from .qbinom import mu


class RecipeError(ValueError):
    pass


class NotEnoughGenerators(RecipeError):
    pass


class KTooLarge(RecipeError):
    pass


class BadConfiguration(RecipeError):
    pass


class MultiplicityTooHigh(RecipeError):
    pass


class PreconditionFailed(RecipeError):
    pass


class CertificateFailed(RuntimeError):
    pass


# ---------------------------------------------------------------------------

@dataclass
class GenSetRecipe:
    which: str
    params: dict
    fields: list[Field]  # one per factor
    d: int
    generators: list  # Subspace, or tuple of Subspace per factor
    certificate_terms: list[LatticeTerm] | None = None
    constants: dict = dc_field(default_factory=dict)

    @property
    def is_product(self) -> bool:
        return self.which in ("thm2_power", "matrixU", "thm3_product")

    @property
    def finite(self) -> bool:
        return all(F.is_finite for F in self.fields)

    @cached_property
    def lattice(self) -> FiniteLattice | None:
        if not self.finite:
            return None
        try:
            bases = [build_subspace_lattice(F, self.d) for F in self.fields]
        except TooLarge:
            return None
        if not self.is_product:
            return bases[0]
        if len(set(self.fields)) == 1:
            return power_lattice(bases[0], len(bases))
        return ProductLattice(bases)

    def lattice_spec(self) -> str:
        subs = [f"sub:{F.spec()}:{self.d}" for F in self.fields]
        if not self.is_product:
            return subs[0]
        if len(set(subs)) == 1:
            return f"pow:{subs[0]}:{len(subs)}"
        return "prod:" + ",".join(subs)

    def handles(self) -> list:
        L = self.lattice
        if L is None:
            raise TooLarge("no finite lattice with handles for this recipe")
        if not self.is_product:
            return [L.index_of(g) for g in self.generators]
        return [tuple(F.index_of(x) for F, x in zip(L.factors, g)) for g in self.generators]

    def rows(self) -> list[list[Subspace]]:
        """Per-factor generator rows: row c lists component c of every generator."""
        if not self.is_product:
            return [list(self.generators)]
        return [[g[c] for g in self.generators] for c in range(len(self.fields))]

    def encode_generators(self) -> list:
        if not self.is_product:
            return [g.to_json() for g in self.generators]
        return [[x.to_json() for x in g] for g in self.generators]

    def delta_check(self) -> tuple[list[list[bool]], bool]:
        """Evaluate the certificate terms on every row with exact subspace arithmetic."""
        if self.certificate_terms is None:
            raise CertificateFailed("recipe carries no certificate terms")
        table, exact = [], True
        for c, (F, row) in enumerate(zip(self.fields, self.rows())):
            A = SubspaceAlgebra(F, self.d)
            vals = term_eval_many(self.certificate_terms, row, A)
            line = []
            for j, v in enumerate(vals):
                ok = v == (A.top if j == c else A.bottom)
                exact &= ok
                line.append(ok)
            table.append(line)
        return table, exact

    def __len__(self) -> int:
        return len(self.generators)


# ---------------------------------------------------------------------------
# Zadori's four subspaces over a prime field

def _as_field(P) -> Field:
    if isinstance(P, Field):
        return P
    return parse_field(str(P))


def _span_rows(F: Field, n: int, rows: list[dict[int, int]]) -> Subspace:
    vecs = []
    for r in rows:
        v = [F.zero] * n
        for pos, val in r.items():
            v[pos - 1] = F.raw(val)
        vecs.append(v)
    return Subspace.span(F, vecs, n) if vecs else Subspace.zero(F, n)


def zadori_subspaces(P, n: int) -> list[Subspace]:
    """t_1..t_4 with the free parameters x_j spanned by unit vectors."""
    F = _as_field(P)
    if n < 3:
        raise ValueError("Zadori's subspaces need n >= 3")
    k = n // 2
    if n % 2:
        t1 = [{j: 1} for j in range(k + 1, n + 1)]
        t2 = [{j: 1} for j in range(1, k + 1)]
        t3 = [{j: 1, k + 1 + j: 1} for j in range(1, k + 1)]
        t4 = [{j: 1, k + j: 1} for j in range(1, k + 1)]
    else:
        t1 = [{j: 1} for j in range(k + 1, n + 1)]
        t2 = [{j: 1} for j in range(1, k + 1)]
        t3 = [{j: 1, k + j: 1} for j in range(1, k + 1)]
        t4 = [{j: 1, k - 1 + j: 1} for j in range(2, k + 1)]
    return [_span_rows(F, n, t) for t in (t1, t2, t3, t4)]


def zadori_generators(P, n: int) -> GenSetRecipe:
    F = _as_field(P)
    if F.kind == "extension":
        raise ValueError("Zadori's recipe is for prime fields")
    return GenSetRecipe("zadori", {"field": F.spec(), "n": n}, [F], n, zadori_subspaces(F, n))


def hyperplane(F: Field, n: int, i: int) -> Subspace:
    return _span_rows(F, n, [{j: 1} for j in range(1, n + 1) if j != i])


def hyperplane_ideal_check(L, G: Subspace, i: int) -> bool:
    """Does the union of the ideals of G and of H_i = {x_i = 0} generate L?"""
    H = hyperplane(L.field, L.d, i)
    if G.rank < 2:
        raise PreconditionFailed("G must have dimension at least 2")
    if G <= H:
        raise PreconditionFailed(f"G lies inside H_{i}")
    g, h = L.index_of(G), L.index_of(H)
    leq = L.leq_matrix()
    gens = [x for x in range(L.size) if leq[x, g] or leq[x, h]]
    return closure(L, gens).reached_full


# ---------------------------------------------------------------------------
# generating sets of a single subspace lattice

def embed_subspace(X: Subspace, F: Field) -> Subspace:
    from ..projective import embed
    return embed(X, F)


def pattern_matrix(d: int) -> list[list[str]]:
    """'*' marks a slot, '0' a forced zero, '-1' the last column."""
    h = d // 2
    rows = []
    for t in range(1, h + 1):
        row = ["0"] * d
        row[t - 1] = "*"
        for c in range(h + 1, d):
            row[c - 1] = "*"
        row[d - 1] = "-1"
        rows.append(row)
    return rows


def fill_pattern(F: Field, d: int, values: Sequence) -> list[list]:
    """Raw field values placed row-major into the slots."""
    pat = pattern_matrix(d)
    it = iter(values)
    out = []
    for row in pat:
        out.append([next(it) if s == "*" else (F.neg(F.one) if s == "-1" else F.zero)
                    for s in row])
    return out


def thm1_generators(F: Field, d: int, multiset: Sequence | None = None) -> GenSetRecipe:
    """4 + m generators: embedded prime-field generators plus one
    pattern-matrix subspace per block of M field generators."""
    if d < 3:
        raise ValueError("d must be at least 3")
    P = F.prime_subfield
    M = d * d // 4
    if multiset is None:
        t, gens = field_generating_data(F)
        vals = [g.value for g in gens]
        m = -(-int(t) // M)
    else:
        vals = [F.raw(x) for x in multiset]
        if any(v == F.zero for v in vals):
            raise NotEnoughGenerators("pattern entries must be nonzero")
        if F.is_finite and len(generated_subfield(F, [FieldElement(F, v) for v in vals])) != F.order:
            raise NotEnoughGenerators("the supplied elements do not generate the field")
        m = -(-len(vals) // M)
    padded = vals + [F.one] * (m * M - len(vals))
    base = [embed_subspace(t, F) for t in zadori_subspaces(P, d)]
    blocks = []
    extra = []
    for i in range(m):
        A = fill_pattern(F, d, padded[i * M:(i + 1) * M])
        blocks.append([[F.format_raw(x) for x in row] for row in A])
        extra.append(Subspace.from_raw(F, A, d))
    params = {"field": F.spec(), "d": d, "M": M, "m": m, "pattern": blocks}
    return GenSetRecipe("thm1", params, [F], d, base + extra)


# ---------------------------------------------------------------------------
# powers: Theorem-2.1 constants plus one separating vector

def _independent_atoms_below(L, u: int, h: int) -> list[int]:
    chosen, span = [], L.bottom
    for a in L.atoms():
        if L.leq(a, u) and not L.leq(a, span):
            chosen.append(a)
            span = L.join(span, a)
            if len(chosen) == h:
                break
    return chosen


def thm2_power_generators(F: Field, d: int, k: int, multiset: Sequence | None = None,
                          certify: bool = True) -> GenSetRecipe:
    if k < 1:
        raise ValueError("k must be positive")
    bound = mu(F, d)
    if F.is_finite and k > bound:
        raise KTooLarge(f"k = {k} exceeds mu = {bound}; no construction for this k")
    base = thm1_generators(F, d, multiset)
    L = build_subspace_lattice(F, d)
    h = d // 2
    us = L.elements_of_height(h)[:k]
    b0 = tuple(L.subspace(u) for u in us)
    gens = [b0] + [tuple([g] * k) for g in base.generators]
    rec = GenSetRecipe("thm2_power", {"field": F.spec(), "d": d, "k": k, "mu": bound,
                                      "base": base.params}, [F] * k, d, gens)
    if certify:
        rec.certificate_terms = thm2_separating_terms(rec)
    return rec


def thm2_separating_terms(rec: GenSetRecipe) -> list[LatticeTerm]:
    """f_i = join over frame atoms b of ( b ^ meet_{e in S_i} ( be v (x0 ^ e) ) ).

    Constant elements are replaced by witness terms in the constant
    generators (shifted past the separating variable x0).
    """
    F, d = rec.fields[0], rec.d
    L = build_subspace_lattice(F, d)
    consts = [L.index_of(g[0]) for g in rec.generators[1:]]
    R = closure(L, consts)
    if not R.reached_full:
        raise CertificateFailed("constant generators do not generate the factor")
    cache: dict[int, LatticeTerm] = {}

    def tau(x: int) -> LatticeTerm:
        if x not in cache:
            cache[x] = shift_variables(R.witness(x), 1)
        return cache[x]

    fr = canonical_frame(F, d)
    B = [L.index_of(fr.a(i)) for i in range(1, d + 1)]
    h = d // 2
    xi0 = Var(0)
    us = [L.index_of(u) for u in rec.generators[0]]
    terms = []
    for u in us:
        S = _independent_atoms_below(L, u, h)
        parts = []
        for b in B:
            inner = []
            for e in S:
                be = L.index_of(third_atom(L.subspace(b), L.subspace(e)))
                inner.append(tau(be) | (xi0 & tau(e)))
            parts.append(tau(b) & meet_all(inner))
        terms.append(join_all(parts))
    # evaluation on every row before handing the terms out
    for j, u in enumerate(us):
        row = [u] + consts
        vals = term_eval_many(terms, row, L)
        for i, v in enumerate(vals):
            if v != (L.top if i == j else L.bottom):
                raise CertificateFailed(f"f_{i + 1} on row {j + 1} gave {L.label(v)}")
    return terms


# ---------------------------------------------------------------------------
# the 4 x 4 matrix U over one plane

def matrixU_terms() -> dict[str, list]:
    """w_i, h_ij and f_i (0-based variable indices)."""
    x = [Var(i) for i in range(4)]
    w = [meet_all([x[i] | x[j] for j in range(4) if j != i]) for i in range(4)]
    h = {}
    for i in range(4):
        for j in range(4):
            if i != j:
                h[(i, j)] = x[j] & meet_all([w[i] | x[s] for s in range(4) if s not in (i, j)])
    f = [join_all([h[(i, j)] for j in range(4) if j != i]) for i in range(4)]
    return {"w": w, "h": h, "f": f}


def default_matrixU_config(F: Field) -> tuple[Subspace, Subspace, Subspace, Subspace]:
    """e = {x1 + x2 + x3 = 0}, (a, b, c) = (a_1, a_2, a_3)."""
    fr = canonical_frame(F, 3)
    e = Subspace.span(F, [[1, -1, 0], [0, 1, -1]], 3)
    return e, fr.a(1), fr.a(2), fr.a(3)


def matrixU_rows(e, a, b, c) -> list[tuple]:
    return [(e, a, b, c), (a, e, b, c), (a, b, e, c), (a, b, c, e)]


def matrixU_generators(F: Field, config: Sequence[Subspace] | None = None) -> GenSetRecipe:
    e, a, b, c = config if config is not None else default_matrixU_config(F)
    if e.rank != 2 or any(p.rank != 1 for p in (a, b, c)):
        raise BadConfiguration("need a line e and three points a, b, c")
    if any(p <= e for p in (a, b, c)):
        raise BadConfiguration("a, b, c must lie off the line e")
    if not general_position((a, b, c, e)):
        raise BadConfiguration("a, b, c must not be collinear")
    rows = matrixU_rows(e, a, b, c)
    cols = [tuple(r[g] for r in rows) for g in range(4)]
    rec = GenSetRecipe("matrixU", {"field": F.spec(), "config": [str(x) for x in (e, a, b, c)]},
                       [F] * 4, 3, cols)
    rec.certificate_terms = matrixU_terms()["f"]
    return rec


def matrixU_table(F: Field, config: Sequence[Subspace] | None = None) -> list[dict]:
    """Values of w_1, h_12, h_13, h_14, f_1 on each row of U, by label."""
    e, a, b, c = config if config is not None else default_matrixU_config(F)
    names = {e: "e", a: "a", b: "b", c: "c"}
    A = SubspaceAlgebra(F, 3)
    names[A.top], names[A.bottom] = "1", "0"
    T = matrixU_terms()
    want = [T["w"][0], T["h"][(0, 1)], T["h"][(0, 2)], T["h"][(0, 3)], T["f"][0]]
    out = []
    for row in matrixU_rows(e, a, b, c):
        vals = term_eval_many(want, list(row), A)
        out.append({"row": [names[x] for x in row],
                    "values": [names.get(v, str(v)) for v in vals]})
    return out


# ---------------------------------------------------------------------------
# products of planes over pairwise distinct prime fields

THM3_POINTS = ([1, 0, 0], [0, 1, 0], [0, 0, -1], [1, 1, -1])


def thm3_points(F: Field) -> dict[str, Subspace]:
    p1, p2, p3, p4 = (Subspace.point(F, v) for v in THM3_POINTS)
    c23 = (p1 | p4) & (p2 | p3)
    c13 = (p2 | p4) & (p1 | p3)
    return {"p1": p1, "p2": p2, "p3": p3, "p4": p4, "c13": c13, "c23": c23, "q": c13 | c23}


def thm3_row(F: Field, nu: int) -> tuple[Subspace, ...]:
    """Place q at position nu (1..4) among p1, p2, p3."""
    P = thm3_points(F)
    ps = [P["p1"], P["p2"], P["p3"]]
    ps.insert(nu - 1, P["q"])
    return tuple(ps)


def parse_thm3_fields(items) -> list[tuple[Field, int]]:
    """Accepts [(field or spec, multiplicity), ...] or strings like '2x4'."""
    out = []
    for it in items:
        if isinstance(it, str):
            spec, _, mult = it.partition("x")
            it = (spec, int(mult) if mult else 1)
        F, m = it
        F = F if isinstance(F, Field) else parse_field(str(F))
        out.append((F, int(m)))
    seen = set()
    for F, m in out:
        if F.kind == "extension":
            raise BadConfiguration(f"{F} is not a prime field")
        if F in seen:
            raise BadConfiguration(f"{F} listed twice; give one entry with a multiplicity")
        seen.add(F)
        if m < 1:
            raise BadConfiguration("multiplicities are positive")
        if m > 4:
            raise MultiplicityTooHigh(f"{F} occurs {m} times; at most four copies are 4-generated")
    return out


def _ensure_fields(fields) -> list[tuple[Field, int]]:
    fields = list(fields)
    if all(isinstance(f, tuple) and isinstance(f[0], Field) for f in fields):
        return fields
    return parse_thm3_fields(fields)


def thm3_layout(fields) -> list[tuple[int, int]]:
    """(field position, nu) per factor; multiplicity m keeps nu = 5-m..4."""
    return [(i, nu) for i, (_, m) in enumerate(fields) for nu in range(5 - m, 5)]


def thm3_generators(fields, certify: bool = True) -> GenSetRecipe:
    fields = parse_thm3_fields(fields)
    layout = thm3_layout(fields)
    rows = [thm3_row(fields[i][0], nu) for i, nu in layout]
    cols = [tuple(r[g] for r in rows) for g in range(4)]
    rec = GenSetRecipe("thm3_product",
                       {"fields": [[F.spec(), m] for F, m in fields],
                        "layout": [[fields[i][0].spec(), nu] for i, nu in layout]},
                       [fields[i][0] for i, _ in layout], 3, cols)
    if certify:
        rec.certificate_terms = [thm3_terms(i, nu, fields) for i, nu in layout]
        _, exact = rec.delta_check()
        if not exact:
            raise CertificateFailed("product terms failed the delta check")
    return rec


def _tau_terms():
    x1, x2, x3, x4 = (Var(i) for i in range(4))
    p4 = (((x1 | x3) & x4) | x2) & (((x2 | x3) & x4) | x1)
    w = (x3 | p4) & (x1 | x2)
    return x1, x2, x3, x4, p4, w


class _TauSeq:
    """tau_0 = x3, tau_{s+1} = (((tau_s v w) ^ (x1 v p4)) v x2) ^ (x1 v x3)."""

    def __init__(self):
        self.x1, self.x2, self.x3, self.x4, self.p4, self.w = _tau_terms()
        self.seq = [self.x3]

    def __getitem__(self, s: int) -> LatticeTerm:
        while len(self.seq) <= s:
            t = self.seq[-1]
            self.seq.append((((t | self.w) & (self.x1 | self.p4)) | self.x2) & (self.x1 | self.x3))
        return self.seq[s]


def _recip312(T: _TauSeq, x: LatticeTerm) -> LatticeTerm:
    x1, x2, x3 = T.x1, T.x2, T.x3
    c13 = T[1]
    c23 = permute_variables(T[1], [1, 0, 2, 3])
    c21 = (c13 | c23) & (x1 | x2)
    t = ((x | c23) & (x1 | x2)) | c13
    t = (t & (x2 | x3)) | c21
    return t & (x3 | x1)


# variable images taking g_4 to g_nu, in the convention of permute_variables
G_PERMUTATIONS = {1: [1, 2, 3, 0], 2: [0, 2, 3, 1], 3: [0, 1, 3, 2], 4: [0, 1, 2, 3]}


def thm3_g4(i: int, fields) -> LatticeTerm:
    """Join of the beta terms: p_1..p_4 on the own factor, 0 elsewhere."""
    fields = _ensure_fields(fields)
    F = fields[i][0]
    T = _TauSeq()
    if F.is_finite:
        beta3 = T.x3 & T[F.order]
    else:
        orders = sorted({G.order for G, _ in fields if G.is_finite})
        beta3 = meet_all([T.x3] + [T.x1 | _recip312(T, T[t]) for t in orders])
    beta1 = T.x1 & (beta3 | T.x2 | T.p4)
    beta2 = T.x2 & (beta3 | T.x1 | T.p4)
    beta4 = T.p4 & (beta3 | T.x1 | T.x2)
    return join_all([beta1, beta2, beta3, beta4])


def thm3_terms(i: int, nu: int, fields, permutations=None) -> LatticeTerm:
    """f^i_nu = g^i_nu ^ f^(e)_nu for field position i (0-based), nu in 1..4."""
    fields = _ensure_fields(fields)
    perms = permutations or G_PERMUTATIONS
    g = permute_variables(thm3_g4(i, fields), perms[nu])
    return g & matrixU_terms()["f"][nu - 1]


__all__ = [
    "GenSetRecipe", "zadori_subspaces", "zadori_generators", "hyperplane", "hyperplane_ideal_check",
    "pattern_matrix", "fill_pattern", "thm1_generators", "thm2_power_generators",
    "thm2_separating_terms", "matrixU_terms", "matrixU_generators", "matrixU_table",
    "default_matrixU_config", "thm3_points", "thm3_row", "thm3_generators", "thm3_terms",
    "thm3_layout", "parse_thm3_fields", "G_PERMUTATIONS",
    "RecipeError", "NotEnoughGenerators", "KTooLarge", "BadConfiguration", "MultiplicityTooHigh",
    "PreconditionFailed", "CertificateFailed",
]
