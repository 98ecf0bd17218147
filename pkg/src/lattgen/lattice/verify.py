"""Deciding whether a set generates a lattice.

For a direct product L_1 x ... x L_k a set generates iff (1) each
projection generates its factor and (2) there are terms f_i sending the
projected generator rows to the Kronecker delta.  Mode ``fgtln`` certifies
(2) with supplied terms or, failing that, builds them from pairwise
closures: f_i is the meet over j of a witness for (1, 0) in L_i x L_j.
If some pair closure misses (1, 0) the answer is a definite "no", since
projections of a generating set generate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .closure import DEFAULT_CAP, CapExceeded, closure
from .core import BaseLattice, FiniteLattice, ProductLattice
from .terms import LatticeTerm, meet_all, term_eval_many, terms_to_graph

UNDETERMINED = "undetermined"


class NoSeparatingTerm(RuntimeError):
    pass


@dataclass
class VerifyReport:
    generates: bool | str
    mode: str
    lattice_size: int
    closure_size: int | None = None
    missing_example: object = None
    factor_closure_sizes: list[int] | None = None
    terms: list[LatticeTerm] | None = None
    delta_table: list[list[str]] | None = None
    reason: str = ""
    witnesses: dict | None = field(default=None, repr=False)

    def to_json(self, L: FiniteLattice, with_terms: bool = True) -> dict:
        out = {"generates": self.generates, "mode": self.mode, "lattice_size": self.lattice_size}
        if self.closure_size is not None:
            out["closure_size"] = self.closure_size
        if self.missing_example is not None:
            out["missing_example"] = L.encode(self.missing_example)
        if self.factor_closure_sizes is not None:
            out["factor_closure_sizes"] = self.factor_closure_sizes
        if self.delta_table is not None:
            out["delta_table"] = self.delta_table
        if with_terms and self.terms is not None:
            out["terms"] = terms_to_graph(self.terms)
        if self.witnesses is not None:
            out["witnesses"] = self.witnesses
        if self.reason:
            out["reason"] = self.reason
        return out


def _delta_cell(F: BaseLattice, v, i: int, j: int) -> str:
    if v == F.top:
        return "1"
    if v == F.bottom:
        return "0"
    return F.label(v)


def delta_table(P: ProductLattice | BaseLattice, gens: Sequence, terms: Sequence[LatticeTerm]
                ) -> tuple[list[list[str]], bool]:
    """Evaluate every f_j on every factor row.  Entry [i][j] is f_j(row i)."""
    factors = P.factors
    k = len(factors)
    rows = [[g[c] for g in gens] for c in range(k)] if isinstance(P, ProductLattice) \
        else [list(gens)]
    table, exact = [], True
    for i, (F, row) in enumerate(zip(factors, rows)):
        vals = term_eval_many(terms, row, F)
        line = []
        for j, v in enumerate(vals):
            want = F.top if i == j else F.bottom
            exact &= v == want
            line.append(_delta_cell(F, v, i, j))
        table.append(line)
    return table, exact


class _PairCache:
    def __init__(self):
        self.factor: dict = {}
        self.pair: dict = {}

    def factor_closure(self, F: BaseLattice, row: tuple):
        key = (id(F), row)
        if key not in self.factor:
            self.factor[key] = closure(F, list(row))
        return self.factor[key]

    def separator(self, Fi: BaseLattice, Fj: BaseLattice, ri: tuple, rj: tuple):
        """Witness term for (1, 0) in the closure of the paired rows, or None."""
        key = (id(Fi), id(Fj), ri, rj)
        if key not in self.pair:
            if Fi is Fj and ri == rj:
                self.pair[key] = None  # the diagonal is a sublattice
            else:
                R = closure(ProductLattice([Fi, Fj]), list(zip(ri, rj)))
                target = (Fi.top, Fj.bottom)
                self.pair[key] = R.witness(target) if target in R else None
        return self.pair[key]


def separating_terms(P: FiniteLattice, gens: Sequence, cache: _PairCache | None = None
                     ) -> tuple[list[LatticeTerm] | None, str]:
    """Generic Kronecker-delta terms, or (None, reason) when none exist."""
    cache = cache or _PairCache()
    factors = P.factors
    k = len(factors)
    if not isinstance(P, ProductLattice):
        R = cache.factor_closure(factors[0], tuple(gens))
        if factors[0].top not in R:
            return None, "the top element is not generated"
        return [R.witness(factors[0].top)], ""
    rows = [tuple(g[c] for g in gens) for c in range(k)]
    if k == 1:
        R = cache.factor_closure(factors[0], rows[0])
        if factors[0].top not in R:
            return None, "the top element is not generated"
        return [R.witness(factors[0].top)], ""
    out = []
    for i in range(k):
        parts = []
        for j in range(k):
            if j == i:
                continue
            t = cache.separator(factors[i], factors[j], rows[i], rows[j])
            if t is None:
                return None, f"(1,0) is not generated in factors ({i + 1},{j + 1})"
            parts.append(t)
        out.append(meet_all(parts))
    return out, ""


def verify_generates(L: FiniteLattice, gens: Sequence, mode: str = "auto",
                     terms: Sequence[LatticeTerm] | None = None,
                     cap: int = DEFAULT_CAP, want_witnesses: bool = False) -> VerifyReport:
    """Does ``gens`` generate ``L``?

    mode: ``closure`` (full fixpoint), ``fgtln`` (product lemma) or ``auto``
    (closure when ``L`` fits under ``cap``).  With caller-supplied terms a
    failed delta table yields "undetermined" rather than False.
    """
    gens = list(gens)
    if mode not in ("auto", "closure", "fgtln"):
        raise ValueError(f"unknown mode {mode!r}")
    is_product = isinstance(L, ProductLattice)
    if mode == "auto":
        mode = "closure" if (not is_product or L.size <= cap) else "fgtln"
    if mode == "fgtln" and not is_product:
        mode = "closure"

    if mode == "closure":
        R = closure(L, gens, cap=cap)
        rep = VerifyReport(R.reached_full, "closure", L.size, closure_size=R.size,
                           missing_example=R.missing_example)
        if want_witnesses:
            rep.witnesses = {L.label(x): str(t) for x, t in R.witnesses().items()}
        if terms is not None:
            rep.terms = list(terms)
            rep.delta_table, _ = delta_table(L, gens, terms)
        return rep

    cache = _PairCache()
    factors = L.factors
    rows = [tuple(g[c] for g in gens) for c in range(len(factors))]
    sizes = []
    for c, (F, row) in enumerate(zip(factors, rows)):
        R = cache.factor_closure(F, row)
        sizes.append(R.size)
        if not R.reached_full:
            missing = list(L.bottom)
            missing[c] = R.missing_example
            return VerifyReport(False, "fgtln", L.size, factor_closure_sizes=sizes,
                                missing_example=tuple(missing),
                                reason=f"projection onto factor {c + 1} does not generate it")
    if terms is None:
        built, why = separating_terms(L, gens, cache)
        if built is None:
            return VerifyReport(False, "fgtln", L.size, factor_closure_sizes=sizes, reason=why)
        terms_used, supplied = built, False
    else:
        terms_used, supplied = list(terms), True
    table, exact = delta_table(L, gens, terms_used)
    rep = VerifyReport(True if exact else UNDETERMINED, "fgtln", L.size,
                       factor_closure_sizes=sizes, terms=terms_used, delta_table=table)
    if not exact:
        rep.reason = "supplied terms do not give the Kronecker delta" if supplied \
            else "constructed terms failed"  # cannot happen for the pairwise construction
    return rep


def require_generates(L: FiniteLattice, gens: Sequence, terms: Sequence[LatticeTerm]) -> VerifyReport:
    """Lemma-mode check that raises when the delta table is not exact."""
    rep = verify_generates(L, gens, mode="fgtln", terms=terms)
    if rep.generates == UNDETERMINED:
        raise NoSeparatingTerm(rep.reason)
    return rep


__all__ = ["VerifyReport", "verify_generates", "require_generates", "separating_terms",
           "delta_table", "NoSeparatingTerm", "UNDETERMINED", "CapExceeded"]
