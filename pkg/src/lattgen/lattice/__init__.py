"""Finite lattices, lattice terms, closure and generation checks."""

from .closure import DEFAULT_CAP, CapExceeded, ClosureResult, closure, is_closed
from .core import (BaseLattice, FiniteLattice, NotAnElement, ProductAlgebra, ProductLattice,
                   SubspaceAlgebra, SubspaceLattice, TableLattice, TooLarge,
                   build_subspace_lattice, parse_lattice, power_lattice, product_lattice,
                   project, project_lattice)
from .order import brute_antichain, dual_check, max_antichain, obs11_bound, random_poset
from .search import GensetResult, SearchCapExceeded, d2_filter, d2_holds, generates, min_genset
from .terms import (ArityMismatch, LatticeTerm, UnboundConstant, arity, const, join_all,
                    meet_all, term_eval, term_from_graph, term_to_graph, term_to_str,
                    terms_to_graph, var)
from .verify import (UNDETERMINED, NoSeparatingTerm, VerifyReport, delta_table,
                     require_generates, separating_terms, verify_generates)

__all__ = [
    "DEFAULT_CAP", "CapExceeded", "ClosureResult", "closure", "is_closed",
    "BaseLattice", "FiniteLattice", "NotAnElement", "ProductAlgebra", "ProductLattice",
    "SubspaceAlgebra", "SubspaceLattice", "TableLattice", "TooLarge", "build_subspace_lattice",
    "parse_lattice", "power_lattice", "product_lattice", "project", "project_lattice",
    "brute_antichain", "dual_check", "max_antichain", "obs11_bound", "random_poset",
    "GensetResult", "SearchCapExceeded", "d2_filter", "d2_holds", "generates", "min_genset",
    "ArityMismatch", "LatticeTerm", "UnboundConstant", "arity", "const", "join_all", "meet_all",
    "term_eval", "term_from_graph", "term_to_graph", "term_to_str", "terms_to_graph", "var",
    "UNDETERMINED", "NoSeparatingTerm", "VerifyReport", "delta_table", "require_generates",
    "separating_terms", "verify_generates",
]
