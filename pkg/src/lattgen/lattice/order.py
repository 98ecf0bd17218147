"""Antichains, power-poset bounds and self-duality."""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx
import numpy as np
from networkx.algorithms.isomorphism import DiGraphMatcher
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .core import BaseLattice, FiniteLattice, SubspaceLattice, TooLarge

POSET_LIMIT = 5000
DUAL_LIMIT = 64


def _leq_of(P) -> np.ndarray:
    if isinstance(P, np.ndarray):
        leq = P.astype(bool)
    elif isinstance(P, BaseLattice):
        leq = P.leq_matrix()
    else:
        raise TypeError("expected a base lattice or a boolean order matrix")
    if leq.shape[0] != leq.shape[1]:
        raise ValueError("order matrix must be square")
    return leq


def max_antichain(P) -> int:
    """Width of a poset: size minus a maximum matching of strict comparabilities."""
    leq = _leq_of(P)
    n = leq.shape[0]
    if n > POSET_LIMIT:
        raise TooLarge(f"poset of {n} elements exceeds {POSET_LIMIT}")
    if n == 0:
        return 0
    lt = leq & ~np.eye(n, dtype=bool)
    match = maximum_bipartite_matching(csr_matrix(lt.astype(np.int8)), perm_type="column")
    return n - int((match >= 0).sum())


def brute_antichain(leq: np.ndarray) -> int:
    """Exhaustive oracle for small posets."""
    n = leq.shape[0]
    comp = (leq | leq.T) & ~np.eye(n, dtype=bool)
    best = 0
    for mask in range(1 << n):
        idx = [i for i in range(n) if mask >> i & 1]
        if len(idx) > best and not comp[np.ix_(idx, idx)].any():
            best = len(idx)
    return best


def power_order(leq: np.ndarray, n: int) -> np.ndarray:
    out = leq.astype(np.uint8)
    for _ in range(n - 1):
        out = np.kron(out, leq.astype(np.uint8))
    return out.astype(bool)


@dataclass
class Obs11Bound:
    coarse: int
    exact: int | None  # None: skipped

    def to_json(self) -> dict:
        return {"coarse": self.coarse, "exact": self.exact if self.exact is not None else "skipped"}


def obs11_bound(L, n: int) -> Obs11Bound:
    """|L|^n, and the width of L^n when that poset fits.

    An n-generated L^k needs a k-element antichain in L^n, so any k above
    ``exact`` certifies that L^k is not n-generated.
    """
    if n < 1:
        raise ValueError("n must be positive")
    leq = _leq_of(L)
    size = leq.shape[0]
    coarse = size**n
    if coarse > POSET_LIMIT:
        return Obs11Bound(coarse, None)
    return Obs11Bound(coarse, max_antichain(power_order(leq, n)))


def cover_graph(leq: np.ndarray) -> nx.DiGraph:
    n = leq.shape[0]
    lt = leq & ~np.eye(n, dtype=bool)
    between = (lt.astype(np.int64) @ lt.astype(np.int64)) > 0
    G = nx.DiGraph()
    G.add_nodes_from(range(n))
    G.add_edges_from(zip(*np.nonzero(lt & ~between)))
    return G


def _is_antiautomorphism(leq: np.ndarray, phi: np.ndarray) -> bool:
    # x <= y  iff  phi(y) <= phi(x)
    return bool((leq == leq[np.ix_(phi, phi)].T).all())


def dual_check(L: FiniteLattice | np.ndarray) -> bool:
    """Is there an order-reversing bijection of L onto itself?"""
    if isinstance(L, SubspaceLattice):
        phi = L.perp
        return len(set(phi.tolist())) == L.size and _is_antiautomorphism(L.leq_matrix(), phi)
    leq = _leq_of(L)
    n = leq.shape[0]
    if n > DUAL_LIMIT:
        raise TooLarge(f"dual_check searches lattices of at most {DUAL_LIMIT} elements")
    G = cover_graph(leq)
    H = G.reverse(copy=True)
    for m in DiGraphMatcher(G, H).isomorphisms_iter():
        phi = np.array([m[i] for i in range(n)])
        if _is_antiautomorphism(leq, phi):
            return True
    return False


def random_poset(n: int, p: float, rng: np.random.Generator) -> np.ndarray:
    """Random order: transitive closure of a random DAG on 0..n-1."""
    adj = np.triu(rng.random((n, n)) < p, k=1)
    leq = adj | np.eye(n, dtype=bool)
    for k in range(n):
        leq |= leq[:, [k]] & leq[[k], :]
    return leq


__all__ = ["max_antichain", "brute_antichain", "obs11_bound", "Obs11Bound", "dual_check",
           "power_order", "random_poset", "cover_graph"]
