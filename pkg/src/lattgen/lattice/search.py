"""Minimum generating sets by exhaustive search, with sound pruning."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .. import _kernels
from .core import BaseLattice, SubspaceLattice

SEARCH_LIMIT = 512
BATCH = 4096


class SearchCapExceeded(RuntimeError):
    pass


def d2_holds(L: BaseLattice, ordered: Sequence[int]) -> bool:
    """e_0 v ... v e_{i-1} >= e_i ^ ... ^ e_t for every i in [t]."""
    t = len(ordered) - 1
    for i in range(1, t + 1):
        left = ordered[0]
        for x in ordered[1:i]:
            left = L.join(left, x)
        right = ordered[i]
        for x in ordered[i + 1:]:
            right = L.meet(right, x)
        if not L.leq(right, left):
            return False
    return True


def d2_applicable(L: BaseLattice) -> bool:
    # subspace lattices are subdirectly irreducible and modular
    return isinstance(L, SubspaceLattice) and L.size > 2


def d2_filter(L: BaseLattice, candidate: Sequence[int]) -> bool:
    """Admissibility of a candidate generating set.

    A generating tuple satisfies D2 in every order, so one failing order
    rules the set out.  Three elements passing in every order generate a
    sublattice of at most five elements, which rules out larger lattices.
    Lattices outside the lemma's scope admit everything.
    """
    if not d2_applicable(L):
        return True
    for perm in itertools.permutations(candidate):
        if not d2_holds(L, perm):
            return False
    if len(set(candidate)) == 3 and L.size > 5:
        return False
    return True


def _redundant(L: BaseLattice, cand: Sequence[int]) -> bool:
    """Some member is the meet or join of two others."""
    s = set(cand)
    for x, y in itertools.combinations(cand, 2):
        for z in (L.meet(x, y), L.join(x, y)):
            if z in s and z != x and z != y:
                return True
    return False


@dataclass
class GensetResult:
    minimum: int | None  # None means "> max_size"
    example: list[int]
    checked: int
    pruned: int

    def describe(self, max_size: int) -> str:
        return str(self.minimum) if self.minimum is not None else f"> {max_size}"


def min_genset(L: BaseLattice, max_size: int = 6, prune: bool = True,
               backend: str | None = None, limit: int = SEARCH_LIMIT) -> GensetResult:
    """Least size of a generating set, by subsets of increasing size.

    Pruning only drops candidates that provably cannot be a *minimum*
    generating set: D2 violators, sets with a member expressible from two
    others, and sets using 0 (1) when 0 is meet-reducible (1 join-reducible),
    since then 0 (1) is already generated by the rest.
    """
    if not isinstance(L, BaseLattice):
        raise TypeError("min_genset needs a lattice with dense handles")
    if L.size > limit:
        raise SearchCapExceeded(f"{L.size} elements exceeds the search guard of {limit}")
    meet, join = L.tables()
    n = L.size
    skip = set()
    if prune:
        if not L.is_meet_irreducible(L.bottom) and L.bottom != L.top:
            skip.add(L.bottom)
        if not L.is_join_irreducible(L.top) and L.bottom != L.top:
            skip.add(L.top)
    checked = pruned = 0
    for s in range(1, max_size + 1):
        if s > n:
            break
        pool = [x for x in range(n) if x not in skip] if (prune and s >= 2) else list(range(n))
        batch: list[tuple] = []
        for cand in itertools.combinations(pool, s):
            if prune and (_redundant(L, cand) or not d2_filter(L, cand)):
                pruned += 1
                continue
            batch.append(cand)
            if len(batch) >= BATCH:
                hit = _run(meet, join, batch, n, backend)
                checked += len(batch) if hit < 0 else hit + 1
                if hit >= 0:
                    return GensetResult(s, list(batch[hit]), checked, pruned)
                batch = []
        if batch:
            hit = _run(meet, join, batch, n, backend)
            checked += len(batch) if hit < 0 else hit + 1
            if hit >= 0:
                return GensetResult(s, list(batch[hit]), checked, pruned)
    return GensetResult(None, [], checked, pruned)


def _run(meet, join, batch, target, backend) -> int:
    arr = np.array(batch, dtype=np.int32)
    return _kernels.first_generating(meet, join, arr, target, backend=backend)


def generates(L: BaseLattice, gens: Sequence[int], backend: str | None = None) -> bool:
    meet, join = L.tables()
    arr = np.array([list(gens)], dtype=np.int32)
    return _kernels.first_generating(meet, join, arr, L.size, backend=backend) == 0
