"""Sublattice closure with witness terms."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .. import _kernels
from .core import BaseLattice, FiniteLattice, ProductLattice
from .terms import Join, LatticeTerm, Meet, Var

DEFAULT_CAP = 200_000


class CapExceeded(RuntimeError):
    pass


def _stack_tables(factors: Sequence[BaseLattice]):
    distinct: list[BaseLattice] = []
    tid = []
    for L in factors:
        for t, M in enumerate(distinct):
            if M is L:
                tid.append(t)
                break
        else:
            tid.append(len(distinct))
            distinct.append(L)
    nmax = max(L.size for L in distinct)
    meet = np.zeros((len(distinct), nmax, nmax), dtype=np.int32)
    join = np.zeros_like(meet)
    for t, L in enumerate(distinct):
        m, j = L.tables()
        meet[t, : L.size, : L.size] = m
        join[t, : L.size, : L.size] = j
    return meet, join, np.array(tid, dtype=np.int64)


@dataclass
class ClosureResult:
    lattice: FiniteLattice
    generators: list
    rows: np.ndarray  # (n, k) factor handles in discovery order
    op: np.ndarray
    pa: np.ndarray
    pb: np.ndarray
    reached_full: bool
    missing_example: object = None
    _terms: list = field(default_factory=list, repr=False)
    _pos: dict | None = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return int(self.rows.shape[0])

    def __len__(self) -> int:
        return self.size

    def _handle(self, r: int):
        if isinstance(self.lattice, ProductLattice):
            return tuple(int(a) for a in self.rows[r])
        return int(self.rows[r, 0])

    @property
    def elements(self) -> list:
        return [self._handle(r) for r in range(self.size)]

    def _positions(self) -> dict:
        if self._pos is None:
            self._pos = {h: r for r, h in enumerate(self.elements)}
        return self._pos

    @property
    def closed_set(self) -> set:
        return set(self._positions())

    def __contains__(self, x) -> bool:
        return x in self._positions()

    def position(self, x) -> int:
        """Discovery index of ``x``, or -1 (the convention of the Maple run)."""
        return self._positions().get(x, -1)

    def _term_at(self, r: int) -> LatticeTerm:
        ts = self._terms
        while len(ts) <= r:
            i = len(ts)
            o = self.op[i]
            if o == _kernels.OP_GEN:
                ts.append(Var(int(self.pa[i])))
            elif o == _kernels.OP_MEET:
                ts.append(Meet((ts[self.pa[i]], ts[self.pb[i]])))
            else:
                ts.append(Join((ts[self.pa[i]], ts[self.pb[i]])))
        return ts[r]

    def witness(self, x) -> LatticeTerm:
        r = self.position(x)
        if r < 0:
            raise KeyError(f"{x!r} is not in the closure")
        return self._term_at(r)

    def witnesses(self) -> dict:
        if self.size:
            self._term_at(self.size - 1)
        return {self._handle(r): self._terms[r] for r in range(self.size)}


def closure(L: FiniteLattice, gens: Sequence, want_witnesses: bool = False,
            cap: int = DEFAULT_CAP, backend: str | None = None) -> ClosureResult:
    """Least sublattice of ``L`` containing ``gens`` (FIFO worklist fixpoint).

    Parent links are always kept, so ``witness`` works regardless of
    ``want_witnesses``; the flag only precomputes the whole term table.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("closure needs at least one generator")
    factors = L.factors
    if isinstance(L, ProductLattice):
        rows = np.array([list(g) for g in gens], dtype=np.int32)
        strides = L.strides
    else:
        rows = np.array([[g] for g in gens], dtype=np.int32)
        strides = np.ones(1, dtype=np.int64)
    if rows.shape[1] != len(factors):
        raise ValueError("generator arity does not match the lattice")
    for c, F in enumerate(factors):
        if rows[:, c].min() < 0 or rows[:, c].max() >= F.size:
            raise ValueError(f"generator component out of range in factor {c}")
    meet, join, tid = _stack_tables(factors)
    elems, op, pa, pb, status = _kernels.closure_tables(
        meet, join, tid, strides, rows, cap, L.size, backend=backend)
    if status == _kernels.STATUS_CAP:
        raise CapExceeded(f"closure exceeded the cap of {cap} elements")
    res = ClosureResult(L, gens, np.asarray(elems), np.asarray(op), np.asarray(pa),
                        np.asarray(pb), reached_full=elems.shape[0] == L.size)
    if not res.reached_full:
        res.missing_example = _missing(L, elems, strides)
    if want_witnesses:
        res.witnesses()
    return res


def _missing(L: FiniteLattice, elems: np.ndarray, strides: np.ndarray):
    codes = elems.astype(np.int64) @ strides
    if L.size <= _kernels.DENSE_LIMIT:
        present = np.zeros(L.size, dtype=bool)
        present[codes] = True
        code = int(np.argmin(present))
    else:
        have = set(codes.tolist())
        code = next(c for c in range(L.size) if c not in have)
    if isinstance(L, ProductLattice):
        return L.unpack(code)
    return code


def is_closed(L: FiniteLattice, elements: Sequence) -> bool:
    s = set(elements)
    return all(L.meet(x, y) in s and L.join(x, y) in s for x in s for y in s)
