"""Brute-force reference implementations, independent of the package.

Subspaces of GF(p)^d are frozensets of coordinate tuples; meet is set
intersection and join is the span of the union.  Small inputs only.
"""

from __future__ import annotations

import itertools


def span(vectors, p: int, d: int) -> frozenset:
    out = {(0,) * d}
    for v in vectors:
        new = set(out)
        for w in out:
            for c in range(1, p):
                new.add(tuple((a + c * b) % p for a, b in zip(w, v)))
        out = new
        # closure under adding the new direction again is already covered by c
    return frozenset(out)


def all_subspaces(p: int, d: int) -> set:
    vecs = list(itertools.product(range(p), repeat=d))
    subs = {frozenset({(0,) * d})}
    frontier = set(subs)
    while frontier:
        nxt = set()
        for S in frontier:
            for v in vecs:
                if v not in S:
                    T = span(list(_basis(S, p, d)) + [v], p, d)
                    if T not in subs:
                        subs.add(T)
                        nxt.add(T)
        frontier = nxt
    return subs


def _basis(S, p, d):
    basis, cur = [], frozenset({(0,) * d})
    for v in sorted(S):
        if v not in cur:
            basis.append(v)
            cur = span(basis, p, d)
    return basis


def dim(S, p: int) -> int:
    n, k = len(S), 0
    while p**k < n:
        k += 1
    return k


def join(A, B, p: int, d: int) -> frozenset:
    return span(_basis(A, p, d) + _basis(B, p, d), p, d)


def naive_closure(gens, meet, join) -> set:
    """Fixpoint by repeated all-pairs sweeps; no worklist."""
    S = set(gens)
    while True:
        new = {f(x, y) for x in S for y in S for f in (meet, join)} - S
        if not new:
            return S
        S |= new


def antichain_width(leq) -> int:
    """Largest antichain by exhaustive subset search (n <= 16 or so)."""
    n = len(leq)
    best = 0
    for mask in range(1, 1 << n):
        idx = [i for i in range(n) if mask >> i & 1]
        if len(idx) <= best:
            continue
        if all(not leq[a][b] and not leq[b][a] for a, b in itertools.combinations(idx, 2)):
            best = len(idx)
    return best


def poly_field_mul(a, b, modulus, p):
    """Multiply coefficient lists (constant first) modulo a monic polynomial."""
    n = len(modulus) - 1
    prod = [0] * (2 * n)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for k in range(len(prod) - 1, n - 1, -1):
        c = prod[k]
        if c:
            for t in range(n + 1):
                prod[k - n + t] = (prod[k - n + t] - c * modulus[t]) % p
    return prod[:n]
