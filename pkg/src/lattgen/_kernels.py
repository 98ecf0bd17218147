"""Closure kernels over meet/join lookup tables.

Elements of a (product of) finite lattice(s) are rows of factor indices;
a row is packed into one int64 with mixed-radix strides.  Both backends
visit pairs in the same FIFO order and therefore return identical arrays.

``LATTGEN_DISABLE_NUMBA=1`` selects the numpy backend at import time.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
    from numba import njit, types
    from numba.typed import Dict
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None


def _numba_requested() -> bool:
    flag = os.environ.get("LATTGEN_DISABLE_NUMBA", "").strip().lower()
    return flag in ("", "0", "false", "no")


HAVE_NUMBA = numba is not None
BACKEND = "numba" if HAVE_NUMBA and _numba_requested() else "numpy"

# dense membership array up to this many packed codes (int32 each)
DENSE_LIMIT = 1 << 24

OP_GEN, OP_MEET, OP_JOIN = 0, 1, 2
STATUS_OK, STATUS_CAP = 0, 1


def set_backend(name: str) -> str:
    """Switch backend at runtime (tests and the benchmark use this)."""
    global BACKEND
    if name not in ("numba", "numpy"):
        raise ValueError(name)
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not importable")
    old, BACKEND = BACKEND, name
    return old


# --------------------------------------------------------------------------
# numpy backend

def _closure_numpy(meet, join, tid, strides, gens, cap, total):
    k = gens.shape[1]
    dense = total <= DENSE_LIMIT
    if dense:
        index = np.full(total, -1, dtype=np.int32)
    else:
        seen: set[int] = set()
    alloc = max(16, min(cap + 1, 1024))
    elems = np.empty((alloc, k), dtype=np.int32)
    op = np.empty(alloc, dtype=np.int8)
    pa = np.empty(alloc, dtype=np.int32)
    pb = np.empty(alloc, dtype=np.int32)
    n = 0

    for g in range(gens.shape[0]):
        code = int(gens[g].astype(np.int64) @ strides)
        if dense:
            if index[code] >= 0:
                continue
            index[code] = n
        else:
            if code in seen:
                continue
            seen.add(code)
        if n >= cap:
            return elems[:n], op[:n], pa[:n], pb[:n], STATUS_CAP
        elems[n] = gens[g]
        op[n], pa[n], pb[n] = OP_GEN, g, -1
        n += 1

    cols = np.arange(k)
    i = 0
    while i < n and n < total:
        x = elems[i]
        ys = elems[: i + 1]
        cand = np.empty((2 * (i + 1), k), dtype=np.int32)
        cand[0::2] = meet[tid[cols], x[cols], ys]
        cand[1::2] = join[tid[cols], x[cols], ys]
        codes = cand.astype(np.int64) @ strides
        if dense:
            fresh = index[codes] < 0
        else:
            fresh = np.fromiter((c not in seen for c in codes.tolist()), bool, len(codes))
        pos = np.flatnonzero(fresh)
        if pos.size:
            # keep the first occurrence of each new code, in candidate order
            _, first = np.unique(codes[pos], return_index=True)
            pos = pos[np.sort(first)]
            m = pos.size
            if n + m > cap:
                return elems[:n], op[:n], pa[:n], pb[:n], STATUS_CAP
            if n + m > elems.shape[0]:
                new = max(2 * elems.shape[0], n + m)
                elems = np.resize(elems, (new, k))
                op = np.resize(op, new)
                pa = np.resize(pa, new)
                pb = np.resize(pb, new)
            elems[n:n + m] = cand[pos]
            op[n:n + m] = 1 + (pos % 2)
            pa[n:n + m] = i
            pb[n:n + m] = pos // 2
            if dense:
                index[codes[pos]] = np.arange(n, n + m, dtype=np.int32)
            else:
                seen.update(codes[pos].tolist())
            n += m
        i += 1
    return elems[:n], op[:n], pa[:n], pb[:n], STATUS_OK


def _closure_mask_numpy(meet, join, start):
    """Closure inside one table lattice; ``start`` is a boolean mask."""
    present = start.copy()
    while True:
        idx = np.flatnonzero(present)
        grid_m = meet[np.ix_(idx, idx)].ravel()
        grid_j = join[np.ix_(idx, idx)].ravel()
        before = int(present.sum())
        present[grid_m] = True
        present[grid_j] = True
        if int(present.sum()) == before:
            return present


def _first_generating_numpy(meet, join, subsets, target):
    n = meet.shape[0]
    for s in range(subsets.shape[0]):
        start = np.zeros(n, dtype=bool)
        start[subsets[s]] = True
        if int(_closure_mask_numpy(meet, join, start).sum()) == target:
            return s
    return -1


# --------------------------------------------------------------------------
# numba backend

if HAVE_NUMBA:

    @njit(cache=True)
    def _grow(elems, op, pa, pb, need):
        new = max(2 * elems.shape[0], need)
        e2 = np.empty((new, elems.shape[1]), dtype=np.int32)
        e2[: elems.shape[0]] = elems
        o2 = np.empty(new, dtype=np.int8)
        o2[: op.shape[0]] = op
        a2 = np.empty(new, dtype=np.int32)
        a2[: pa.shape[0]] = pa
        b2 = np.empty(new, dtype=np.int32)
        b2[: pb.shape[0]] = pb
        return e2, o2, a2, b2

    @njit(cache=True)
    def _closure_nb(meet, join, tid, strides, gens, cap, total, dense_limit):
        k = gens.shape[1]
        dense = total <= dense_limit
        index = np.full(total if dense else 1, -1, dtype=np.int32)
        table = Dict.empty(key_type=types.int64, value_type=types.int64)
        alloc = max(16, min(cap + 1, 1024))
        elems = np.empty((alloc, k), dtype=np.int32)
        op = np.empty(alloc, dtype=np.int8)
        pa = np.empty(alloc, dtype=np.int32)
        pb = np.empty(alloc, dtype=np.int32)
        tmp = np.empty(k, dtype=np.int32)
        n = 0

        for g in range(gens.shape[0]):
            code = 0
            for c in range(k):
                code += np.int64(gens[g, c]) * strides[c]
            if dense:
                if index[code] >= 0:
                    continue
                index[code] = n
            else:
                if code in table:
                    continue
                table[code] = n
            if n >= cap:
                return elems[:n], op[:n], pa[:n], pb[:n], 1
            if n >= elems.shape[0]:
                elems, op, pa, pb = _grow(elems, op, pa, pb, n + 1)
            for c in range(k):
                elems[n, c] = gens[g, c]
            op[n] = 0
            pa[n] = g
            pb[n] = -1
            n += 1

        i = 0
        while i < n and n < total:
            for j in range(i + 1):
                if n == total:
                    break
                for which in range(2):
                    tab = meet if which == 0 else join
                    code = 0
                    for c in range(k):
                        v = tab[tid[c], elems[i, c], elems[j, c]]
                        tmp[c] = v
                        code += np.int64(v) * strides[c]
                    if dense:
                        if index[code] >= 0:
                            continue
                        index[code] = n
                    else:
                        if code in table:
                            continue
                        table[code] = n
                    if n >= cap:
                        return elems[:n], op[:n], pa[:n], pb[:n], 1
                    if n >= elems.shape[0]:
                        elems, op, pa, pb = _grow(elems, op, pa, pb, n + 1)
                    for c in range(k):
                        elems[n, c] = tmp[c]
                    op[n] = 1 + which
                    pa[n] = i
                    pb[n] = j
                    n += 1
            i += 1
        return elems[:n], op[:n], pa[:n], pb[:n], 0

    @njit(cache=True)
    def _first_generating_nb(meet, join, subsets, target):
        n = meet.shape[0]
        present = np.zeros(n, dtype=np.bool_)
        members = np.empty(n, dtype=np.int32)
        for s in range(subsets.shape[0]):
            present[:] = False
            cnt = 0
            for t in range(subsets.shape[1]):
                e = subsets[s, t]
                if not present[e]:
                    present[e] = True
                    members[cnt] = e
                    cnt += 1
            i = 0
            while i < cnt and cnt < target:
                x = members[i]
                for jj in range(i + 1):
                    y = members[jj]
                    m = meet[x, y]
                    if not present[m]:
                        present[m] = True
                        members[cnt] = m
                        cnt += 1
                    v = join[x, y]
                    if not present[v]:
                        present[v] = True
                        members[cnt] = v
                        cnt += 1
                i += 1
            if cnt == target:
                return s
        return -1


# --------------------------------------------------------------------------
# dispatch

def closure_tables(meet, join, tid, strides, gens, cap, total, backend=None):
    """Run the worklist closure.

    meet, join: int32 arrays (T, n, n) of distinct factor tables;
    tid: int64 (k,) table id per coordinate; strides: int64 (k,);
    gens: int32 (g, k).  Returns ``(elems, op, pa, pb, status)``.
    """
    backend = backend or BACKEND
    meet = np.ascontiguousarray(meet, dtype=np.int32)
    join = np.ascontiguousarray(join, dtype=np.int32)
    tid = np.ascontiguousarray(tid, dtype=np.int64)
    strides = np.ascontiguousarray(strides, dtype=np.int64)
    gens = np.ascontiguousarray(gens, dtype=np.int32)
    if backend == "numba":
        return _closure_nb(meet, join, tid, strides, gens, int(cap), int(total), DENSE_LIMIT)
    return _closure_numpy(meet, join, tid, strides, gens, int(cap), int(total))


def first_generating(meet, join, subsets, target, backend=None) -> int:
    """Index of the first row of ``subsets`` generating ``target`` elements, or -1."""
    backend = backend or BACKEND
    meet = np.ascontiguousarray(meet, dtype=np.int32)
    join = np.ascontiguousarray(join, dtype=np.int32)
    subsets = np.ascontiguousarray(subsets, dtype=np.int32)
    if subsets.shape[0] == 0:
        return -1
    if backend == "numba":
        return int(_first_generating_nb(meet, join, subsets, int(target)))
    return _first_generating_numpy(meet, join, subsets, int(target))
