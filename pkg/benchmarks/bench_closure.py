"""Closure kernel timings: numba against the pure-numpy fallback.

Run: python benchmarks/bench_closure.py [--repeats 3] [--quick] [--json]

Both backends are loaded in one process and switched per call, so the
same tables and generator arrays feed each run.  Numba is warmed up on a
tiny lattice first; compile time is reported separately.
"""

import argparse
import json
import statistics
import time

from lattgen import GF, _kernels
from lattgen.constructions.recipes import (matrixU_generators, thm1_generators, thm3_generators,
                                           zadori_generators)
from lattgen.lattice import build_subspace_lattice, closure, min_genset


def workloads(quick: bool):
    rec = zadori_generators(2, 5)
    yield "zadori GF(2)^5 (374)", lambda b: closure(rec.lattice, rec.handles(), backend=b).size
    r9 = thm1_generators(GF(3, 2), 3)
    yield "thm1 GF(9)^3 (184)", lambda b: closure(r9.lattice, r9.handles(), backend=b).size
    r3 = thm3_generators(["2x1", "3x1"])
    yield "thm3 GF(2)xGF(3) (448)", lambda b: closure(r3.lattice, r3.handles(), backend=b).size
    L3 = build_subspace_lattice(GF(3), 3)
    yield "min-genset Sub(GF(3)^3), no pruning", \
        lambda b: min_genset(L3, 4, prune=False, backend=b).minimum
    if not quick:
        rU = matrixU_generators(GF(2))
        yield "matrix U, Sub(GF(2)^3)^4 (65536)", \
            lambda b: closure(rU.lattice, rU.handles(), backend=b).size


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="skip the 65536-element closure")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    warm = None
    if "numba" in backends:
        t0 = time.perf_counter()
        L = build_subspace_lattice(GF(2), 3)
        closure(L, [1, 2, 3, 4], backend="numba")
        min_genset(L, 2, backend="numba")
        warm = time.perf_counter() - t0

    rows = []
    for name, fn in workloads(args.quick):
        times, results = {}, {}
        for b in backends:
            ts = []
            for _ in range(args.repeats):
                t0 = time.perf_counter()
                results[b] = fn(b)
                ts.append(time.perf_counter() - t0)
            times[b] = statistics.median(ts)
        if len(set(map(str, results.values()))) != 1:
            raise SystemExit(f"{name}: backends disagree: {results}")
        rows.append({"workload": name, "result": results[backends[0]],
                     **{f"{b}_s": round(t, 4) for b, t in times.items()}})

    if args.json:
        print(json.dumps({"numba_warmup_s": warm, "rows": rows}, indent=1))
        return
    if warm is not None:
        print(f"numba warm-up (compile or cache load): {warm:.2f} s")
    print(f"{'workload':40s} {'numpy s':>10s} {'numba s':>10s} {'speedup':>8s}")
    for r in rows:
        nb = r.get("numba_s")
        sp = f"{r['numpy_s'] / max(nb, 1e-9):.1f}x" if nb is not None else "-"
        print(f"{r['workload']:40s} {r['numpy_s']:10.4f} {nb if nb is not None else '-':>10} {sp:>8s}")


if __name__ == "__main__":
    main()
