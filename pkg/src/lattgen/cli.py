"""``lattgen`` command line.

Exit codes: 0 verified true (or a plain computation), 2 verified false,
3 undetermined, 1 error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .constructions import certificates, recipes
from .constructions.qbinom import bounds, parse_q, qbinom, qbinom_log10, table1
from .field import Cardinal, parse_field
from .lattice import (CapExceeded, NotAnElement, SearchCapExceeded, TooLarge, UNDETERMINED,
                      closure, max_antichain, min_genset, obs11_bound, parse_lattice,
                      terms_to_graph, verify_generates)
from .lattice.core import ProductLattice
from .projective import (ProjectiveError, canonical_frame, coring_add, coring_mul, coring_recip,
                         coring_sub, delta, delta_read, point_str)

EXIT_TRUE, EXIT_ERROR, EXIT_FALSE, EXIT_UNDETERMINED = 0, 1, 2, 3

RECIPES = ("thm1", "thm2", "matrixU", "thm3", "zadori")


class CliError(Exception):
    pass


def _verdict_code(v) -> int:
    if v == UNDETERMINED:
        return EXIT_UNDETERMINED
    return EXIT_TRUE if v else EXIT_FALSE


def _jsonable(x):
    if isinstance(x, Cardinal):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "item"):  # numpy scalars
        return x.item()
    return x


# ---------------------------------------------------------------------------
# lattice specs

def _expand_spec(spec: str) -> list[str]:
    """Flatten a spec into its list of base factors (``pow`` unrolled)."""
    s = spec.strip()
    if s.startswith("pow:"):
        inner, _, k = s[4:].rpartition(":")
        return _expand_spec(inner) * int(k)
    if s.startswith("prod:"):
        from .lattice.core import _PROD_SPLIT
        return [f for part in _PROD_SPLIT.split(s[5:]) for f in _expand_spec(part)]
    if s.startswith("sub:"):
        body, _, d = s[4:].rpartition(":")
        return [f"sub:{parse_field(body).spec()}:{int(d)}"]
    return [s]


def _recipe_defaults(spec: str | None) -> dict:
    """Field, dimension, power and factor list implied by a lattice spec."""
    if not spec:
        return {}
    subs = _expand_spec(spec)
    if not all(s.startswith("sub:") for s in subs):
        return {}
    parts = [s[4:].rpartition(":") for s in subs]
    fields = [p[0] for p in parts]
    dims = {int(p[2]) for p in parts}
    out = {"k": len(subs)}
    if len(dims) == 1:
        out["dim"] = dims.pop()
    if len(set(fields)) == 1:
        out["field"] = fields[0]
    counts: dict[str, int] = {}
    for f in fields:
        counts[f] = counts.get(f, 0) + 1
    out["factors"] = [f"{f}x{m}" for f, m in counts.items()]
    return out


def build_recipe(name: str, args, lattice_spec: str | None = None):
    dflt = _recipe_defaults(lattice_spec)
    field = args.field or dflt.get("field")
    dim = args.dim or dflt.get("dim") or 3
    multiset = args.multiset.split(",") if getattr(args, "multiset", None) else None
    if name == "thm3":
        factors = args.factors or dflt.get("factors")
        if not factors:
            raise CliError("thm3 needs --factors, e.g. --factors 2x4 3x4")
        return recipes.thm3_generators(factors)
    if field is None:
        raise CliError(f"{name} needs --field (or a --lattice it can be read from)")
    F = parse_field(field)
    if name == "thm1":
        return recipes.thm1_generators(F, dim, multiset)
    if name == "zadori":
        return recipes.zadori_generators(F, dim)
    if name == "matrixU":
        if dim != 3:
            raise CliError("matrixU lives in dimension 3")
        return recipes.matrixU_generators(F)
    if name == "thm2":
        k = args.k or dflt.get("k")
        if not k:
            raise CliError("thm2 needs --k")
        return recipes.thm2_power_generators(F, dim, k, multiset)
    raise CliError(f"unknown recipe {name!r}")


def _check_same_lattice(given: str | None, recipe_spec: str):
    if given and _expand_spec(given) != _expand_spec(recipe_spec):
        raise CliError(f"--lattice {given} does not match the recipe's lattice {recipe_spec}")


def load_generators(path: str, lattice_spec: str | None = None):
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or "generators" not in data:
        raise CliError(f"{path}: expected an object with a 'generators' list")
    spec = lattice_spec or data.get("lattice")
    if not spec:
        raise CliError(f"{path}: no lattice spec in the file and none on the command line")
    if lattice_spec and data.get("lattice"):
        _check_same_lattice(lattice_spec, data["lattice"])
    L = parse_lattice(spec)
    return L, spec, [L.decode(g) for g in data["generators"]]


# ---------------------------------------------------------------------------
# commands; each returns (report, exit code, human text)

def cmd_qbinom(args):
    q = parse_q(args.q)
    v = qbinom(q, args.m, args.r)
    rep = {"q": _jsonable(Cardinal(q) if isinstance(q, int) else q), "m": args.m, "r": args.r,
           "value": _jsonable(v) if isinstance(v, Cardinal) else str(v)}
    text = str(v)
    if args.log10:
        lg = qbinom_log10(q, args.m, args.r)
        rep["log10"] = lg if lg != float("inf") else "inf"
        text = f"{lg:.6f}"
    return rep, EXIT_TRUE, text


def cmd_table1(args):
    rows = table1()
    rep = {"d": 80, "r": 40,
           "rows": [{"q": r.q, "mantissa": r.mantissa, "exponent": r.exponent,
                     "log10": round(r.log10, 6)} for r in rows]}
    return rep, EXIT_TRUE, "\n".join(str(r) for r in rows)


def cmd_fano_check(args):
    R = certificates.fano_check()
    rep = R.to_json()
    ok = R.size == 50 and R.position_1_0 == -1 and R.has_0_c
    rep["generates"] = False  # the four pairs span a proper sublattice
    text = "\n".join([", ".join(R.generators),
                      f"closure size {R.size}",
                      ", ".join(R.elements),
                      f"The position of (1,0) is {R.position_1_0}"])
    return rep, EXIT_TRUE if ok else EXIT_FALSE, text


def cmd_closure(args):
    L, spec, gens = load_generators(args.generators, args.lattice)
    R = closure(L, gens, cap=args.cap)
    rep = {"lattice": spec, "lattice_size": L.size, "closure_size": R.size,
           "generates": R.reached_full}
    if R.missing_example is not None:
        rep["missing_example"] = L.encode(R.missing_example)
    if args.witness:
        rep["witnesses"] = {L.label(x): str(t) for x, t in R.witnesses().items()}
    text = f"closure of {len(gens)} generators: {R.size} of {L.size} elements"
    return rep, _verdict_code(R.reached_full), text


def _verify_recipe(args):
    rec = build_recipe(args.recipe, args, args.lattice)
    spec = rec.lattice_spec()
    _check_same_lattice(args.lattice, spec)
    L = rec.lattice
    if L is None:
        # an infinite factor (or a factor too big to tabulate): pointwise certificate only
        if rec.certificate_terms is None:
            return {"lattice": spec, "recipe": rec.which, "generates": UNDETERMINED,
                    "mode": "fgtln", "reason": "lattice not enumerable and no certificate"}
        table, exact = rec.delta_check()
        rep = {"lattice": spec, "recipe": rec.which, "generates": True if exact else UNDETERMINED,
               "mode": "fgtln", "delta_table": [[("1" if a == b else "0") if ok else "x" for b, ok in enumerate(r)]
                               for a, r in enumerate(table)],
               "reason": "Kronecker certificate evaluated pointwise; lattice not enumerable"}
        if args.terms:
            rep["terms"] = terms_to_graph(rec.certificate_terms)
        return rep
    terms = rec.certificate_terms if isinstance(L, ProductLattice) else None
    res = verify_generates(L, rec.handles(), mode=args.mode, terms=terms, cap=args.cap)
    rep = {"lattice": spec, "recipe": rec.which}
    rep.update(res.to_json(L, with_terms=args.terms))
    return rep


def cmd_verify(args):
    if args.recipe:
        rep = _verify_recipe(args)
    else:
        L, spec, gens = load_generators(args.generators, args.lattice)
        res = verify_generates(L, gens, mode=args.mode, cap=args.cap)
        rep = {"lattice": spec}
        rep.update(res.to_json(L, with_terms=args.terms))
    v = rep["generates"]
    text = f"generates: {'undetermined' if v == UNDETERMINED else str(v).lower()} ({rep['mode']})"
    return rep, _verdict_code(v), text


def cmd_construct(args):
    rec = build_recipe(args.recipe, args, args.lattice)
    spec = rec.lattice_spec()
    _check_same_lattice(args.lattice, spec)
    out = Path(args.out)
    gen_file = {"lattice": spec, "generators": rec.encode_generators()}
    out.write_text(json.dumps(gen_file, indent=1) + "\n")
    terms_path = Path(args.terms_out) if args.terms_out else out.with_name("terms.json")
    sidecar = {"recipe": rec.which, "params": _jsonable(rec.params), "arity": len(rec),
               "constants": {k: (v.to_json() if hasattr(v, "to_json") else v)
                             for k, v in rec.constants.items()},
               "terms": terms_to_graph(rec.certificate_terms) if rec.certificate_terms else None}
    terms_path.write_text(json.dumps(sidecar) + "\n")
    rep = {"recipe": rec.which, "lattice": spec, "generators": len(rec),
           "out": str(out), "terms_out": str(terms_path), "params": _jsonable(rec.params)}
    return rep, EXIT_TRUE, f"wrote {len(rec)} generators for {spec} to {out} (terms: {terms_path})"


def cmd_min_genset(args):
    L = parse_lattice(args.lattice)
    res = min_genset(L, args.max, prune=not args.no_prune)
    rep = {"lattice": args.lattice, "lattice_size": L.size,
           "minimum": res.minimum if res.minimum is not None else f"> {args.max}",
           "example": [L.encode(x) for x in res.example],
           "candidates_checked": res.checked, "pruned": res.pruned, "max": args.max}
    return rep, EXIT_TRUE if res.minimum is not None else EXIT_FALSE, res.describe(args.max)


def cmd_antichain(args):
    L = parse_lattice(args.lattice)
    b = obs11_bound(L, args.n)
    rep = {"lattice": args.lattice, "n": args.n, "width": max_antichain(L), **b.to_json()}
    text = f"width(L) = {rep['width']}; |L|^{args.n} = {b.coarse}; width(L^{args.n}) = {rep['exact']}"
    return rep, EXIT_TRUE, text


_OPS = {"add": coring_add, "mul": coring_mul, "sub": coring_sub}


def cmd_coordring(args):
    F = parse_field(args.field)
    fr = canonical_frame(F, args.dim)
    i, j, k = args.i, args.j, args.k
    x = delta(fr, i, j, args.x)
    if args.op == "recip":
        if args.y is not None:
            raise CliError("recip takes only --x")
        z = coring_recip(fr, i, j, k, x)
    else:
        if args.y is None:
            raise CliError(f"{args.op} needs --y")
        z = _OPS[args.op](fr, i, j, k, x, delta(fr, i, j, args.y))
    val = delta_read(fr, i, j, z)
    rep = {"field": F.spec(), "dim": args.dim, "op": args.op, "i": i, "j": j, "k": k,
           "x": args.x, "y": args.y, "point": point_str(z), "value": str(val)}
    return rep, EXIT_TRUE, str(val)


def cmd_bounds(args):
    t = parse_q(args.t) if args.t.lower() in ("q", "aleph0", "inf") else int(args.t)
    b = bounds(t, args.d)
    rep = b.to_json()
    text = (f"m = {rep['m']}; at least {rep['lower']} generators; "
            f"at most {rep['upper_thm1']} (single lattice), {rep['upper_thm2']} (powers)")
    return rep, EXIT_TRUE, text


# ---------------------------------------------------------------------------

def _recipe_args(p):
    p.add_argument("--field", help="field spec: p, p^n[:c0,..,cn] or Q")
    p.add_argument("--dim", type=int, help="ambient dimension (default 3)")
    p.add_argument("--k", type=int, help="number of factors (thm2)")
    p.add_argument("--factors", nargs="+", help="thm3 factors such as 2x4 3x4 Qx1")
    p.add_argument("--multiset", help="comma-separated field generators for the pattern blocks")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")

    ap = argparse.ArgumentParser(prog="lattgen", description="Generating sets of subspace lattices.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("qbinom", parents=[common], help="Gaussian binomial coefficient")
    p.add_argument("--q", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--log10", action="store_true")
    p.set_defaults(func=cmd_qbinom)

    p = sub.add_parser("table1", parents=[common], help="log10 of [80 choose 40]_q")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("fano-check", parents=[common], help="close the four Fano pairs")
    p.set_defaults(func=cmd_fano_check)

    p = sub.add_parser("closure", parents=[common], help="sublattice generated by a file")
    p.add_argument("--lattice")
    p.add_argument("--generators", required=True)
    p.add_argument("--witness", action="store_true")
    p.add_argument("--cap", type=int, default=200_000)
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("verify", parents=[common], help="does a set generate the lattice?")
    p.add_argument("--lattice")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--generators")
    src.add_argument("--recipe", choices=RECIPES)
    _recipe_args(p)
    p.add_argument("--mode", choices=("auto", "closure", "fgtln"), default="auto")
    p.add_argument("--cap", type=int, default=200_000)
    p.add_argument("--terms", action="store_true", help="include separating terms in the report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", parents=[common], help="write a recipe's generator file")
    p.add_argument("recipe", choices=RECIPES)
    p.add_argument("--lattice")
    _recipe_args(p)
    p.add_argument("--out", required=True)
    p.add_argument("--terms-out", help="sidecar path (default: terms.json next to --out)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("min-genset", parents=[common], help="exhaustive minimum generating set")
    p.add_argument("--lattice", required=True)
    p.add_argument("--max", type=int, default=6)
    p.add_argument("--no-prune", action="store_true")
    p.set_defaults(func=cmd_min_genset)

    p = sub.add_parser("antichain", parents=[common], help="antichain bound for n generators")
    p.add_argument("--lattice", required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_antichain)

    p = sub.add_parser("coordring", parents=[common], help="coordinate-ring arithmetic")
    p.add_argument("--field", required=True)
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--op", choices=("add", "mul", "sub", "recip"), required=True)
    p.add_argument("--i", type=int, default=3)
    p.add_argument("--j", type=int, default=1)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--x", required=True)
    p.add_argument("--y")
    p.set_defaults(func=cmd_coordring)

    p = sub.add_parser("bounds", parents=[common], help="generator-count bounds for Sub(F^d)")
    p.add_argument("--t", required=True, help="size of a minimal generating set of F, or 'aleph0'")
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_bounds)
    return ap


_EXPECTED = (CliError, ValueError, KeyError, TypeError, OSError, ProjectiveError, TooLarge,
             NotAnElement, CapExceeded, SearchCapExceeded, recipes.RecipeError,
             recipes.CertificateFailed, json.JSONDecodeError)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        rep, code, text = args.func(args)
    except _EXPECTED as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        if args.json:
            print(json.dumps({"command": args.command, "error": type(exc).__name__,
                              "message": str(msg)}))
        else:
            print(f"lattgen {args.command}: {msg}", file=sys.stderr)
        return EXIT_ERROR
    if args.json:
        out = {"command": args.command, **_jsonable(rep),
               "timings": {"seconds": round(time.perf_counter() - t0, 4)}}
        print(json.dumps(out))
    else:
        print(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
