"""Lattice terms: expression DAGs over variables and named constants.

Terms are immutable and compared by identity, so subterms can be shared
freely (closure witnesses rely on this; flattened to trees they grow
exponentially).  ``&`` builds a meet and ``|`` a join.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence


class UnboundConstant(KeyError):
    pass


class ArityMismatch(ValueError):
    pass


class LatticeTerm:
    __slots__ = ()

    def __and__(self, other: "LatticeTerm") -> "LatticeTerm":
        return Meet((self, other))

    def __or__(self, other: "LatticeTerm") -> "LatticeTerm":
        return Join((self, other))

    def __str__(self) -> str:
        return term_to_str(self)


@dataclass(frozen=True, eq=False)
class Var(LatticeTerm):
    index: int


@dataclass(frozen=True, eq=False)
class Const(LatticeTerm):
    name: str


@dataclass(frozen=True, eq=False)
class Meet(LatticeTerm):
    args: tuple[LatticeTerm, ...]


@dataclass(frozen=True, eq=False)
class Join(LatticeTerm):
    args: tuple[LatticeTerm, ...]


def var(i: int) -> Var:
    return Var(i)


def const(name: str) -> Const:
    return Const(name)


def meet_all(terms: Iterable[LatticeTerm]) -> LatticeTerm:
    ts = tuple(terms)
    if not ts:
        raise ValueError("empty meet")
    return ts[0] if len(ts) == 1 else Meet(ts)


def join_all(terms: Iterable[LatticeTerm]) -> LatticeTerm:
    ts = tuple(terms)
    if not ts:
        raise ValueError("empty join")
    return ts[0] if len(ts) == 1 else Join(ts)


def _postorder(term: LatticeTerm) -> list[LatticeTerm]:
    """Distinct nodes of the DAG, children before parents (iterative)."""
    seen: set[int] = set()
    order: list[LatticeTerm] = []
    stack: list[tuple[LatticeTerm, bool]] = [(term, False)]
    while stack:
        node, expanded = stack.pop()
        if id(node) in seen:
            continue
        if expanded or isinstance(node, (Var, Const)):
            seen.add(id(node))
            order.append(node)
            continue
        stack.append((node, True))
        for child in reversed(node.args):
            if id(child) not in seen:
                stack.append((child, False))
    return order


def variables(term: LatticeTerm) -> set[int]:
    return {n.index for n in _postorder(term) if isinstance(n, Var)}


def constants(term: LatticeTerm) -> set[str]:
    return {n.name for n in _postorder(term) if isinstance(n, Const)}


def arity(term: LatticeTerm) -> int:
    vs = variables(term)
    return max(vs) + 1 if vs else 0


def dag_size(term: LatticeTerm) -> int:
    return len(_postorder(term))


def tree_size(term: LatticeTerm) -> int:
    sizes: dict[int, int] = {}
    for node in _postorder(term):
        if isinstance(node, (Var, Const)):
            sizes[id(node)] = 1
        else:
            sizes[id(node)] = 1 + sum(sizes[id(c)] for c in node.args)
    return sizes[id(term)]


def term_eval(term: LatticeTerm, assignment: Sequence, lattice,
              constants: Mapping[str, object] | None = None):
    """Evaluate bottom-up with ``lattice.meet`` / ``lattice.join``.

    ``lattice`` is anything with binary ``meet`` and ``join`` on the values
    in ``assignment``; shared subterms are evaluated once.
    """
    return term_eval_many([term], assignment, lattice, constants)[0]


def term_eval_many(terms: Sequence[LatticeTerm], assignment: Sequence, lattice,
                   constants: Mapping[str, object] | None = None,
                   memo: dict | None = None) -> list:
    memo = {} if memo is None else memo
    meet, join = lattice.meet, lattice.join
    for term in terms:
        if id(term) in memo:
            continue
        for node in _postorder(term):
            key = id(node)
            if key in memo:
                continue
            if isinstance(node, Var):
                if node.index >= len(assignment) or node.index < 0:
                    raise ArityMismatch(
                        f"variable x{node.index + 1} but only {len(assignment)} values given")
                memo[key] = assignment[node.index]
            elif isinstance(node, Const):
                if constants is None or node.name not in constants:
                    raise UnboundConstant(node.name)
                memo[key] = constants[node.name]
            else:
                op = meet if isinstance(node, Meet) else join
                vals = [memo[id(c)] for c in node.args]
                acc = vals[0]
                for v in vals[1:]:
                    acc = op(acc, v)
                memo[key] = acc
    return [memo[id(t)] for t in terms]


def substitute(term: LatticeTerm, mapping: Mapping[int, LatticeTerm] | Callable[[int], LatticeTerm]
               ) -> LatticeTerm:
    """Replace variables; sharing is preserved."""
    get = mapping if callable(mapping) else (lambda i: mapping.get(i, None))
    out: dict[int, LatticeTerm] = {}
    for node in _postorder(term):
        if isinstance(node, Var):
            rep = get(node.index)
            out[id(node)] = node if rep is None else rep
        elif isinstance(node, Const):
            out[id(node)] = node
        else:
            kids = tuple(out[id(c)] for c in node.args)
            if all(k is c for k, c in zip(kids, node.args)):
                out[id(node)] = node
            else:
                out[id(node)] = type(node)(kids)
    return out[id(term)]


def permute_variables(term: LatticeTerm, images: Sequence[int]) -> LatticeTerm:
    """``t(x_{images[0]}, x_{images[1]}, ...)``: variable i becomes ``images[i]``."""
    new = {i: Var(j) for i, j in enumerate(images)}
    return substitute(term, new)


def shift_variables(term: LatticeTerm, offset: int) -> LatticeTerm:
    return substitute(term, lambda i: Var(i + offset))


# --- serialization ----------------------------------------------------------

def term_to_graph(term: LatticeTerm) -> dict:
    """Node-list encoding; children always precede their parents."""
    ids: dict[int, int] = {}
    nodes = []
    for node in _postorder(term):
        if isinstance(node, Var):
            enc = ["var", node.index]
        elif isinstance(node, Const):
            enc = ["const", node.name]
        else:
            enc = ["meet" if isinstance(node, Meet) else "join", [ids[id(c)] for c in node.args]]
        ids[id(node)] = len(nodes)
        nodes.append(enc)
    return {"nodes": nodes, "root": ids[id(term)]}


def terms_to_graph(terms: Sequence[LatticeTerm]) -> dict:
    """Several terms sharing one node list."""
    ids: dict[int, int] = {}
    nodes = []
    for t in terms:
        for node in _postorder(t):
            if id(node) in ids:
                continue
            if isinstance(node, Var):
                enc = ["var", node.index]
            elif isinstance(node, Const):
                enc = ["const", node.name]
            else:
                enc = ["meet" if isinstance(node, Meet) else "join", [ids[id(c)] for c in node.args]]
            ids[id(node)] = len(nodes)
            nodes.append(enc)
    return {"nodes": nodes, "roots": [ids[id(t)] for t in terms]}


def term_from_graph(graph: Mapping) -> LatticeTerm | list[LatticeTerm]:
    built: list[LatticeTerm] = []
    for enc in graph["nodes"]:
        kind = enc[0]
        if kind == "var":
            built.append(Var(int(enc[1])))
        elif kind == "const":
            built.append(Const(str(enc[1])))
        elif kind in ("meet", "join"):
            kids = tuple(built[i] for i in enc[1])
            built.append(Meet(kids) if kind == "meet" else Join(kids))
        else:
            raise ValueError(f"unknown term node {kind!r}")
    if "roots" in graph:
        return [built[i] for i in graph["roots"]]
    return built[graph["root"]]


def term_to_str(term: LatticeTerm, names: Sequence[str] | None = None, limit: int = 4000) -> str:
    """Infix rendering; gives up with an ellipsis past ``limit`` characters."""
    out: dict[int, str] = {}
    for node in _postorder(term):
        if isinstance(node, Var):
            s = names[node.index] if names else f"x{node.index + 1}"
        elif isinstance(node, Const):
            s = node.name
        else:
            sym = " ^ " if isinstance(node, Meet) else " v "
            s = "(" + sym.join(out[id(c)] for c in node.args) + ")"
            if len(s) > limit:
                s = "(...)"
        out[id(node)] = s
    return out[id(term)]


def term_to_tree(term: LatticeTerm, max_nodes: int = 100_000):
    """Nested-list tree form, refusing when the tree would exceed ``max_nodes``."""
    if tree_size(term) > max_nodes:
        raise ValueError("term tree too large; use term_to_graph")
    out: dict[int, object] = {}
    for node in _postorder(term):
        if isinstance(node, Var):
            out[id(node)] = ["var", node.index]
        elif isinstance(node, Const):
            out[id(node)] = ["const", node.name]
        else:
            out[id(node)] = ["meet" if isinstance(node, Meet) else "join",
                             [out[id(c)] for c in node.args]]
    return out[id(term)]
