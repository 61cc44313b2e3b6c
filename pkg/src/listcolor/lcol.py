"""The ``lcol`` text format and assignment files.

::

    c optional comment
    p lcol <n> <m>          (or "p edge <n> <m>" for plain DIMACS graphs)
    e <u> <v>               exactly m lines, vertices 1..n
    l <v> <c1> [<c2> [<c3>]]  colors from {1,2,3}, strictly increasing

Vertices without an ``l`` record get {1,2,3}.  Assignment files hold one
``<v> <c>`` line per vertex in ascending ``v``.
"""
from __future__ import annotations

from typing import Dict, Iterable, Mapping

from .instance import FULL, Instance, build_instance, colors_of


class LcolError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def _ints(fields, lineno):
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise LcolError(lineno, f"expected integers, got {' '.join(fields)!r}") from None


def parse_lcol(text: str) -> Instance:
    n = m = None
    edges = []
    lists: Dict[int, tuple] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        fields = line.split()
        if not fields or fields[0] == "c":
            continue
        tag = fields[0]
        if tag == "p":
            if n is not None:
                raise LcolError(lineno, "second header")
            if len(fields) != 4 or fields[1] not in ("lcol", "edge"):
                raise LcolError(lineno, "malformed header, expected 'p lcol <n> <m>' or 'p edge <n> <m>'")
            n, m = _ints(fields[2:], lineno)
            if n < 0 or m < 0:
                raise LcolError(lineno, "negative size in header")
            continue
        if n is None:
            raise LcolError(lineno, "record before header")
        if tag == "e":
            if len(fields) != 3:
                raise LcolError(lineno, "edge record needs two endpoints")
            u, v = _ints(fields[1:], lineno)
            for x in (u, v):
                if not 1 <= x <= n:
                    raise LcolError(lineno, f"vertex {x} out of range 1..{n}")
            if u == v:
                raise LcolError(lineno, f"self-loop at vertex {u}")
            edges.append((u, v))
        elif tag == "l":
            if not 3 <= len(fields) <= 5:
                raise LcolError(lineno, "list record needs a vertex and 1 to 3 colors")
            v, *cs = _ints(fields[1:], lineno)
            if not 1 <= v <= n:
                raise LcolError(lineno, f"vertex {v} out of range 1..{n}")
            if v in lists:
                raise LcolError(lineno, f"duplicate list record for vertex {v}")
            if any(c not in (1, 2, 3) for c in cs):
                raise LcolError(lineno, "colors must be in {1,2,3}")
            if any(a >= b for a, b in zip(cs, cs[1:])):
                raise LcolError(lineno, "colors must be strictly increasing")
            lists[v] = tuple(cs)
        else:
            raise LcolError(lineno, f"unknown record type {tag!r}")
    if n is None:
        raise LcolError(0, "missing header")
    if len(edges) != m:
        raise LcolError(0, f"header announces {m} edges, found {len(edges)}")
    return build_instance(range(1, n + 1), edges, lists)


def write_lcol(inst: Instance, comments: Iterable[str] = ()) -> str:
    """Serialize; vertex ids are renumbered 1..n in sorted order."""
    if inst.trivially_unsat:
        raise ValueError("an empty list cannot be written in lcol format")
    order = inst.vertices
    num = {v: i for i, v in enumerate(order, 1)}
    edges = sorted(tuple(sorted((num[u], num[v]))) for u, v in inst.edges())
    out = [f"c {c}" for c in comments]
    out.append(f"p lcol {len(order)} {len(edges)}")
    out.extend(f"e {u} {v}" for u, v in edges)
    for v in order:
        if inst.lists[v] != FULL:
            out.append("l " + " ".join(map(str, [num[v], *colors_of(inst.lists[v])])))
    return "\n".join(out) + "\n"


def write_assignment(a: Mapping[int, int]) -> str:
    return "".join(f"{v} {a[v]}\n" for v in sorted(a))


def parse_assignment(text: str) -> Dict[int, int]:
    a = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        fields = line.split()
        if not fields:
            continue
        if len(fields) != 2:
            raise LcolError(lineno, "expected '<v> <c>'")
        v, c = _ints(fields, lineno)
        if v in a:
            raise LcolError(lineno, f"vertex {v} assigned twice")
        a[v] = c
    return a
