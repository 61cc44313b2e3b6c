"""Exhaustive reference solvers used as ground truth in tests and benches."""
from __future__ import annotations

from math import prod
from typing import Optional

from .instance import FULL, POPCOUNT, Assignment, Instance, colors_of

DEFAULT_CAP = 2**24


class OracleCapExceeded(Exception):
    pass


def _first_coloring(inst: Instance, lists) -> Optional[Assignment]:
    # Depth-first over the product of lists in (vertex id, color) lexicographic
    # order; a prefix is abandoned as soon as it clashes, so the first proper
    # assignment found is the same one a full scan would return.
    order = inst.vertices
    pos = {v: i for i, v in enumerate(order)}
    earlier = [[pos[u] for u in inst.adj[v] if pos[u] < i] for i, v in enumerate(order)]
    options = [colors_of(lists[v]) for v in order]
    chosen = [0] * len(order)
    k = [0] * (len(order) + 1)
    i = 0
    while i >= 0:
        if i == len(order):
            return dict(zip(order, chosen))
        if k[i] == len(options[i]):
            k[i] = 0
            i -= 1
            continue
        c = options[i][k[i]]
        k[i] += 1
        if all(chosen[j] != c for j in earlier[i]):
            chosen[i] = c
            i += 1
    return None


def brute_force(inst: Instance, cap: int = DEFAULT_CAP) -> Optional[Assignment]:
    """First proper list coloring in lexicographic order, or None."""
    size = prod(POPCOUNT[m] for m in inst.lists.values())
    if size > cap:
        raise OracleCapExceeded(f"search space {size} exceeds cap {cap}")
    if size == 0:
        return None
    return _first_coloring(inst, inst.lists)


def brute_force_3color(graph: Instance, cap: int = DEFAULT_CAP) -> Optional[Assignment]:
    """Exact 3-coloring of the graph (lists ignored); the first vertex is fixed to color 1."""
    n = len(graph)
    if n and 3 ** (n - 1) > cap:
        raise OracleCapExceeded(f"3^{n - 1} exceeds cap {cap}")
    lists = {v: FULL for v in graph.adj}
    if n:
        lists[graph.vertices[0]] = 0b001
    return _first_coloring(graph, lists)
