"""Polynomial solver for instances whose lists all have one or two colors.

Each vertex becomes a boolean variable (literal ``2i`` = its lower color,
``2i + 1`` = its higher color).  A one-color vertex gets the unit clause
forcing its only color.  Every edge and shared color ``c`` yields the clause
``not (u = c and v = c)``.  The implication graph is solved with Tarjan's
strongly connected components.
"""
from __future__ import annotations

from typing import List, Optional, Tuple

from .instance import POPCOUNT, Assignment, Instance, InstanceError, colors_of


class ImplicationGraph:
    def __init__(self, inst: Instance):
        for v, m in inst.lists.items():
            if POPCOUNT[m] not in (1, 2):
                raise InstanceError(f"vertex {v!r} has a list of size {POPCOUNT[m]}; need 1 or 2")
        self.vertices = inst.vertices
        self.index = {v: i for i, v in enumerate(self.vertices)}
        self.choices = [colors_of(inst.lists[v]) for v in self.vertices]
        self.arcs: List[List[int]] = [[] for _ in range(2 * len(self.vertices))]
        self.work = 2 * len(self.vertices)

        for i, cs in enumerate(self.choices):
            if len(cs) == 1:
                self._add(2 * i + 1, 2 * i)
        for u in self.vertices:
            iu = self.index[u]
            for v in inst.adj[u]:
                iv = self.index[v]
                if iv <= iu:
                    continue
                for c in self.choices[iu]:
                    lv = self.literal(iv, c)
                    if lv is not None:
                        lu = self.literal(iu, c)
                        self._add(lu, lv ^ 1)
                        self._add(lv, lu ^ 1)

    def literal(self, i: int, c: int) -> Optional[int]:
        cs = self.choices[i]
        if c not in cs:
            return None
        return 2 * i + cs.index(c)

    def _add(self, a: int, b: int):
        self.arcs[a].append(b)
        self.work += 1

    def components(self) -> List[int]:
        """Tarjan's algorithm, iterative; ids come out in reverse topological order."""
        n = len(self.arcs)
        index = [-1] * n
        low = [0] * n
        comp = [-1] * n
        on_stack = [False] * n
        stack: List[int] = []
        counter = 0
        ncomp = 0
        for root in range(n):
            if index[root] != -1:
                continue
            work = [(root, 0)]
            index[root] = low[root] = counter
            counter += 1
            stack.append(root)
            on_stack[root] = True
            self.work += 1
            while work:
                node, k = work[-1]
                succ = self.arcs[node]
                if k < len(succ):
                    work[-1] = (node, k + 1)
                    w = succ[k]
                    self.work += 1
                    if index[w] == -1:
                        index[w] = low[w] = counter
                        counter += 1
                        stack.append(w)
                        on_stack[w] = True
                        work.append((w, 0))
                        self.work += 1
                    elif on_stack[w]:
                        low[node] = min(low[node], index[w])
                    continue
                work.pop()
                if work:
                    parent = work[-1][0]
                    low[parent] = min(low[parent], low[node])
                if low[node] == index[node]:
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp[w] = ncomp
                        if w == node:
                            break
                    ncomp += 1
        return comp


def _solve(inst: Instance) -> Tuple[Optional[Assignment], int]:
    g = ImplicationGraph(inst)
    comp = g.components()
    a = {}
    for i, v in enumerate(g.vertices):
        t, f = comp[2 * i], comp[2 * i + 1]
        if t == f:
            return None, g.work
        cs = g.choices[i]
        a[v] = cs[0] if t < f else cs[-1]
    return a, g.work


def solve_two_list(inst: Instance) -> Optional[Assignment]:
    """A proper list coloring, or None if there is none."""
    return _solve(inst)[0]


def two_list_work_bound(inst: Instance) -> int:
    """Elementary operations (literals, arcs, visits) spent by :func:`solve_two_list`."""
    return _solve(inst)[1]
