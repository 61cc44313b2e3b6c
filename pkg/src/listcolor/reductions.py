"""Safe reduction rules, run to a fixpoint with a replayable trace.

Rules, in priority order:

* R2: an empty list means the instance has no coloring.
* R1: a vertex with a single color takes it; the color leaves its neighbors' lists.
* R3: a vertex with more colors than neighbors is removed and colored last.
* R4: a vertex owning a color no neighbor can use is removed and takes that color.

Within a rule the lowest vertex id goes first.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Optional, Tuple, Union

from .instance import (
    POPCOUNT,
    Assignment,
    Instance,
    InstanceError,
    Vertex,
    bit,
    colors_of,
    lowest_color,
)

REDUCED = "reduced"
CONTRADICTION = "contradiction"


@dataclass(frozen=True)
class Forced:
    v: Vertex
    color: int


@dataclass(frozen=True)
class Deferred:
    v: Vertex
    mask: int
    nbrs: FrozenSet[Vertex]


@dataclass(frozen=True)
class FreeColor:
    v: Vertex
    color: int


Step = Union[Forced, Deferred, FreeColor]
Trace = Tuple[Step, ...]


class ReplayError(RuntimeError):
    """A deferred vertex found no legal color during replay (internal bug)."""


@dataclass(frozen=True)
class ReduceOutcome:
    status: str
    result: Optional[Instance]
    trace: Trace

    @property
    def contradiction(self) -> bool:
        return self.status == CONTRADICTION


def assign_color(inst: Instance, v, c: int) -> Instance:
    """Delete ``v`` and remove ``c`` from each neighbor's list.

    Neighbor lists may become empty; the caller checks.
    """
    if v not in inst.adj:
        raise InstanceError(f"unknown vertex {v!r}")
    b = bit(c)
    if not inst.lists[v] & b:
        raise InstanceError(f"color {c} not in list of {v!r}")
    nbrs = inst.adj[v]
    adj = {u: (ns - {v} if u in nbrs else ns) for u, ns in inst.adj.items() if u != v}
    lists = {u: (m & ~b if u in nbrs else m) for u, m in inst.lists.items() if u != v}
    return Instance(adj, lists)


def restrict(inst: Instance, v, mask: int) -> Instance:
    """Intersect the list of ``v`` with ``mask``."""
    lists = dict(inst.lists)
    lists[v] &= mask
    return Instance(inst.adj, lists)


def reduce_fixpoint(inst: Instance, deferrals: bool = True) -> ReduceOutcome:
    """Apply R2 > R1 > R3 > R4 until none fires.

    With ``deferrals=False`` only R2 and R1 run (singleton propagation).
    """
    adj: Dict[Vertex, set] = {v: set(ns) for v, ns in inst.adj.items()}
    lists = dict(inst.lists)
    trace = []

    def delete(v):
        for u in adj[v]:
            adj[u].discard(v)
        del adj[v]
        del lists[v]

    if any(m == 0 for m in lists.values()):
        return ReduceOutcome(CONTRADICTION, None, ())

    while adj:
        order = sorted(adj)
        v = next((v for v in order if POPCOUNT[lists[v]] == 1), None)
        if v is not None:
            m = lists[v]
            trace.append(Forced(v, lowest_color(m)))
            emptied = False
            for u in adj[v]:
                lists[u] &= ~m
                emptied = emptied or lists[u] == 0
            delete(v)
            if emptied:
                return ReduceOutcome(CONTRADICTION, None, tuple(trace))
            continue
        if not deferrals:
            break
        v = next((v for v in order if POPCOUNT[lists[v]] > len(adj[v])), None)
        if v is not None:
            trace.append(Deferred(v, lists[v], frozenset(adj[v])))
            delete(v)
            continue
        for v in order:
            seen = 0
            for u in adj[v]:
                seen |= lists[u]
            free = lists[v] & ~seen
            if free:
                trace.append(FreeColor(v, lowest_color(free)))
                delete(v)
                break
        else:
            break

    return ReduceOutcome(REDUCED, Instance({v: frozenset(ns) for v, ns in adj.items()}, lists), tuple(trace))


def replay_trace(trace: Trace, partial: Assignment) -> Assignment:
    """Extend ``partial`` to every vertex named in ``trace``, last step first."""
    a = dict(partial)
    for step in reversed(trace):
        if isinstance(step, Deferred):
            used = {a[u] for u in step.nbrs if u in a}
            c = next((c for c in colors_of(step.mask) if c not in used), None)
            if c is None:
                raise ReplayError(f"no legal color for deferred vertex {step.v!r}")
            a[step.v] = c
        else:
            a[step.v] = step.color
    return a
