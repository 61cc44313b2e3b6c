"""List-coloring instances over the palette {1, 2, 3}.

Lists are stored as 3-bit masks: bit ``c - 1`` is set when color ``c`` is
allowed.  The helpers ``to_mask`` / ``colors_of`` convert between masks and
plain color tuples.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Hashable, Iterable, Mapping, Optional, Tuple

COLORS = (1, 2, 3)
FULL = 0b111
POPCOUNT = (0, 1, 1, 2, 1, 2, 2, 3)

Vertex = Hashable
Assignment = Dict[Vertex, int]


class InstanceError(ValueError):
    pass


def bit(c: int) -> int:
    if c not in COLORS:
        raise InstanceError(f"color {c!r} not in {{1,2,3}}")
    return 1 << (c - 1)


def to_mask(colors: Iterable[int]) -> int:
    m = 0
    for c in colors:
        m |= bit(c)
    return m


def colors_of(mask: int) -> Tuple[int, ...]:
    return tuple(c for c in COLORS if mask >> (c - 1) & 1)


def lowest_color(mask: int) -> int:
    return (mask & -mask).bit_length()


@dataclass(frozen=True, eq=False)
class Instance:
    """Undirected graph plus a color list per vertex.

    Treated as a value: derived instances are new objects that keep the
    original vertex ids.  ``adj`` and ``lists`` must not be mutated after
    construction.
    """

    adj: Mapping[Vertex, FrozenSet[Vertex]]
    lists: Mapping[Vertex, int]

    @property
    def vertices(self) -> list:
        return sorted(self.adj)

    def __len__(self) -> int:
        return len(self.adj)

    def __contains__(self, v) -> bool:
        return v in self.adj

    def __eq__(self, other) -> bool:
        if not isinstance(other, Instance):
            return NotImplemented
        return dict(self.adj) == dict(other.adj) and dict(self.lists) == dict(other.lists)

    def __repr__(self) -> str:
        return f"Instance(n={len(self)}, m={self.num_edges()}, mu={measure(self)})"

    def edges(self) -> list:
        return sorted((u, v) for u in self.adj for v in self.adj[u] if u < v)

    def num_edges(self) -> int:
        return sum(len(ns) for ns in self.adj.values()) // 2

    def degree(self, v) -> int:
        return len(self.adj[v])

    def list_of(self, v) -> Tuple[int, ...]:
        return colors_of(self.lists[v])

    def size(self, v) -> int:
        return POPCOUNT[self.lists[v]]

    def count_by_size(self) -> Tuple[int, int, int, int]:
        counts = [0, 0, 0, 0]
        for m in self.lists.values():
            counts[POPCOUNT[m]] += 1
        return tuple(counts)

    @property
    def trivially_unsat(self) -> bool:
        """True when some list is empty; the instance then has no coloring."""
        return any(m == 0 for m in self.lists.values())


def build_instance(vertices: Iterable, edges: Iterable[Tuple], lists: Optional[Mapping] = None) -> Instance:
    """Validate raw input and build an :class:`Instance`.

    Vertices without an entry in ``lists`` get {1,2,3}.  An empty list is
    accepted; check :attr:`Instance.trivially_unsat` for it.
    """
    adj: Dict[Vertex, set] = {v: set() for v in vertices}
    for u, v in edges:
        if u == v:
            raise InstanceError(f"self-loop at vertex {u!r}")
        for x in (u, v):
            if x not in adj:
                raise InstanceError(f"edge ({u!r}, {v!r}) references unknown vertex {x!r}")
        adj[u].add(v)
        adj[v].add(u)
    lists = lists or {}
    for v in lists:
        if v not in adj:
            raise InstanceError(f"list given for unknown vertex {v!r}")
    masks = {v: to_mask(lists[v]) if v in lists else FULL for v in adj}
    return Instance({v: frozenset(ns) for v, ns in adj.items()}, masks)


def from_parts(adj: Mapping[Vertex, Iterable], lists: Mapping[Vertex, int]) -> Instance:
    """Build from already-consistent adjacency and masks, skipping validation."""
    return Instance({v: frozenset(ns) for v, ns in adj.items()}, dict(lists))


def measure(inst: Instance) -> Fraction:
    """n3 + n2/2 as an exact rational."""
    return Fraction(half_measure(inst), 2)


def half_measure(inst: Instance) -> int:
    """Twice the measure, as an integer."""
    h = 0
    for m in inst.lists.values():
        s = POPCOUNT[m]
        if s == 3:
            h += 2
        elif s == 2:
            h += 1
    return h


def list3_neighbor_count(inst: Instance, v) -> int:
    if v not in inst.adj:
        raise InstanceError(f"unknown vertex {v!r}")
    return sum(1 for u in inst.adj[v] if inst.lists[u] == FULL)


def list2_neighbor_count(inst: Instance, v) -> int:
    if v not in inst.adj:
        raise InstanceError(f"unknown vertex {v!r}")
    return sum(1 for u in inst.adj[v] if POPCOUNT[inst.lists[u]] == 2)


def check_hypothesis(inst: Instance) -> set:
    """Vertices with degree <= 5, a full list, and fewer than three 2-list neighbors.

    An empty result means every low-degree 3-list vertex is supported by at
    least three 2-list neighbors, which is what the running-time bound needs.
    """
    return {
        v
        for v, m in inst.lists.items()
        if m == FULL and len(inst.adj[v]) <= 5 and list2_neighbor_count(inst, v) < 3
    }


def verify_assignment(inst: Instance, a: Mapping) -> bool:
    if set(a) != set(inst.adj):
        raise InstanceError("assignment domain does not match the instance's vertex set")
    for v, c in a.items():
        if c not in COLORS or not inst.lists[v] & bit(c):
            return False
    return all(a[u] != a[v] for u in inst.adj for v in inst.adj[u])


def disjoint_union(a: Instance, b: Instance, tag=("a", "b")) -> Instance:
    """Disjoint union; vertex ids become ``(tag, id)`` pairs."""
    adj, lists = {}, {}
    for t, inst in zip(tag, (a, b)):
        for v, ns in inst.adj.items():
            adj[(t, v)] = frozenset((t, u) for u in ns)
            lists[(t, v)] = inst.lists[v]
    return Instance(adj, lists)


def min_degree(inst: Instance) -> int:
    return min((len(ns) for ns in inst.adj.values()), default=0)


def max_degree(inst: Instance) -> int:
    return max((len(ns) for ns in inst.adj.values()), default=0)
