"""Branching solver for list coloring with lists drawn from {1, 2, 3}.

Every node is first reduced to a fixpoint.  A reduced node is then split on
a pivot vertex by the number of 3-list neighbors it has:

* six or more: branch the pivot's three colors (case 1);
* exactly five, with a 2-list neighbor: same (case 2);
* exactly four, with two 2-list neighbors: same (case 3);
* at most three everywhere, and every 3-list vertex has three 2-list
  neighbors: partition and enumerate down to all-lists-at-most-two
  residuals, each solved in polynomial time (case 4);
* anything else violates the degree/list hypothesis the running-time bound
  relies on.  We still branch 3-way ("fallback"), so the answer stays exact.

Each branching node checks its measure recurrence ``sum c**(mu_child - mu) <= 1``
with ``c = 1.3196``.  Checks only feed the statistics.
"""
from __future__ import annotations

import enum
import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from .instance import (
    FULL,
    POPCOUNT,
    Assignment,
    Instance,
    InstanceError,
    bit,
    colors_of,
    list2_neighbor_count,
    list3_neighbor_count,
    max_degree,
    measure,
    min_degree,
)
from .reductions import ReduceOutcome, assign_color, reduce_fixpoint, replay_trace, restrict
from .twolist import solve_two_list

log = logging.getLogger(__name__)

C = 1.3196
EPS = 1e-9
DEFAULT_NODE_CAP = 2**26

CASE1, CASE2, CASE3, CASE4 = "case1", "case2", "case3", "case4"
FALLBACK = "fallback"
ALL_TWO_LISTS = "all_two_lists"
CASE_KEYS = (CASE1, CASE2, CASE3, CASE4, FALLBACK)

NOT_ONE = 0b110  # {2, 3}


class Decision(enum.Enum):
    CHOOSABLE = "CHOOSABLE"
    NOT_CHOOSABLE = "NOT-CHOOSABLE"
    ABORTED = "ABORTED"


class PartitionError(AssertionError):
    def __init__(self, msg: str, vertex=None):
        super().__init__(msg)
        self.vertex = vertex


@dataclass(frozen=True)
class Partition:
    X1: Tuple
    Y1: Tuple
    X2: Tuple
    Y2: Tuple

    @property
    def x1(self) -> int:
        return len(self.X1)

    @property
    def y1(self) -> int:
        return len(self.Y1)

    @property
    def x2(self) -> int:
        return len(self.X2)

    @property
    def y2(self) -> int:
        return len(self.Y2)


@dataclass(frozen=True)
class CaseKind:
    kind: str
    pivot: object = None
    partition: Optional[Partition] = None


@dataclass
class SolverConfig:
    node_cap: int = DEFAULT_NODE_CAP
    bound_check: bool = True
    case4_pruning: bool = True
    seed: Optional[int] = None
    # called as observer(instance, case_kind) at every classified node
    observer: Optional[Callable[[Instance, CaseKind], None]] = None


@dataclass
class BranchStats:
    nodes: int = 0
    leaves: int = 0
    mu_root: Fraction = Fraction(0)
    case_counts: Counter = field(default_factory=Counter)
    recurrence_violations: int = 0
    hypothesis_fallbacks: int = 0
    max_depth: int = 0
    aborted: bool = False
    warnings: List[str] = field(default_factory=list)

    @property
    def bound(self) -> float:
        return C ** float(self.mu_root)

    @property
    def violation_free(self) -> bool:
        return self.recurrence_violations == 0 and self.hypothesis_fallbacks == 0

    def as_dict(self) -> dict:
        return {
            "nodes": self.nodes,
            "leaves": self.leaves,
            "mu_root": float(self.mu_root),
            "bound_c_pow_mu": self.bound,
            "case_counts": {k: self.case_counts.get(k, 0) for k in CASE_KEYS},
            "recurrence_violations": self.recurrence_violations,
            "hypothesis_fallbacks": self.hypothesis_fallbacks,
            "max_depth": self.max_depth,
            "aborted": self.aborted,
            "warnings": list(self.warnings),
        }


@dataclass
class SolveResult:
    decision: Decision
    witness: Optional[Assignment]
    stats: BranchStats

    def record(self, elapsed_ms: Optional[float] = None, seed: Optional[int] = None) -> dict:
        """Flat stats document (the CLI's ``--stats`` schema)."""
        rec = {"decision": self.decision.value}
        rec.update(self.stats.as_dict())
        rec["elapsed_ms"] = elapsed_ms
        rec["seed"] = seed
        return rec


def build_partition(inst: Instance) -> Partition:
    """Greedy split of 2-list vertices (A) and 3-list vertices (B).

    Repeatedly pick the lowest-id vertex of A that sees at least two B
    vertices not yet covered; those picks form X1 and their B neighbors Y1.
    """
    A = [v for v in inst.vertices if POPCOUNT[inst.lists[v]] == 2]
    B = {v for v in inst.adj if inst.lists[v] == FULL}
    X1: List = []
    covered: set = set()
    while True:
        for a in A:
            if a in X1:
                continue
            fresh = [b for b in inst.adj[a] if b in B and b not in covered]
            if len(fresh) >= 2:
                X1.append(a)
                covered.update(b for b in inst.adj[a] if b in B)
                break
        else:
            break
    x1set = set(X1)
    part = Partition(
        X1=tuple(X1),
        Y1=tuple(sorted(covered)),
        X2=tuple(v for v in A if v not in x1set),
        Y2=tuple(sorted(B - covered)),
    )
    check_partition(inst, part)
    return part


def check_partition(inst: Instance, part: Partition):
    """Raise :class:`PartitionError` if any counting invariant fails."""
    y2 = set(part.Y2)
    x2 = set(part.X2)
    if part.y1 < 2 * part.x1:
        raise PartitionError(f"y1={part.y1} < 2*x1={2 * part.x1}")
    for a in part.X1:
        hit = [b for b in inst.adj[a] if b in y2]
        if hit:
            raise PartitionError(f"X1 vertex {a!r} adjacent to Y2 vertex {hit[0]!r}", a)
    for a in part.X2:
        if sum(1 for b in inst.adj[a] if b in y2) > 1:
            raise PartitionError(f"X2 vertex {a!r} has more than one Y2 neighbor", a)
    for b in part.Y2:
        if sum(1 for a in inst.adj[b] if a in x2) < 3:
            raise PartitionError(f"Y2 vertex {b!r} has fewer than three X2 neighbors", b)
    if 3 * part.y2 > part.x2:
        raise PartitionError(f"3*y2={3 * part.y2} > x2={part.x2}")


def select_case(inst: Instance) -> CaseKind:
    """Classify a reduced instance and pick its pivot (lowest id on ties)."""
    three = [v for v in inst.vertices if inst.lists[v] == FULL]
    if not three:
        return CaseKind(ALL_TWO_LISTS)
    counts = {v: list3_neighbor_count(inst, v) for v in three}
    t = max(counts.values())
    top = [v for v in three if counts[v] == t]
    if t >= 6:
        return CaseKind(CASE1, top[0])
    if t in (4, 5):
        need = 1 if t == 5 else 2
        for v in top:
            if list2_neighbor_count(inst, v) >= need:
                return CaseKind(CASE2 if t == 5 else CASE3, v)
        return CaseKind(FALLBACK, top[0])
    for v in three:
        if list2_neighbor_count(inst, v) < 3:
            return CaseKind(FALLBACK, v)
    return CaseKind(CASE4, partition=build_partition(inst))


def check_recurrence(
    node_kind: CaseKind,
    parent_mu: Fraction,
    children_mu: Sequence[Fraction],
    case4_leaf_bound: Optional[int] = None,
) -> bool:
    kind = node_kind.kind if isinstance(node_kind, CaseKind) else node_kind
    if kind == FALLBACK:
        return False
    if kind == CASE4:
        return case4_leaf_bound <= C ** float(parent_mu) * (1 + EPS)
    return sum(C ** float(mu - parent_mu) for mu in children_mu) <= 1 + EPS


class _Aborted(Exception):
    pass


class _Search:
    def __init__(self, config: SolverConfig, stats: BranchStats):
        self.config = config
        self.stats = stats

    def node(self, depth: int):
        self.stats.nodes += 1
        if depth > self.stats.max_depth:
            self.stats.max_depth = depth
        if self.stats.nodes > self.config.node_cap:
            raise _Aborted

    def leaf(self, depth: int):
        self.stats.leaves += 1
        if depth > self.stats.max_depth:
            self.stats.max_depth = depth

    def explore(self, out: ReduceOutcome, depth: int) -> Optional[Assignment]:
        """Solve a reduced node; the witness covers the pre-reduction instance."""
        if out.contradiction:
            self.leaf(depth)
            return None
        inst = out.result
        if not inst.adj:
            self.leaf(depth)
            return replay_trace(out.trace, {})
        kind = select_case(inst)
        if self.config.observer is not None:
            self.config.observer(inst, kind)
        if kind.kind == ALL_TWO_LISTS:
            self.leaf(depth)
            a = solve_two_list(inst)
        else:
            self.stats.case_counts[kind.kind] += 1
            self.node(depth)
            if kind.kind == CASE4:
                a = self.case4(inst, kind, depth)
            else:
                a = self.branch(inst, kind, depth)
        return None if a is None else replay_trace(out.trace, a)

    def branch(self, inst: Instance, kind: CaseKind, depth: int) -> Optional[Assignment]:
        v = kind.pivot
        colors = inst.list_of(v)
        outs: List[Optional[ReduceOutcome]] = [None] * len(colors)
        if kind.kind == FALLBACK:
            self.stats.hypothesis_fallbacks += 1
        if self.config.bound_check:
            outs = [reduce_fixpoint(assign_color(inst, v, c)) for c in colors]
            mus = [Fraction(0) if o.contradiction else measure(o.result) for o in outs]
            if not check_recurrence(kind, measure(inst), mus) and kind.kind != FALLBACK:
                self.stats.recurrence_violations += 1
                log.debug("recurrence violated at %s pivot %r: %s -> %s", kind.kind, v, measure(inst), mus)
        for c, out in zip(colors, outs):
            if out is None:
                out = reduce_fixpoint(assign_color(inst, v, c))
            sub = self.explore(out, depth + 1)
            if sub is not None:
                sub[v] = c
                return sub
        return None

    def case4(self, inst: Instance, kind: CaseKind, depth: int) -> Optional[Assignment]:
        part = kind.partition
        if self.config.bound_check:
            bound = 2 ** (part.x1 + part.y2)
            if not check_recurrence(kind, measure(inst), (), bound):
                self.stats.recurrence_violations += 1
        order = [(v, True) for v in part.X1] + [(v, False) for v in part.Y2]
        if self.config.case4_pruning:
            return self._enum_pruned(inst, order, 0, depth)
        return self._enum_full(inst, inst.lists, order, 0, {}, False, depth)

    def _enum_pruned(self, cur: Instance, order, i: int, depth: int) -> Optional[Assignment]:
        while i < len(order):
            v, in_x1 = order[i]
            if v in cur.adj and (in_x1 or cur.lists[v] == FULL):
                break
            i += 1
        if i == len(order):
            self.leaf(depth)
            if any(m == FULL for m in cur.lists.values()):
                raise AssertionError("case 4 leaf still has a 3-list vertex")
            return solve_two_list(cur) if cur.adj else {}
        self.node(depth + 1)
        v, in_x1 = order[i]
        if in_x1:
            options = [(c, None) for c in cur.list_of(v)]
        else:
            options = [(1, None), (None, NOT_ONE)]
        for c, mask in options:
            child = assign_color(cur, v, c) if c is not None else restrict(cur, v, mask)
            out = reduce_fixpoint(child, deferrals=False)
            if out.contradiction:
                self.leaf(depth + 1)
                continue
            sub = self._enum_pruned(out.result, order, i + 1, depth + 1)
            if sub is not None:
                sub = replay_trace(out.trace, sub)
                if c is not None:
                    sub[v] = c
                return sub
        return None

    def _enum_full(self, cur: Instance, base: dict, order, i: int, fixed: dict, dead: bool, depth: int):
        # every combination is visited; infeasible choices only surface at the leaf
        if i == len(order):
            self.leaf(depth)
            if dead or cur.trivially_unsat:
                return None
            a = solve_two_list(cur) if cur.adj else {}
            if a is not None:
                a.update(fixed)
            return a
        self.node(depth + 1)
        v, in_x1 = order[i]
        if in_x1:
            options = [(c, None) for c in colors_of(base[v])]
        else:
            options = [(1, None), (None, NOT_ONE)]
        for c, mask in options:
            child, d, fx = cur, dead, fixed
            if c is None:
                child = restrict(cur, v, mask)
            elif dead or not cur.lists[v] & bit(c):
                d = True
            else:
                child, fx = assign_color(cur, v, c), {**fixed, v: c}
            sub = self._enum_full(child, base, order, i + 1, fx, d, depth + 1)
            if sub is not None:
                return sub
        return None


def _fresh_stats(inst: Instance) -> BranchStats:
    return BranchStats(mu_root=measure(inst))


def solve(inst: Instance, config: Optional[SolverConfig] = None) -> SolveResult:
    """Decide whether ``inst`` has a proper list coloring, with a witness if so."""
    config = config or SolverConfig()
    stats = _fresh_stats(inst)
    search = _Search(config, stats)
    try:
        a = search.explore(reduce_fixpoint(inst), 0)
    except _Aborted:
        stats.aborted = True
        return SolveResult(Decision.ABORTED, None, stats)
    if a is None:
        return SolveResult(Decision.NOT_CHOOSABLE, None, stats)
    return SolveResult(Decision.CHOOSABLE, a, stats)


def three_colorability(graph: Instance, config: Optional[SolverConfig] = None) -> SolveResult:
    """3-colorability: branch a maximum-degree vertex over {1,2,3}, then solve.

    Each branch leaves the vertex's neighbors with 2-lists.  The bound is
    only guaranteed for minimum degree >= 6; below that a warning is added
    to the stats.
    """
    if any(m != FULL for m in graph.lists.values()):
        raise InstanceError("three_colorability needs every list to be {1,2,3}")
    config = config or SolverConfig()
    stats = _fresh_stats(graph)
    if not graph.adj:
        return SolveResult(Decision.CHOOSABLE, {}, stats)
    if min_degree(graph) < 6:
        stats.warnings.append("min_degree_below_6")
    delta = max_degree(graph)
    v = next(u for u in graph.vertices if graph.degree(u) == delta)
    search = _Search(config, stats)
    try:
        search.node(0)
        for c in (1, 2, 3):
            sub = search.explore(reduce_fixpoint(assign_color(graph, v, c)), 1)
            if sub is not None:
                sub[v] = c
                return SolveResult(Decision.CHOOSABLE, sub, stats)
    except _Aborted:
        stats.aborted = True
        return SolveResult(Decision.ABORTED, None, stats)
    return SolveResult(Decision.NOT_CHOOSABLE, None, stats)


def branch_case4(inst: Instance, part: Partition, config: Optional[SolverConfig] = None) -> Tuple[Optional[Assignment], int]:
    """Run the case-4 enumeration alone; returns (witness, leaves visited)."""
    config = config or SolverConfig()
    stats = _fresh_stats(inst)
    search = _Search(config, stats)
    a = search.case4(inst, CaseKind(CASE4, partition=part), 0)
    return a, stats.leaves
