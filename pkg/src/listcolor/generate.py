"""Seeded random instance generation.

All randomness comes from :class:`random.Random` (Mersenne Twister
MT19937) seeded with ``GenSpec.seed``.  The same spec always yields the
same instance; ``tests/test_generate.py`` pins a few outputs.
"""
from __future__ import annotations

import logging
import random
from dataclasses import asdict, dataclass
from typing import Optional, Tuple

from .instance import FULL, Instance, check_hypothesis, list2_neighbor_count

log = logging.getLogger(__name__)

PROFILES = ("uniform", "all-three", "two-three-mix", "one-two")
TWO_SUBSETS = (0b011, 0b101, 0b110)
SMALL_SUBSETS = (0b001, 0b010, 0b100, 0b011, 0b101, 0b110)


class GenError(ValueError):
    pass


@dataclass(frozen=True)
class GenSpec:
    """Parameters for one random instance.

    ``list_profile``:

    * ``uniform``: each list uniform over the 7 nonempty subsets
    * ``all-three``: every list is {1,2,3}
    * ``two-three-mix``: a random 2-subset with probability ``p2``, else {1,2,3}
    * ``one-two``: uniform over the 6 subsets of size 1 or 2
    """

    n: int
    edge_probability: float = 0.3
    list_profile: str = "uniform"
    p2: float = 0.5
    repair_hypothesis: bool = False
    min_degree: Optional[int] = None
    seed: int = 0

    def as_dict(self) -> dict:
        return asdict(self)


def generate(spec: GenSpec) -> Instance:
    return generate_flagged(spec)[0]


def generate_flagged(spec: GenSpec) -> Tuple[Instance, bool]:
    """Generate an instance; the flag is False if hypothesis repair fell short."""
    if spec.list_profile not in PROFILES:
        raise GenError(f"unknown list profile {spec.list_profile!r}")
    if spec.n < 0 or not 0 <= spec.edge_probability <= 1:
        raise GenError("need n >= 0 and 0 <= edge_probability <= 1")
    if spec.min_degree is not None and spec.n > 0 and spec.min_degree >= spec.n:
        raise GenError(f"min_degree {spec.min_degree} impossible with n={spec.n}")

    rng = random.Random(spec.seed)
    n = spec.n
    adj = {v: set() for v in range(1, n + 1)}
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            if rng.random() < spec.edge_probability:
                adj[u].add(v)
                adj[v].add(u)

    if spec.min_degree:
        while True:
            short = [v for v in adj if len(adj[v]) < spec.min_degree]
            if not short:
                break
            v = short[0]
            pool = [u for u in adj if u != v and u not in adj[v]]
            u = pool[rng.randrange(len(pool))]
            adj[u].add(v)
            adj[v].add(u)

    lists = {}
    for v in adj:
        if spec.list_profile == "uniform":
            lists[v] = 1 + rng.randrange(7)
        elif spec.list_profile == "all-three":
            lists[v] = FULL
        elif spec.list_profile == "two-three-mix":
            lists[v] = TWO_SUBSETS[rng.randrange(3)] if rng.random() < spec.p2 else FULL
        else:
            lists[v] = SMALL_SUBSETS[rng.randrange(6)]

    inst = Instance({v: frozenset(ns) for v, ns in adj.items()}, lists)
    if not spec.repair_hypothesis:
        return inst, True
    return repair_hypothesis(inst, rng)


def repair_hypothesis(inst: Instance, rng: random.Random) -> Tuple[Instance, bool]:
    """Shrink 3-lists next to hypothesis violators until none is left or nothing helps.

    Each shrink turns one {1,2,3} into a random 2-subset, so this terminates.
    """
    lists = dict(inst.lists)
    view = Instance(inst.adj, lists)
    changed = True
    while changed:
        changed = False
        for v in inst.vertices:
            if lists[v] != FULL or len(inst.adj[v]) > 5:
                continue
            full_nbrs = sorted(u for u in inst.adj[v] if lists[u] == FULL)
            while full_nbrs and list2_neighbor_count(view, v) < 3:
                u = full_nbrs.pop(0)
                lists[u] = TWO_SUBSETS[rng.randrange(3)]
                changed = True
    repaired = Instance(inst.adj, lists)
    ok = not check_hypothesis(repaired)
    if not ok:
        log.info("hypothesis repair incomplete")
    return repaired, ok

