"""Differential runs: solver against the brute-force oracle on generated corpora."""
from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, List, Optional, Sequence, Tuple

from .generate import PROFILES, GenSpec, generate_flagged
from .instance import verify_assignment
from .oracle import OracleCapExceeded, brute_force
from .solver import C, Decision, SolverConfig, solve


def mixed_specs(count: int, size_range: Tuple[int, int], seed: int) -> List[GenSpec]:
    """A reproducible mix of list profiles, densities and repair settings."""
    rng = random.Random(seed)
    lo, hi = size_range
    specs = []
    for _ in range(count):
        specs.append(
            GenSpec(
                n=rng.randint(lo, hi),
                edge_probability=round(rng.uniform(0.15, 0.75), 3),
                list_profile=PROFILES[rng.randrange(len(PROFILES))],
                p2=round(rng.uniform(0.2, 0.8), 3),
                repair_hypothesis=rng.random() < 0.5,
                seed=rng.getrandbits(63),
            )
        )
    return specs


def run_one(args) -> dict:
    spec, config, use_oracle, timing = args
    inst, repaired = generate_flagged(spec)
    t0 = time.perf_counter()
    res = solve(inst, config)
    elapsed = (time.perf_counter() - t0) * 1000 if timing else None
    rec = res.record(elapsed_ms=elapsed, seed=spec.seed)
    rec["spec"] = spec.as_dict()
    rec["hypothesis_ok"] = repaired if spec.repair_hypothesis else None
    rec["witness_ok"] = None if res.witness is None else verify_assignment(inst, res.witness)
    rec["oracle_decision"] = None
    rec["match"] = None
    if use_oracle and res.decision is not Decision.ABORTED:
        try:
            ref = brute_force(inst)
        except OracleCapExceeded:
            pass
        else:
            rec["oracle_decision"] = (Decision.CHOOSABLE if ref is not None else Decision.NOT_CHOOSABLE).value
            rec["match"] = rec["oracle_decision"] == rec["decision"]
    return rec


@dataclass
class Report:
    records: List[dict] = field(default_factory=list)

    @property
    def mismatches(self) -> List[dict]:
        return [r for r in self.records if r["match"] is False or r["witness_ok"] is False]

    def summary(self) -> dict:
        clean = [r for r in self.records if r["recurrence_violations"] == 0 and r["hypothesis_fallbacks"] == 0 and not r["aborted"]]
        ratios = [r["leaves"] / r["bound_c_pow_mu"] for r in clean]
        return {
            "count": len(self.records),
            "mismatches": len(self.mismatches),
            "checked_against_oracle": sum(1 for r in self.records if r["match"] is not None),
            "aborted": sum(1 for r in self.records if r["aborted"]),
            "violation_free": len(clean),
            "max_leaf_ratio": max(ratios, default=0.0),
            "c": C,
        }

    def to_jsonl(self) -> str:
        return "".join(json.dumps(r, sort_keys=True) + "\n" for r in self.records)


def differential_run(
    count: int,
    size_range: Tuple[int, int],
    seed: int,
    config: Optional[SolverConfig] = None,
    *,
    specs: Optional[Sequence[GenSpec]] = None,
    oracle: bool = True,
    workers: int = 1,
    timing: bool = False,
) -> Report:
    """Solve ``count`` generated instances and compare with brute force.

    ``specs`` overrides the default mixed corpus.  Records come back in
    corpus order whatever ``workers`` is.
    """
    config = config or SolverConfig()
    if specs is None:
        specs = mixed_specs(count, size_range, seed)
    jobs = [(s, replace(config, observer=None) if workers > 1 else config, oracle, timing) for s in specs]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(run_one, jobs, chunksize=8))
    else:
        records = [run_one(j) for j in jobs]
    for i, r in enumerate(records):
        r["index"] = i
    return Report(records)
