"""Command-line entry point.

Exit codes: 0 positive decision (or valid / clean bench), 1 negative
decision, 2 usage or parse error, 3 aborted by a cap.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
import time

from . import lcol
from .bench import differential_run, mixed_specs
from .generate import PROFILES, GenError, GenSpec, generate_flagged
from .instance import InstanceError, verify_assignment
from .oracle import DEFAULT_CAP, OracleCapExceeded, brute_force, brute_force_3color
from .solver import DEFAULT_NODE_CAP, Decision, SolverConfig, solve, three_colorability

EXIT = {Decision.CHOOSABLE: 0, Decision.NOT_CHOOSABLE: 1, Decision.ABORTED: 3}
STATS_ENV = "LISTCOLOR_STATS"


class UsageError(Exception):
    pass


def _read(path):
    try:
        with open(path) as f:
            return f.read()
    except OSError as e:
        raise UsageError(str(e)) from None


def _write(path, text):
    with open(path, "w", newline="\n") as f:
        f.write(text)


def _stats_path(args):
    return args.stats or os.environ.get(STATS_ENV)


def _config(args) -> SolverConfig:
    return SolverConfig(
        node_cap=args.node_cap,
        bound_check=not args.no_bound_check,
        case4_pruning=not args.no_case4_pruning,
        seed=args.seed,
    )


def _dump(rec) -> str:
    return json.dumps(rec, sort_keys=True) + "\n"


def cmd_solve(args, three=False):
    inst = lcol.parse_lcol(_read(args.file))
    t0 = time.perf_counter()
    if three:
        res = three_colorability(inst, _config(args))
    else:
        res = solve(inst, _config(args))
    elapsed = (time.perf_counter() - t0) * 1000
    print(res.decision.value)
    if _stats_path(args):
        _write(_stats_path(args), _dump(res.record(elapsed_ms=round(elapsed, 3), seed=args.seed)))
    if args.witness and res.witness is not None:
        _write(args.witness, lcol.write_assignment(res.witness))
    return EXIT[res.decision]


def cmd_oracle(args):
    inst = lcol.parse_lcol(_read(args.file))
    try:
        a = brute_force_3color(inst, args.cap) if args.three else brute_force(inst, args.cap)
    except OracleCapExceeded as e:
        print(Decision.ABORTED.value)
        print(f"oracle: {e}", file=sys.stderr)
        return 3
    decision = Decision.CHOOSABLE if a is not None else Decision.NOT_CHOOSABLE
    print(decision.value)
    if args.witness and a is not None:
        _write(args.witness, lcol.write_assignment(a))
    return EXIT[decision]


def cmd_gen(args):
    spec = GenSpec(
        n=args.n,
        edge_probability=args.p,
        list_profile=args.profile,
        p2=args.p2,
        repair_hypothesis=args.repair,
        min_degree=args.min_degree,
        seed=args.seed if args.seed is not None else 0,
    )
    inst, ok = generate_flagged(spec)
    comments = [f"gen {json.dumps(spec.as_dict(), sort_keys=True)}"]
    if not ok:
        comments.append("warning: hypothesis repair incomplete")
        print("warning: hypothesis repair incomplete", file=sys.stderr)
    text = lcol.write_lcol(inst, comments)
    if args.output:
        _write(args.output, text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_bench(args):
    seed = args.seed if args.seed is not None else 0
    lo = args.n if args.n is not None else args.n_min
    hi = args.n if args.n is not None else args.n_max
    if lo > hi:
        raise UsageError("--n-min exceeds --n-max")
    if args.profile == "mixed":
        specs = mixed_specs(args.count, (lo, hi), seed)
    else:
        rng = random.Random(seed)
        specs = [
            GenSpec(
                n=rng.randint(lo, hi),
                edge_probability=args.p,
                list_profile=args.profile,
                p2=args.p2,
                repair_hypothesis=args.repair,
                min_degree=args.min_degree,
                seed=rng.getrandbits(63),
            )
            for _ in range(args.count)
        ]
    report = differential_run(
        args.count, (lo, hi), seed, _config(args),
        specs=specs, oracle=not args.no_oracle, workers=args.workers, timing=args.timing,
    )
    sys.stdout.write(_dump(report.summary()))
    if _stats_path(args):
        _write(_stats_path(args), report.to_jsonl())
    for r in report.mismatches:
        print(f"mismatch: {json.dumps(r['spec'], sort_keys=True)}", file=sys.stderr)
    return 1 if report.mismatches else 0


def cmd_verify(args):
    inst = lcol.parse_lcol(_read(args.file))
    a = lcol.parse_assignment(_read(args.assignment))
    try:
        ok = verify_assignment(inst, a)
    except InstanceError as e:
        print(f"verify: {e}", file=sys.stderr)
        ok = False
    print("VALID" if ok else "INVALID")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--stats", metavar="PATH", help=f"write the stats document here (default: ${STATS_ENV})")
    shared.add_argument("--witness", metavar="PATH", help="write the coloring as '<v> <c>' lines")
    shared.add_argument("--node-cap", type=int, default=DEFAULT_NODE_CAP, help="abort after this many nodes")
    shared.add_argument("--no-bound-check", action="store_true", help="skip per-node recurrence checks")
    shared.add_argument("--no-case4-pruning", action="store_true",
                        help="enumerate every case-4 combination without propagation")
    shared.add_argument("--seed", type=int, default=None)
    shared.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="listcolor", description="Exact list coloring with lists from {1,2,3}.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", parents=[shared], help="decide L-choosability")
    s.add_argument("file")
    s = sub.add_parser("solve3", parents=[shared], help="decide 3-colorability (all lists {1,2,3})")
    s.add_argument("file")
    s = sub.add_parser("oracle", parents=[shared], help="brute-force decision")
    s.add_argument("file")
    s.add_argument("--three", action="store_true", help="3-colorability oracle")
    s.add_argument("--cap", type=int, default=DEFAULT_CAP, help="max search-space size before giving up")
    s = sub.add_parser("verify", parents=[shared], help="check an assignment file")
    s.add_argument("file")
    s.add_argument("assignment")

    def gen_flags(s, n_required):
        s.add_argument("--p", type=float, default=0.3, help="edge probability")
        s.add_argument("--profile", default="uniform" if n_required else "mixed",
                       choices=PROFILES if n_required else ("mixed",) + PROFILES)
        s.add_argument("--p2", type=float, default=0.5, help="share of 2-lists (two-three-mix)")
        s.add_argument("--repair", action="store_true", help="repair the degree/list hypothesis")
        s.add_argument("--min-degree", type=int, default=None)

    s = sub.add_parser("gen", parents=[shared], help="generate an instance")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("-o", "--output")
    gen_flags(s, True)

    s = sub.add_parser("bench", parents=[shared], help="differential run on a generated corpus")
    s.add_argument("--count", type=int, default=100)
    s.add_argument("--n", type=int, default=None, help="fixed vertex count")
    s.add_argument("--n-min", type=int, default=4)
    s.add_argument("--n-max", type=int, default=12)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--no-oracle", action="store_true", help="skip brute-force cross-check")
    s.add_argument("--timing", action="store_true", help="record elapsed_ms (breaks byte-identical output)")
    gen_flags(s, False)
    return p


COMMANDS = {
    "solve": cmd_solve,
    "solve3": lambda a: cmd_solve(a, three=True),
    "oracle": cmd_oracle,
    "gen": cmd_gen,
    "bench": cmd_bench,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (UsageError, lcol.LcolError, InstanceError, GenError) as e:
        print(f"listcolor: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
