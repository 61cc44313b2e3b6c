"""Exact list coloring for lists drawn from {1, 2, 3}."""
from .instance import (
    Instance,
    InstanceError,
    build_instance,
    check_hypothesis,
    list3_neighbor_count,
    measure,
    verify_assignment,
)
from .reductions import assign_color, reduce_fixpoint, replay_trace
from .solver import (
    BranchStats,
    Decision,
    Partition,
    SolveResult,
    SolverConfig,
    build_partition,
    check_recurrence,
    select_case,
    solve,
    three_colorability,
)
from .twolist import solve_two_list, two_list_work_bound

__version__ = "0.1.0"
