"""Exact optimization of the fairness metrics and set-cover reduction tools.

Mean-cost optimization runs LP relaxation first and falls back to depth-first
branch and bound with float LP bounds and exact-rational incumbents, so no
float value is ever reported as an optimum. Worst-case-cost optimization walks
the finite set of achievable cost levels with a feasibility search per level;
it is exponential in the worst case, which is expected: deciding small
worst-case cost encodes set cover.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import metrics
from .instance import Instance, KeepVector, validate_instance
from .lp import (
    FEAS_TOL,
    INT_TOL,
    LpStatus,
    build_group_relaxation,
    integrality_check,
    snap_binary,
    solve_lp,
)
from .metrics import FairnessReport
from .policies import conventional_desk_reject

DEFAULT_NODE_LIMIT = 10**6


class NodeLimitExceeded(RuntimeError):
    pass


def _node_limit(explicit: int | None) -> int:
    if explicit is not None:
        return explicit
    return int(os.environ.get("DESKFAIR_NODE_LIMIT", DEFAULT_NODE_LIMIT))


@dataclass(frozen=True)
class BranchNode:
    fixed_zero: frozenset[int]
    fixed_one: frozenset[int]
    lp_bound: float  # inherited upper bound, valid for every completion
    depth: int


@dataclass(frozen=True)
class SolverDiagnostics:
    node_count: int = 0
    lp_calls: int = 0
    wall_time_ms: float = 0.0
    lp_objective: float | None = None  # root relaxation value
    lp_integral: bool | None = None    # was the root relaxation already 0/1
    best_bound: float | None = None
    incumbent_trace: tuple[Fraction, ...] = ()  # exact objective at each improvement


@dataclass(frozen=True)
class SolveResult:
    """Outcome of one exact solve.

    `objective` is the exact optimum of the solved criterion: total kept
    fraction (maximized) for the group solver, worst-case cost (minimized)
    for the individual solver.
    """

    policy: str
    keep: KeepVector
    report: FairnessReport
    objective: Fraction | None
    diagnostics: SolverDiagnostics


def solve_group_exact(inst: Instance, node_limit: int | None = None) -> SolveResult:
    """Binary keep vector maximizing the total kept fraction subject to the cap.

    Equivalently minimizes the mean cost. LP-first: an integral relaxation
    optimum is re-certified in exact rationals and returned; otherwise branch
    and bound on the most fractional variable, pruning against the exact
    incumbent with a 1e-9 safety margin on the float LP bound.
    """
    start = time.perf_counter()
    limit = _node_limit(node_limit)
    lp0 = build_group_relaxation(inst)

    seed = conventional_desk_reject(inst).keep
    best_keep = seed
    best_obj = metrics.group_objective(inst, seed)
    incumbents = [best_obj]

    node_count = 0
    lp_calls = 0
    root_objective = None
    root_integral = None

    stack = [BranchNode(frozenset(), frozenset(), float("inf"), 0)]
    while stack:
        node = stack.pop()
        node_count += 1
        if node_count > limit:
            raise NodeLimitExceeded(f"branch and bound exceeded {limit} nodes")
        if node.lp_bound + FEAS_TOL <= float(best_obj):
            continue
        lo = np.array([1.0 if j in node.fixed_one else 0.0 for j in range(inst.m)])
        hi = np.array([0.0 if j in node.fixed_zero else 1.0 for j in range(inst.m)])
        sol = solve_lp(lp0.with_bounds(lo, hi))
        lp_calls += 1
        if node.depth == 0:
            root_objective = sol.objective_value
            root_integral = sol.status is LpStatus.OPTIMAL and integrality_check(sol)
        if sol.status is not LpStatus.OPTIMAL:
            continue
        if sol.objective_value + FEAS_TOL <= float(best_obj):
            continue
        if integrality_check(sol):
            keep = snap_binary(sol)
            exact = metrics.group_objective(inst, keep)
            certified = (
                metrics.is_feasible(inst, keep)
                and abs(sol.objective_value - float(exact)) <= INT_TOL
            )
            if certified:
                if exact > best_obj:
                    best_obj, best_keep = exact, keep
                    incumbents.append(exact)
                continue
            # Uncertifiable vertex (numerics went sour): split on a free
            # variable instead of trusting or discarding the node.
            fixed = node.fixed_zero | node.fixed_one
            j = next((k for k in range(inst.m) if k not in fixed), None)
            if j is None:
                continue
        else:
            values = sol.r.values
            frac = [min(v, 1.0 - v) for v in values]
            j = max(range(inst.m), key=lambda k: (frac[k], -k))
        bound = sol.objective_value
        stack.append(BranchNode(node.fixed_zero | {j}, node.fixed_one, bound, node.depth + 1))
        stack.append(BranchNode(node.fixed_zero, node.fixed_one | {j}, bound, node.depth + 1))

    elapsed = (time.perf_counter() - start) * 1000.0
    return SolveResult(
        policy="group-exact",
        keep=best_keep,
        report=metrics.evaluate(inst, best_keep),
        objective=best_obj,
        diagnostics=SolverDiagnostics(
            node_count=node_count,
            lp_calls=lp_calls,
            wall_time_ms=elapsed,
            lp_objective=root_objective,
            lp_integral=root_integral,
            best_bound=root_objective,
            incumbent_trace=tuple(incumbents),
        ),
    )


class _Budget:
    """Shared node counter for the feasibility searches."""

    def __init__(self, limit):
        self.limit = limit
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.nodes > self.limit:
            raise NodeLimitExceeded(f"feasibility search exceeded {self.limit} nodes")


def _search_keep(inst, lower, upper, budget_nodes, max_kept=None):
    """Depth-first search for a binary keep vector with per-author kept counts
    in [lower_i, upper_i] and optionally at most `max_kept` papers kept.

    Papers are decided in submission order, keep tried before reject; prunes
    on cap overshoot and on authors that can no longer reach their floor.
    Returns the first witness found, or None.
    """
    n, m = inst.n, inst.m
    remaining = [[0] * (m + 1) for _ in range(n)]
    for j in range(m - 1, -1, -1):
        for i in range(n):
            remaining[i][j] = remaining[i][j + 1]
        for i in inst.paper_authors[j]:
            remaining[i][j] += 1
    if any(remaining[i][0] < lower[i] for i in range(n)):
        return None

    kept = [0] * n
    choice = [0] * m

    def dfs(j, total):
        budget_nodes.tick()
        if j == m:
            return True
        authors = inst.paper_authors[j]
        can_keep = all(kept[i] < upper[i] for i in authors)
        if max_kept is not None and total >= max_kept:
            can_keep = False
        if can_keep:
            choice[j] = 1
            for i in authors:
                kept[i] += 1
            if all(kept[i] + remaining[i][j + 1] >= lower[i] for i in authors):
                if dfs(j + 1, total + 1):
                    return True
            for i in authors:
                kept[i] -= 1
        choice[j] = 0
        if all(kept[i] + remaining[i][j + 1] >= lower[i] for i in authors):
            if dfs(j + 1, total):
                return True
        return False

    if dfs(0, 0):
        return KeepVector.binary(choice)
    return None


def solve_individual_exact(inst: Instance, node_limit: int | None = None) -> SolveResult:
    """Binary keep vector minimizing the worst-case cost subject to the cap.

    The worst-case cost only takes values k/|papers of i|, so we binary-search
    that finite grid, testing each level with a feasibility search over keep
    vectors meeting the implied per-author floors.
    """
    start = time.perf_counter()
    budget = _Budget(_node_limit(node_limit))
    sizes = [inst.paper_count(i) for i in range(inst.n)]
    levels = sorted({Fraction(k, s) for s in sizes for k in range(s + 1)})

    def floors(t: Fraction):
        # smallest kept count keeping author i's cost at most t
        return [s - (s * t.numerator) // t.denominator for s in sizes]

    upper = [inst.x] * inst.n
    lo_idx, hi_idx = 0, len(levels) - 1
    witness = _search_keep(inst, floors(levels[hi_idx]), upper, budget)
    assert witness is not None  # the empty keep set meets level 1
    best_idx = hi_idx
    while lo_idx < hi_idx:
        mid = (lo_idx + hi_idx) // 2
        found = _search_keep(inst, floors(levels[mid]), upper, budget)
        if found is not None:
            witness, best_idx = found, mid
            hi_idx = mid
        else:
            lo_idx = mid + 1
    if best_idx != lo_idx:
        witness = _search_keep(inst, floors(levels[lo_idx]), upper, budget)
        assert witness is not None  # lo_idx ended on a feasible level

    elapsed = (time.perf_counter() - start) * 1000.0
    report = metrics.evaluate(inst, witness)
    return SolveResult(
        policy="individual-exact",
        keep=witness,
        report=report,
        objective=levels[lo_idx],
        diagnostics=SolverDiagnostics(node_count=budget.nodes, wall_time_ms=elapsed),
    )


def solve_ideal_feasibility(
    inst: Instance, node_limit: int | None = None
) -> KeepVector | None:
    """Witness keep vector giving every author exactly min(x, own count)
    papers, or None when no such vector exists."""
    budget = _Budget(_node_limit(node_limit))
    targets = [min(inst.x, inst.paper_count(i)) for i in range(inst.n)]
    return _search_keep(inst, targets, targets, budget)


@dataclass(frozen=True)
class IntegralityAudit:
    lp_objective: float
    ilp_objective: Fraction
    gap: float
    lp_integral: bool

    @property
    def is_counterexample(self) -> bool:
        return self.gap > INT_TOL


def integrality_audit(inst: Instance, node_limit: int | None = None) -> IntegralityAudit:
    """Compare the relaxation optimum against the exact binary optimum.

    A positive gap exhibits an instance where the relaxation is *not* exact,
    i.e. rounding the LP cannot be trusted on that instance.
    """
    sol = solve_lp(build_group_relaxation(inst))
    exact = solve_group_exact(inst, node_limit=node_limit)
    return IntegralityAudit(
        lp_objective=sol.objective_value,
        ilp_objective=exact.objective,
        gap=sol.objective_value - float(exact.objective),
        lp_integral=integrality_check(sol),
    )


@dataclass(frozen=True)
class SetCoverInstance:
    """Decision problem: can at most `budget` of the sets cover the universe
    {1, ..., universe_size}?"""

    universe_size: int
    sets: tuple[frozenset[int], ...]
    budget: int

    def __post_init__(self):
        if self.universe_size < 1:
            raise ValueError("universe must be non-empty")
        if self.budget < 1:
            raise ValueError("budget must be positive")
        universe = set(range(1, self.universe_size + 1))
        for k, s in enumerate(self.sets):
            if not s:
                raise ValueError(f"set #{k} is empty")
            if not s <= universe:
                raise ValueError(f"set #{k} leaves the universe")


@dataclass(frozen=True)
class BudgetedInstance:
    """A submission-limit instance plus a cardinality budget on kept papers.

    The budget only exists in the set-cover pipeline; plain instances carry
    no such constraint.
    """

    instance: Instance
    budget: int


def reduce_set_cover(sc: SetCoverInstance) -> BudgetedInstance:
    """Encode set cover as a submission-limit instance: universe elements
    become authors, sets become papers, and the cap x = number of sets never
    binds. Covering every element with at most K sets is exactly finding a
    keep vector with every author's kept count >= 1 and at most K papers kept.
    """
    authors = [f"e{i}" for i in range(1, sc.universe_size + 1)]
    papers = [
        {"id": f"s{j + 1}", "authors": [f"e{i}" for i in sorted(s)]}
        for j, s in enumerate(sc.sets)
    ]
    inst = validate_instance({"x": len(sc.sets), "authors": authors, "papers": papers})
    return BudgetedInstance(inst, sc.budget)


def decide_set_cover(
    sc: SetCoverInstance, node_limit: int | None = None
) -> tuple[bool, tuple[int, ...] | None]:
    """Decide the covering question; on success also return the 0-based
    indices of a witness subfamily."""
    covered = set().union(*sc.sets)
    if covered != set(range(1, sc.universe_size + 1)):
        return False, None
    reduced = reduce_set_cover(sc)
    inst = reduced.instance
    budget = _Budget(_node_limit(node_limit))
    witness = _search_keep(
        inst,
        lower=[1] * inst.n,
        upper=[inst.x] * inst.n,
        budget_nodes=budget,
        max_kept=reduced.budget,
    )
    if witness is None:
        return False, None
    return True, witness.kept_indices()
