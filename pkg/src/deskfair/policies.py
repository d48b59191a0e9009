"""Baseline rejection policies and the constructive ideal algorithm for n <= 2.

The conventional policy walks papers in submission order and drops any paper
whose coauthor already has the cap's worth of registered papers. The roulette
policy repeatedly rejects a uniformly random kept paper of the most over-cap
author. Both always terminate with a feasible keep set.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import metrics
from .instance import Instance, KeepVector
from .metrics import FairnessReport


class TooManyAuthors(ValueError):
    pass


class OutcomeSpaceTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class PolicyOutcome:
    policy: str
    keep: KeepVector
    report: FairnessReport
    trace: tuple[tuple[str, str, str], ...]  # (paper id, decision, reason)


def conventional_desk_reject(inst: Instance) -> PolicyOutcome:
    """Order-based rejection: paper j is dropped iff, at its turn, some
    coauthor already has x registered (kept) papers."""
    registered = [0] * inst.n
    keep = [1] * inst.m
    trace = []
    for j, authors in enumerate(inst.paper_authors):
        blocker = next((i for i in authors if registered[i] >= inst.x), None)
        pid = inst.papers[j].id
        if blocker is not None:
            keep[j] = 0
            trace.append((pid, "reject", f"author {inst.author_ids[blocker]} already at the cap"))
        else:
            for i in authors:
                registered[i] += 1
            trace.append((pid, "keep", "no coauthor at the cap"))
    kv = KeepVector.binary(keep)
    return PolicyOutcome("conventional", kv, metrics.evaluate(inst, kv), tuple(trace))


def _victim(counts, x):
    """Most over-cap author, lowest index on ties; None when all fit."""
    best = None
    for i, k in enumerate(counts):
        if k > x and (best is None or k - x > counts[best] - x):
            best = i
    return best


def roulette_reject(inst: Instance, seed: int = 0) -> PolicyOutcome:
    """Randomized rejection: while someone is over the cap, drop one of the
    worst offender's kept papers uniformly at random. Deterministic per seed."""
    rng = random.Random(seed)
    keep = [1] * inst.m
    counts = [inst.paper_count(i) for i in range(inst.n)]
    trace = []
    while True:
        victim = _victim(counts, inst.x)
        if victim is None:
            break
        candidates = [j for j in inst.author_papers[victim] if keep[j]]
        j = candidates[rng.randrange(len(candidates))]
        keep[j] = 0
        for i in inst.paper_authors[j]:
            counts[i] -= 1
        trace.append(
            (inst.papers[j].id, "reject",
             f"author {inst.author_ids[victim]} over the cap by {counts[victim] + 1 - inst.x}")
        )
    kv = KeepVector.binary(keep)
    return PolicyOutcome("roulette", kv, metrics.evaluate(inst, kv), tuple(trace))


def roulette_expectation(inst: Instance, max_outcomes: int = 100_000):
    """Exact expectations of both fairness metrics under the roulette policy.

    Enumerates the full randomness tree, weighting each leaf by its path
    probability. Raises :class:`OutcomeSpaceTooLarge` once more than
    `max_outcomes` leaves are seen.
    """
    e_ind = Fraction(0)
    e_group = Fraction(0)
    leaves = 0
    start_counts = tuple(inst.paper_count(i) for i in range(inst.n))
    stack = [((1,) * inst.m, start_counts, Fraction(1))]
    while stack:
        keep, counts, prob = stack.pop()
        victim = _victim(counts, inst.x)
        if victim is None:
            leaves += 1
            if leaves > max_outcomes:
                raise OutcomeSpaceTooLarge(f"more than {max_outcomes} roulette outcomes")
            kv = KeepVector.binary(keep)
            e_ind += prob * metrics.zeta_ind(inst, kv)
            e_group += prob * metrics.zeta_group(inst, kv)
            continue
        candidates = [j for j in inst.author_papers[victim] if keep[j]]
        share = prob / len(candidates)
        for j in candidates:
            child = list(keep)
            child[j] = 0
            child_counts = list(counts)
            for i in inst.paper_authors[j]:
                child_counts[i] -= 1
            stack.append((tuple(child), tuple(child_counts), share))
    return e_ind, e_group


def ideal_construct_small(inst: Instance) -> KeepVector:
    """Constructive keep set leaving every author at exactly min(x, own count).

    Only defined for one or two authors, where such a set always exists.
    Ties break toward rejecting the latest-submitted paper first.
    """
    if inst.n > 2:
        raise TooManyAuthors(f"constructive path covers n <= 2, got n = {inst.n}")
    keep = [1] * inst.m

    def reject_latest(papers, count):
        for j in reversed(papers):
            if count == 0:
                break
            keep[j] = 0
            count -= 1

    if inst.n == 1:
        reject_latest(inst.author_papers[0], max(0, inst.paper_count(0) - inst.x))
        return KeepVector.binary(keep)

    shared = [j for j, authors in enumerate(inst.paper_authors) if len(authors) == 2]
    solo = [
        [j for j in inst.author_papers[i] if len(inst.paper_authors[j]) == 1]
        for i in (0, 1)
    ]
    if len(shared) <= inst.x:
        # Each author's overage fits inside their solo papers.
        for i in (0, 1):
            reject_latest(solo[i], max(0, inst.paper_count(i) - inst.x))
    else:
        # Both authors are over the cap through the shared papers alone:
        # drop every solo paper, then shared ones down to the cap.
        for i in (0, 1):
            reject_latest(solo[i], len(solo[i]))
        reject_latest(shared, len(shared) - inst.x)
    return KeepVector.binary(keep)
