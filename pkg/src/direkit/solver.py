"""Exact solvers for constrained committee selection.

Two routes with identical contracts: :func:`solve_brute` enumerates every
k-subset (the oracle, capped), :func:`solve` runs unit propagation followed
by branch-and-bound (uncapped).  Both maximize the separable committee score
over feasible committees and break score ties by tie-break-lexicographic
committee order, so results are deterministic and bit-identical across runs.
"""

from __future__ import annotations

import math
import sys
import time
from dataclasses import dataclass
from itertools import combinations

from .core import (
    DireInstance,
    Group,
    ordered_committee,
    priority_index,
    resolved_population_committees,
)
from .errors import CapExceededError
from .scoring import all_candidate_scores

DEFAULT_ORACLE_CAP = 10**8


@dataclass(frozen=True)
class SolveResult:
    status: str  # "optimal" | "infeasible"
    committee: tuple[str, ...] | None
    score: int | None
    nodes_explored: int
    elapsed: float
    forced: frozenset[str]


@dataclass(frozen=True)
class Propagation:
    """Outcome of unit propagation: candidates every feasible committee must
    contain, plus the diversity groups still unmet by the forced set."""

    forced: frozenset[str]
    feasible: bool
    unmet_groups: tuple[Group, ...]


def propagate(instance: DireInstance) -> Propagation:
    """Force all members of any group whose bound equals its size.

    Forcing never shrinks a group, so one pass suffices.  Infeasible when a
    bound exceeds its group size or the forced set exceeds the committee
    size.
    """
    k = instance.election.committee_size
    forced: set[str] = set()
    feasible = True
    for g in instance.groups:
        if g.lower_bound <= 0:
            continue
        if g.lower_bound > len(g.members):
            feasible = False
        elif g.lower_bound == len(g.members):
            forced |= g.members
    if len(forced) > k:
        feasible = False
    unmet = tuple(
        g
        for g in instance.groups
        if g.lower_bound > 0 and len(g.members & forced) < g.lower_bound
    )
    return Propagation(frozenset(forced), feasible, unmet)


def _committee_key(prio: dict[str, int], members) -> tuple[int, ...]:
    return tuple(sorted(prio[c] for c in members))


def solve_brute(instance: DireInstance, cap: int = DEFAULT_ORACLE_CAP) -> SolveResult:
    """Enumerate all k-subsets; return the best feasible one.

    Ties go to the tie-break-lexicographically smallest committee.  Raises
    :class:`CapExceededError` when C(m, k) exceeds ``cap``.
    """
    start = time.perf_counter()
    election = instance.election
    m, k = election.num_candidates, election.committee_size
    total = math.comb(m, k) if 0 <= k <= m else 0
    if total > cap:
        raise CapExceededError(
            f"C({m}, {k}) = {total} subsets exceeds the oracle cap of {cap}"
        )

    prio = priority_index(election)
    by_priority = sorted(election.candidates, key=lambda c: prio[c])
    scores = all_candidate_scores(instance)
    checks = _constraint_sets(instance)

    best: tuple[str, ...] | None = None
    best_score = 0
    nodes = 0
    # combinations over the priority order yields committees in ascending
    # tie-break-lex order, so the first strict maximum is the tie winner.
    for combo in combinations(by_priority, k):
        nodes += 1
        members = frozenset(combo)
        if all(len(need & members) >= lb for need, lb in checks):
            score = sum(scores[c] for c in combo)
            if best is None or score > best_score:
                best, best_score = combo, score
    elapsed = time.perf_counter() - start
    if best is None:
        return SolveResult("infeasible", None, None, nodes, elapsed, frozenset())
    return SolveResult("optimal", best, best_score, nodes, elapsed, frozenset())


def enumerate_dire(
    instance: DireInstance,
    limit: int | None = None,
    cap: int = DEFAULT_ORACLE_CAP,
) -> list[tuple[tuple[str, ...], int]]:
    """All feasible committees with scores, best (score, tie-break) first."""
    election = instance.election
    m, k = election.num_candidates, election.committee_size
    total = math.comb(m, k) if 0 <= k <= m else 0
    if total > cap:
        raise CapExceededError(
            f"C({m}, {k}) = {total} subsets exceeds the oracle cap of {cap}"
        )
    prio = priority_index(election)
    by_priority = sorted(election.candidates, key=lambda c: prio[c])
    scores = all_candidate_scores(instance)
    checks = _constraint_sets(instance)
    feasible = []
    for combo in combinations(by_priority, k):
        members = frozenset(combo)
        if all(len(need & members) >= lb for need, lb in checks):
            feasible.append((combo, sum(scores[c] for c in combo)))
    feasible.sort(key=lambda item: (-item[1], _committee_key(prio, item[0])))
    if limit is not None:
        feasible = feasible[:limit]
    return feasible


def _constraint_sets(instance: DireInstance) -> list[tuple[frozenset[str], int]]:
    """(member set, lower bound) for every binding constraint, diversity and
    representation alike."""
    checks = [(g.members, g.lower_bound) for g in instance.groups if g.lower_bound > 0]
    pops = [p for p in instance.populations if p.lower_bound > 0]
    if pops:
        committees = resolved_population_committees(instance)
        checks.extend((frozenset(committees[p.key]), p.lower_bound) for p in pops)
    return checks


def solve(instance: DireInstance) -> SolveResult:
    """Exact branch-and-bound with the same contract as :func:`solve_brute`.

    Candidates are branched in (score desc, priority) order; the score bound
    adds the best remaining scores for the open slots.  Nodes are pruned when
    a constraint can no longer reach its bound (too few available members),
    when some attribute's summed group deficits exceed the open slots (sound
    because groups within an attribute are disjoint; attributes with
    overlapping groups fall back to per-group deficits), or when the score
    bound falls strictly below the incumbent.  Equal-score plateaus are still
    explored so the returned committee is the exact tie-break winner.
    """
    start = time.perf_counter()
    election = instance.election
    k = election.committee_size

    prop = propagate(instance)
    forced = prop.forced
    if not prop.feasible:
        return SolveResult(
            "infeasible", None, None, 0, time.perf_counter() - start, forced
        )

    prio = priority_index(election)
    scores = all_candidate_scores(instance)
    base_score = sum(scores[c] for c in forced)
    free0 = k - len(forced)
    order = sorted(
        (c for c in election.candidates if c not in forced),
        key=lambda c: (-scores[c], prio[c]),
    )
    if free0 > len(order) or free0 < 0:
        return SolveResult(
            "infeasible", None, None, 0, time.perf_counter() - start, forced
        )

    prefix = [0]
    for c in order:
        prefix.append(prefix[-1] + scores[c])

    # Constraint tables.  Groups within a disjoint attribute share a bucket
    # so their deficits add up; everything else gets its own bucket.
    con_lb: list[int] = []
    con_in: list[int] = []
    con_avail: list[int] = []
    con_bucket: list[int] = []
    of_candidate: dict[str, list[int]] = {c: [] for c in order}

    bucket_ids: dict[object, int] = {}

    def bucket_for(tag: object) -> int:
        if tag not in bucket_ids:
            bucket_ids[tag] = len(bucket_ids)
        return bucket_ids[tag]

    disjoint_attrs = {
        attr: all(
            not (g1.members & g2.members)
            for i, g1 in enumerate(groups)
            for g2 in groups[i + 1 :]
        )
        for attr, groups in instance.groups.by_attribute().items()
    }
    binding: list[tuple[frozenset[str], int, object]] = []
    for idx, g in enumerate(instance.groups):
        if g.lower_bound > 0:
            tag = ("attr", g.attribute) if disjoint_attrs[g.attribute] else ("grp", idx)
            binding.append((g.members, g.lower_bound, tag))
    pops = [p for p in instance.populations if p.lower_bound > 0]
    if pops:
        committees = resolved_population_committees(instance)
        binding.extend(
            (frozenset(committees[p.key]), p.lower_bound, ("pop", p.key))
            for p in pops
        )

    for members, lb, tag in binding:
        ci = len(con_lb)
        in_cnt = len(members & forced)
        con_lb.append(lb)
        con_in.append(in_cnt)
        con_avail.append(len(members) - in_cnt)
        con_bucket.append(bucket_for(tag))
        for c in members:
            if c in of_candidate:
                of_candidate[c].append(ci)

    need: dict[int, int] = {}
    broken = 0
    for ci in range(len(con_lb)):
        deficit = con_lb[ci] - con_in[ci]
        if deficit > 0:
            b = con_bucket[ci]
            need[b] = need.get(b, 0) + deficit
        if deficit > con_avail[ci]:
            broken += 1

    best_score = 0
    best_key: tuple[int, ...] | None = None
    best_committee: tuple[str, ...] | None = None
    chosen: list[str] = []
    nodes = 0

    def apply(ci: int, d_in: int, d_avail: int) -> None:
        nonlocal broken
        old_deficit = con_lb[ci] - con_in[ci]
        old_broken = old_deficit > con_avail[ci]
        con_in[ci] += d_in
        con_avail[ci] += d_avail
        new_deficit = old_deficit - d_in
        if (new_deficit > con_avail[ci]) != old_broken:
            broken += 1 if not old_broken else -1
        d_need = max(0, new_deficit) - max(0, old_deficit)
        if d_need:
            b = con_bucket[ci]
            value = need.get(b, 0) + d_need
            if value:
                need[b] = value
            else:
                del need[b]

    def blocked(free: int) -> bool:
        if broken:
            return True
        return any(d > free for d in need.values())

    def descend(i: int, free: int, score: int) -> None:
        nonlocal best_score, best_key, best_committee, nodes
        nodes += 1
        if free == 0:
            if not need and not broken:
                members = list(forced) + chosen
                key = _committee_key(prio, members)
                if (
                    best_key is None
                    or score > best_score
                    or (score == best_score and key < best_key)
                ):
                    best_score = score
                    best_key = key
                    best_committee = ordered_committee(election, members)
            return
        if len(order) - i < free or blocked(free):
            return
        if best_key is not None and score + prefix[i + free] - prefix[i] < best_score:
            return
        c = order[i]
        cons = of_candidate[c]
        # include c
        for ci in cons:
            apply(ci, 1, -1)
        chosen.append(c)
        descend(i + 1, free - 1, score + scores[c])
        chosen.pop()
        for ci in cons:
            apply(ci, -1, 1)
        # exclude c
        for ci in cons:
            apply(ci, 0, -1)
        descend(i + 1, free, score)
        for ci in cons:
            apply(ci, 0, 1)

    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, len(order) + 200))
    try:
        descend(0, free0, base_score)
    finally:
        sys.setrecursionlimit(old_limit)

    elapsed = time.perf_counter() - start
    if best_committee is None:
        return SolveResult("infeasible", None, None, nodes, elapsed, forced)
    return SolveResult("optimal", best_committee, best_score, nodes, elapsed, forced)
