"""Positional scoring lifted to separable committee scoring; k-Borda."""

from __future__ import annotations

from typing import Iterable

from .core import (
    DireInstance,
    ScoringRule,
    ordered_committee,
    position_of,
    positional_tally,
    priority_index,
)


def candidate_score(
    instance: DireInstance, candidate: str, rule: ScoringRule | None = None
) -> int:
    """Sum over voters of the rule's score at the candidate's position."""
    rule = rule or instance.rule
    vector = rule.vector
    return sum(
        vector[position_of(v, candidate) - 1] for v in instance.election.voters
    )


def committee_score(
    instance: DireInstance, committee: Iterable[str], rule: ScoringRule | None = None
) -> int:
    """Separable committee score: the sum of member scores."""
    rule = rule or instance.rule
    candidate_set = set(instance.election.candidates)
    total = 0
    for c in committee:
        if c not in candidate_set:
            raise ValueError(f"unknown candidate {c!r}")
        total += candidate_score(instance, c, rule)
    return total


def all_candidate_scores(
    instance: DireInstance, rule: ScoringRule | None = None
) -> dict[str, int]:
    """Score of every candidate at once (one pass over the ballots)."""
    rule = rule or instance.rule
    election = instance.election
    return positional_tally(election.voters, rule.vector, election.candidates)


def k_borda(instance: DireInstance) -> tuple[str, ...]:
    """The k candidates with the highest Borda scores, ties by priority.

    Always Borda, regardless of the instance's rule.  Returned in tie-break
    priority order.
    """
    election = instance.election
    borda = ScoringRule.borda(election.num_candidates)
    scores = all_candidate_scores(instance, borda)
    prio = priority_index(election)
    ranked = sorted(election.candidates, key=lambda c: (-scores[c], prio[c]))
    return ordered_committee(election, ranked[: election.committee_size])
