"""Feasibility semantics of diversity and representation constraints."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .core import DireInstance, resolved_population_committees
from .errors import CommitteeSizeError


@dataclass(frozen=True)
class GroupShortfall:
    attribute: str
    group: str
    required: int
    achieved: int


@dataclass(frozen=True)
class PopulationShortfall:
    attribute: str
    population: str
    required: int
    achieved: int


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    diversity_violations: tuple[GroupShortfall, ...]
    representation_violations: tuple[PopulationShortfall, ...]


def _as_candidate_set(instance: DireInstance, committee: Iterable[str]) -> frozenset[str]:
    members = frozenset(committee)
    unknown = members - set(instance.election.candidates)
    if unknown:
        raise ValueError(f"unknown candidate {sorted(unknown)[0]!r} in committee")
    return members


def check_diversity(
    instance: DireInstance, committee: Iterable[str]
) -> tuple[GroupShortfall, ...]:
    """Every group whose intersection with the committee is below its bound."""
    members = _as_candidate_set(instance, committee)
    out = []
    for g in instance.groups:
        achieved = len(g.members & members)
        if achieved < g.lower_bound:
            out.append(GroupShortfall(g.attribute, g.name, g.lower_bound, achieved))
    return tuple(out)


def check_representation(
    instance: DireInstance, committee: Iterable[str]
) -> tuple[PopulationShortfall, ...]:
    """Every population with fewer winning-committee members selected than
    its bound requires.  Populations with bound 0 are never violated (and
    their winning committees are not computed)."""
    members = _as_candidate_set(instance, committee)
    out = []
    committees = None
    for p in instance.populations:
        if p.lower_bound <= 0:
            continue
        if committees is None:
            committees = resolved_population_committees(instance)
        achieved = len(set(committees[p.key]) & members)
        if achieved < p.lower_bound:
            out.append(
                PopulationShortfall(p.attribute, p.name, p.lower_bound, achieved)
            )
    return tuple(out)


def is_dire(instance: DireInstance, committee: Iterable[str]) -> FeasibilityReport:
    """Full feasibility check of a size-k committee.

    A committee of the wrong size is an error, not "infeasible": the problem
    quantifies over size-k committees only.
    """
    members = _as_candidate_set(instance, committee)
    k = instance.election.committee_size
    if len(members) != k:
        raise CommitteeSizeError(
            f"committee has {len(members)} members, expected {k}"
        )
    diversity = check_diversity(instance, members)
    representation = check_representation(instance, members)
    return FeasibilityReport(
        feasible=not diversity and not representation,
        diversity_violations=diversity,
        representation_violations=representation,
    )
