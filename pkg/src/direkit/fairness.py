"""Envy-freeness audits for committees: favorite, utility, and weighted
utility criteria with their threshold relaxations.

A population's utility for a committee is the sum, over selected members of
its own winning committee W_P, of m - rank within W_P (the top member of an
m-candidate election is worth m - 1).  Candidates outside W_P contribute 0.
Weighted utility divides by the best mass the population's representation
bound allows, sum_{i=1..bound} (m - i), and is kept as an exact
:class:`~fractions.Fraction` throughout -- thresholds like 1/13 are compared
without any floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .core import (
    DireInstance,
    Population,
    population_winning_committee,
    priority_index,
)
from .errors import InfeasibleError
from .solver import DEFAULT_ORACLE_CAP, enumerate_dire

CRITERIA = ("fec", "uec", "wec")


@dataclass(frozen=True)
class PopulationUtility:
    attribute: str
    population: str
    utility: int
    weighted_utility: Fraction | None  # None when the bound is 0 (undefined)
    favorite_rank: int | None  # None when no W_P member is selected


def wp_ranking(instance: DireInstance, population: Population) -> tuple[str, ...]:
    """The population's winning committee, best-first.

    A given committee's listed order is its ranking; otherwise the committee
    is computed (and thereby ranked) from the population's ballots.
    """
    if population.given_committee is not None:
        return population.given_committee
    return population_winning_committee(instance, population)


def borda_within_wp(
    instance: DireInstance, population: Population, candidate: str
) -> int:
    """m - rank of the candidate within W_P; 0 for candidates outside W_P."""
    ranking = wp_ranking(instance, population)
    m = instance.election.num_candidates
    try:
        return m - (ranking.index(candidate) + 1)
    except ValueError:
        return 0


def utility(
    instance: DireInstance, population: Population, committee: Iterable[str]
) -> int:
    """Total in-W_P Borda mass the population assigns to the committee."""
    ranking = wp_ranking(instance, population)
    m = instance.election.num_candidates
    selected = set(committee)
    return sum(m - (i + 1) for i, c in enumerate(ranking) if c in selected)


def _weight_denominator(m: int, bound: int) -> int:
    return bound * m - bound * (bound + 1) // 2


def weighted_utility(
    instance: DireInstance, population: Population, committee: Iterable[str]
) -> Fraction:
    """Utility over the best mass the representation bound allows, exact."""
    if population.lower_bound < 1:
        raise ValueError(
            f"weighted utility undefined for zero bound "
            f"(population {population.attribute}/{population.name})"
        )
    m = instance.election.num_candidates
    denominator = _weight_denominator(m, population.lower_bound)
    if denominator <= 0:
        raise ValueError(
            f"weighted utility has zero denominator for m={m}, "
            f"bound={population.lower_bound}"
        )
    return Fraction(utility(instance, population, committee), denominator)


def fec_envy(
    instance: DireInstance, population: Population, committee: Iterable[str]
) -> int | None:
    """Best selected rank within W_P minus one; None when nothing is selected."""
    ranking = wp_ranking(instance, population)
    selected = set(committee)
    for i, c in enumerate(ranking):
        if c in selected:
            return i
    return None


def population_utilities(
    instance: DireInstance, committee: Iterable[str]
) -> tuple[PopulationUtility, ...]:
    """Per-population audit record for a committee."""
    selected = set(committee)
    out = []
    for p in instance.populations:
        envy = fec_envy(instance, p, selected)
        out.append(
            PopulationUtility(
                attribute=p.attribute,
                population=p.name,
                utility=utility(instance, p, selected),
                weighted_utility=(
                    weighted_utility(instance, p, selected)
                    if p.lower_bound >= 1
                    else None
                ),
                favorite_rank=None if envy is None else envy + 1,
            )
        )
    return tuple(out)


def _spread(values: list) -> object:
    if len(values) < 2:
        return 0
    return max(values) - min(values)


def uec_spread(instance: DireInstance, committee: Iterable[str]) -> int:
    """Largest pairwise utility gap across populations (0 if fewer than 2)."""
    selected = set(committee)
    return _spread([utility(instance, p, selected) for p in instance.populations])


def wec_spread(instance: DireInstance, committee: Iterable[str]) -> Fraction:
    """Largest pairwise weighted-utility gap, as an exact rational."""
    selected = set(committee)
    values = [weighted_utility(instance, p, selected) for p in instance.populations]
    return Fraction(_spread(values))


def max_fec_envy(instance: DireInstance, committee: Iterable[str]) -> int | None:
    """Worst population envy; None means some population has nothing selected."""
    selected = set(committee)
    worst = 0
    for p in instance.populations:
        envy = fec_envy(instance, p, selected)
        if envy is None:
            return None
        worst = max(worst, envy)
    return worst


def is_fec(instance: DireInstance, committee: Iterable[str]) -> bool:
    """Every population's top-ranked winning-committee member is selected."""
    return max_fec_envy(instance, committee) == 0


def is_fec_up_to(instance: DireInstance, committee: Iterable[str], x: int) -> bool:
    """Every population has one of its top-(x+1) members selected."""
    if x < 0:
        raise ValueError(f"envy threshold must be non-negative, got {x}")
    worst = max_fec_envy(instance, committee)
    return worst is not None and worst <= x


def is_uec(instance: DireInstance, committee: Iterable[str]) -> bool:
    return uec_spread(instance, committee) == 0


def is_uec_up_to(instance: DireInstance, committee: Iterable[str], eta: int) -> bool:
    m = instance.election.num_candidates
    limit = (m - 1) * m // 2
    if not 0 <= eta <= limit:
        raise ValueError(f"utility threshold {eta} outside [0, {limit}]")
    return uec_spread(instance, committee) <= eta


def is_wec(instance: DireInstance, committee: Iterable[str]) -> bool:
    return wec_spread(instance, committee) == 0


def is_wec_up_to(instance: DireInstance, committee: Iterable[str], zeta) -> bool:
    zeta = Fraction(zeta)
    if not 0 <= zeta <= 1:
        raise ValueError(f"weighted threshold {zeta} outside [0, 1]")
    return wec_spread(instance, committee) <= zeta


def optimal_fair_dire(
    instance: DireInstance,
    criterion: str,
    cap: int = DEFAULT_ORACLE_CAP,
) -> tuple[str, ...]:
    """The feasible committee minimizing the criterion's spread (FEC: worst
    envy, unbounded counted as infinite), ties by higher score then
    tie-break-lex order.  Raises :class:`InfeasibleError` when no committee
    is feasible."""
    criterion = criterion.lower()
    if criterion not in CRITERIA:
        raise ValueError(f"unknown criterion {criterion!r}, expected one of {CRITERIA}")
    feasible = enumerate_dire(instance, cap=cap)
    if not feasible:
        raise InfeasibleError("no feasible committee")
    prio = priority_index(instance.election)

    def badness(committee):
        if criterion == "fec":
            worst = max_fec_envy(instance, committee)
            return math.inf if worst is None else worst
        if criterion == "uec":
            return uec_spread(instance, committee)
        return wec_spread(instance, committee)

    best = min(
        feasible,
        key=lambda item: (
            badness(item[0]),
            -item[1],
            tuple(sorted(prio[c] for c in item[0])),
        ),
    )
    return best[0]
