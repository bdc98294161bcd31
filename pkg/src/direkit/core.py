"""Core data model for constrained multiwinner elections.

An election pairs a candidate roster with voters holding strict complete
rankings.  Candidates are organized into groups under candidate attributes
(the diversity side); voters into populations under voter attributes (the
representation side), each population optionally carrying a given winning
committee.  Every type here is a frozen dataclass: instances are immutable
after construction and safe to share across threads.

Construction is deliberately permissive -- broken instances can be built so
that :func:`validate` can report every violation instead of raising on the
first one.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Literal

Mode = Literal["strict", "relaxed"]


@dataclass(frozen=True)
class Voter:
    """A voter with a strict complete ranking, most preferred first."""

    id: str
    ranking: tuple[str, ...]


@dataclass(frozen=True)
class Election:
    """Candidates, voters, committee size, and tie-break priority order.

    ``tiebreak`` lists candidates from highest to lowest priority for
    breaking score ties; it defaults to candidate declaration order.
    """

    candidates: tuple[str, ...]
    voters: tuple[Voter, ...]
    committee_size: int
    tiebreak: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.tiebreak:
            object.__setattr__(self, "tiebreak", tuple(self.candidates))

    @property
    def num_candidates(self) -> int:
        return len(self.candidates)

    @property
    def num_voters(self) -> int:
        return len(self.voters)


@dataclass(frozen=True)
class ScoringRule:
    """A positional scoring vector, non-increasing, one entry per candidate."""

    vector: tuple[int, ...]

    @classmethod
    def borda(cls, num_candidates: int) -> "ScoringRule":
        return cls(tuple(range(num_candidates - 1, -1, -1)))

    @property
    def is_borda(self) -> bool:
        m = len(self.vector)
        return self.vector == tuple(range(m - 1, -1, -1))


@dataclass(frozen=True)
class Group:
    """A named candidate subset under one candidate attribute, with its
    diversity lower bound (at least ``lower_bound`` members must be in any
    feasible committee)."""

    attribute: str
    name: str
    members: frozenset[str]
    lower_bound: int

    @property
    def key(self) -> tuple[str, str]:
        return (self.attribute, self.name)


@dataclass(frozen=True)
class Population:
    """A named voter subset under one voter attribute.

    ``lower_bound`` is the representation constraint: at least that many
    members of the population's winning committee must be selected.  The
    winning committee may be given explicitly (``given_committee``, ordered
    from the population's most to least preferred member); otherwise it is
    computed from the population's ballots via
    :func:`population_winning_committee`.
    """

    attribute: str
    name: str
    members: frozenset[str]
    lower_bound: int
    given_committee: tuple[str, ...] | None = None

    @property
    def key(self) -> tuple[str, str]:
        return (self.attribute, self.name)


@dataclass(frozen=True)
class GroupSystem:
    """All candidate groups, in declaration order."""

    groups: tuple[Group, ...] = ()

    def __iter__(self) -> Iterator[Group]:
        return iter(self.groups)

    def __len__(self) -> int:
        return len(self.groups)

    def by_attribute(self) -> dict[str, list[Group]]:
        out: dict[str, list[Group]] = {}
        for g in self.groups:
            out.setdefault(g.attribute, []).append(g)
        return out


@dataclass(frozen=True)
class PopulationSystem:
    """All voter populations, in declaration order."""

    populations: tuple[Population, ...] = ()

    def __iter__(self) -> Iterator[Population]:
        return iter(self.populations)

    def __len__(self) -> int:
        return len(self.populations)

    def by_attribute(self) -> dict[str, list[Population]]:
        out: dict[str, list[Population]] = {}
        for p in self.populations:
            out.setdefault(p.attribute, []).append(p)
        return out


@dataclass(frozen=True)
class DireInstance:
    """A complete problem instance: election, constraints, scoring rule.

    ``rule`` defaults to Borda over the election's candidates.
    """

    election: Election
    groups: GroupSystem = GroupSystem()
    populations: PopulationSystem = PopulationSystem()
    rule: ScoringRule | None = None

    def __post_init__(self) -> None:
        if self.rule is None:
            object.__setattr__(
                self, "rule", ScoringRule.borda(self.election.num_candidates)
            )


@dataclass(frozen=True)
class ValidationReport:
    errors: tuple[str, ...]
    warnings: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.errors


@lru_cache(maxsize=4096)
def _ranking_index(ranking: tuple[str, ...]) -> dict[str, int]:
    return {c: i for i, c in enumerate(ranking)}


def position_of(voter: Voter, candidate: str) -> int:
    """1-based position of ``candidate`` in the voter's ranking (1 = top)."""
    try:
        return _ranking_index(voter.ranking)[candidate] + 1
    except KeyError:
        raise ValueError(
            f"unknown candidate {candidate!r} for voter {voter.id!r}"
        ) from None


@lru_cache(maxsize=4096)
def _priority_of(tiebreak: tuple[str, ...]) -> dict[str, int]:
    return {c: i for i, c in enumerate(tiebreak)}


def priority_index(election: Election) -> dict[str, int]:
    """Map candidate -> tie-break priority rank (0 = highest priority)."""
    return _priority_of(election.tiebreak)


def ordered_committee(election: Election, members) -> tuple[str, ...]:
    """Canonical presentation of a committee: sorted by tie-break priority."""
    prio = priority_index(election)
    return tuple(sorted(members, key=lambda c: prio[c]))


def positional_tally(voters, vector, candidates) -> dict[str, int]:
    """Total positional score of every candidate over the given ballots."""
    scores = dict.fromkeys(candidates, 0)
    for v in voters:
        for pos, c in enumerate(v.ranking):
            scores[c] += vector[pos]
    return scores


def population_winning_committee(
    instance: DireInstance, population: Population, rule: ScoringRule | None = None
) -> tuple[str, ...]:
    """The population's own winning committee, ranked best-first.

    Scores the instance's rule restricted to the population's ballots and
    takes the top ``committee_size`` candidates; ties broken by the global
    tie-break priority.  Used whenever a population has no given committee.
    """
    election = instance.election
    rule = rule or instance.rule
    members = [v for v in election.voters if v.id in population.members]
    if not members:
        raise ValueError(
            f"population {population.attribute}/{population.name} has no voters"
        )
    scores = positional_tally(members, rule.vector, election.candidates)
    prio = priority_index(election)
    ranked = sorted(election.candidates, key=lambda c: (-scores[c], prio[c]))
    return tuple(ranked[: election.committee_size])


@lru_cache(maxsize=64)
def resolved_population_committees(
    instance: DireInstance,
) -> dict[tuple[str, str], tuple[str, ...]]:
    """Winning committee of every population: given if present, else computed."""
    out: dict[tuple[str, str], tuple[str, ...]] = {}
    for p in instance.populations:
        if p.given_committee is not None:
            out[p.key] = p.given_committee
        else:
            out[p.key] = population_winning_committee(instance, p)
    return out


def _check_bound(errors, kind, key, bound, low, high) -> None:
    if not low <= bound <= high:
        errors.append(
            f"{kind} {key[0]}/{key[1]}: bound {bound} outside [{low}, {high}]"
        )


def validate(instance: DireInstance, mode: Mode = "strict") -> ValidationReport:
    """Check every structural invariant; returns a report, never raises.

    Strict mode requires bounds of at least 1 (groups capped at
    min(k, group size), populations at k); relaxed mode additionally admits
    zero bounds.  Identically-partitioned attribute pairs with identical
    bounds are reported as warnings, not errors.
    """
    if mode not in ("strict", "relaxed"):
        raise ValueError(f"unknown validation mode {mode!r}")
    errors: list[str] = []
    warnings: list[str] = []
    election = instance.election
    m = election.num_candidates
    n = election.num_voters
    k = election.committee_size
    candidate_set = set(election.candidates)

    if m < 1:
        errors.append("election has no candidates")
    if n < 1:
        errors.append("election has no voters")
    if not 1 <= k <= max(m, 1):
        errors.append(f"committee size {k} outside [1, {m}]")
    for name, count in Counter(election.candidates).items():
        if count > 1:
            errors.append(f"candidate {name!r} declared {count} times")
    if Counter(election.tiebreak) != Counter(election.candidates):
        errors.append("tiebreak is not a permutation of the candidate set")

    seen_voters: set[str] = set()
    candidate_counter = Counter(election.candidates)
    for v in election.voters:
        if v.id in seen_voters:
            errors.append(f"voter {v.id!r} declared more than once")
        seen_voters.add(v.id)
        if Counter(v.ranking) != candidate_counter:
            errors.append(
                f"voter {v.id!r}: ranking is not a permutation of the candidates"
            )

    vector = instance.rule.vector
    if len(vector) != m:
        errors.append(f"rule vector has length {len(vector)}, expected {m}")
    if any(s < 0 for s in vector):
        errors.append("rule vector has a negative entry")
    if any(a < b for a, b in zip(vector, vector[1:])):
        errors.append("rule vector is not non-increasing")

    low = 1 if mode == "strict" else 0

    seen_groups: set[tuple[str, str]] = set()
    for g in instance.groups:
        if g.key in seen_groups:
            errors.append(f"group {g.attribute}/{g.name} declared more than once")
        seen_groups.add(g.key)
        for c in sorted(g.members - candidate_set):
            errors.append(
                f"group {g.attribute}/{g.name} references unknown candidate {c!r}"
            )
        _check_bound(
            errors, "group", g.key, g.lower_bound, low, min(k, len(g.members))
        )
    for attr, groups in instance.groups.by_attribute().items():
        for i, g1 in enumerate(groups):
            for g2 in groups[i + 1 :]:
                shared = g1.members & g2.members
                if shared:
                    errors.append(
                        f"candidate attribute {attr!r} is not a partition: groups "
                        f"{g1.name} and {g2.name} share {sorted(shared)[0]!r}"
                    )

    seen_pops: set[tuple[str, str]] = set()
    voter_ids = {v.id for v in election.voters}
    for p in instance.populations:
        if p.key in seen_pops:
            errors.append(
                f"population {p.attribute}/{p.name} declared more than once"
            )
        seen_pops.add(p.key)
        for vid in sorted(p.members - voter_ids):
            errors.append(
                f"population {p.attribute}/{p.name} references unknown voter {vid!r}"
            )
        _check_bound(errors, "population", p.key, p.lower_bound, low, k)
        if p.given_committee is not None:
            wp = p.given_committee
            if len(set(wp)) != len(wp):
                errors.append(
                    f"population {p.attribute}/{p.name}: given committee has duplicates"
                )
            if len(wp) != k:
                errors.append(
                    f"population {p.attribute}/{p.name}: given committee has "
                    f"{len(wp)} members, expected {k}"
                )
            for c in wp:
                if c not in candidate_set:
                    errors.append(
                        f"population {p.attribute}/{p.name}: given committee "
                        f"references unknown candidate {c!r}"
                    )
    for attr, pops in instance.populations.by_attribute().items():
        for i, p1 in enumerate(pops):
            for p2 in pops[i + 1 :]:
                shared = p1.members & p2.members
                if shared:
                    errors.append(
                        f"voter attribute {attr!r} is not a partition: populations "
                        f"{p1.name} and {p2.name} share {sorted(shared)[0]!r}"
                    )

    # Stipulation: two attributes that induce the same partition with the
    # same bounds are really one attribute.  Warning only.
    def _stipulation(by_attr: dict, label: str) -> None:
        signatures: dict[frozenset, str] = {}
        for attr, items in by_attr.items():
            sig = frozenset((it.members, it.lower_bound) for it in items)
            if sig in signatures:
                warnings.append(
                    f"{label} attributes {signatures[sig]!r} and {attr!r} partition "
                    "identically with identical bounds"
                )
            else:
                signatures[sig] = attr

    _stipulation(instance.groups.by_attribute(), "candidate")
    _stipulation(instance.populations.by_attribute(), "voter")

    return ValidationReport(tuple(errors), tuple(warnings))
