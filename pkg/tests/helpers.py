"""Shared test utilities: seeded instance generators and fixture graphs."""

from __future__ import annotations

import random
from pathlib import Path

from direkit import (
    DireInstance,
    Election,
    Graph,
    Group,
    GroupSystem,
    Population,
    PopulationSystem,
    ScoringRule,
    Voter,
    load_election,
)

DATA_DIR = Path(__file__).parent / "data"

# Outer cycle, spokes, inner pentagram.  Minimum vertex cover is 6.
PETERSEN = Graph(
    10,
    (
        (1, 2), (2, 3), (3, 4), (4, 5), (1, 5),
        (1, 6), (2, 7), (3, 8), (4, 9), (5, 10),
        (6, 8), (8, 10), (7, 10), (7, 9), (6, 9),
    ),
)


def wec_fixture() -> tuple[DireInstance, tuple[str, ...]]:
    """The worked 8-candidate example: two populations with bound 2 whose
    given committees give the audited committee in-committee Borda values
    {6, 4} and {7, 5}."""
    instance = load_election(DATA_DIR / "wec_example.election")
    return instance, ("c1", "c6", "c3", "c8")


def random_ranking(rng: random.Random, candidates) -> tuple[str, ...]:
    ranking = list(candidates)
    rng.shuffle(ranking)
    return tuple(ranking)


def random_instance(
    rng: random.Random,
    max_candidates: int = 8,
    max_k: int = 4,
    max_attrs: int = 3,
    max_voters: int = 6,
    min_group_bound: int = 0,
    min_pop_bound: int = 0,
) -> DireInstance:
    """A valid-for-relaxed-mode instance with random rankings, partitions,
    bounds, and a mix of given and computed population committees."""
    m = rng.randint(2, max_candidates)
    k = rng.randint(1, min(max_k, m))
    n = rng.randint(1, max_voters)
    candidates = tuple(f"c{i}" for i in range(1, m + 1))
    voters = tuple(
        Voter(f"v{i}", random_ranking(rng, candidates)) for i in range(1, n + 1)
    )
    tiebreak = random_ranking(rng, candidates)
    election = Election(candidates, voters, k, tiebreak)

    groups = []
    for ai in range(rng.randint(0, max_attrs)):
        pool = [c for c in candidates if rng.random() < 0.8]
        rng.shuffle(pool)
        buckets: list[list[str]] = [[] for _ in range(rng.randint(1, 3))]
        for j, c in enumerate(pool):
            buckets[j % len(buckets)].append(c)
        for gi, bucket in enumerate(buckets):
            if not bucket:
                continue
            bound = rng.randint(min(min_group_bound, len(bucket)), min(k, len(bucket)))
            groups.append(Group(f"ca{ai}", f"g{ai}_{gi}", frozenset(bucket), bound))

    populations = []
    voter_ids = [v.id for v in voters]
    for ai in range(rng.randint(0, max_attrs)):
        pool = list(voter_ids)
        rng.shuffle(pool)
        buckets = [[] for _ in range(rng.randint(1, 2))]
        for j, vid in enumerate(pool):
            buckets[j % len(buckets)].append(vid)
        for pi, bucket in enumerate(buckets):
            if not bucket:
                continue
            bound = rng.randint(min_pop_bound, k)
            given = (
                tuple(rng.sample(candidates, k)) if rng.random() < 0.5 else None
            )
            populations.append(
                Population(f"va{ai}", f"p{ai}_{pi}", frozenset(bucket), bound, given)
            )

    if rng.random() < 0.6:
        rule = ScoringRule.borda(m)
    else:
        vector = sorted((rng.randint(0, 3 * m) for _ in range(m)), reverse=True)
        rule = ScoringRule(tuple(vector))

    return DireInstance(
        election=election,
        groups=GroupSystem(tuple(groups)),
        populations=PopulationSystem(tuple(populations)),
        rule=rule,
    )


def random_unconstrained(
    rng: random.Random, max_candidates: int = 10, max_voters: int = 6
) -> DireInstance:
    m = rng.randint(1, max_candidates)
    k = rng.randint(1, m)
    n = rng.randint(1, max_voters)
    candidates = tuple(f"c{i}" for i in range(1, m + 1))
    voters = tuple(
        Voter(f"v{i}", random_ranking(rng, candidates)) for i in range(1, n + 1)
    )
    return DireInstance(
        Election(candidates, voters, k, random_ranking(rng, candidates))
    )


def random_committee(rng: random.Random, instance: DireInstance) -> tuple[str, ...]:
    return tuple(
        rng.sample(instance.election.candidates, instance.election.committee_size)
    )
