"""Vertex-cover gadget instances for constrained committee selection.

Generates, from a 3-regular graph, an election whose feasible committees of
the target size correspond exactly to vertex covers of a given size: one
candidate per vertex, dummy candidates arranged in two block families (B1
with sets T1/T2/T3, B2 with set T4), pairwise candidate groups carrying the
diversity bounds, and a voter table whose populations pin the representation
bounds.  Also provides the forward-direction witness committee, two instance
transforms (universal top candidate; complement attribute), a brute-force
vertex-cover oracle, and an end-to-end equivalence check against the solver.

Every generated group gets its own attribute: a globally consistent
assignment of the pairwise groups to exactly mu attributes is an
edge-coloring problem that fails on class-2 graphs, and feasibility depends
only on the groups and bounds.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from itertools import combinations
from typing import Iterable

from .core import (
    DireInstance,
    Election,
    Group,
    GroupSystem,
    Population,
    PopulationSystem,
    ScoringRule,
    Voter,
    ordered_committee,
    population_winning_committee,
)
from .errors import CapExceededError
from .solver import SolveResult, solve

DEFAULT_VC_CAP = 2**24


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph; vertices are 1..num_vertices."""

    num_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.num_vertices < 1:
            raise ValueError("graph needs at least one vertex")
        seen = set()
        normalized = []
        for u, v in self.edges:
            if not (1 <= u <= self.num_vertices and 1 <= v <= self.num_vertices):
                raise ValueError(f"edge ({u}, {v}) references an unknown vertex")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            e = (min(u, v), max(u, v))
            if e in seen:
                raise ValueError(f"duplicate edge ({e[0]}, {e[1]})")
            seen.add(e)
            normalized.append(e)
        object.__setattr__(self, "edges", tuple(normalized))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * (self.num_vertices + 1)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg[1:]


def is_three_regular(graph: Graph) -> bool:
    return all(d == 3 for d in graph.degrees())


def gen_3regular(num_vertices: int, seed: int = 0) -> Graph:
    """Sample a simple 3-regular graph by the pairing model.

    Stubs (three per vertex) are shuffled and paired; samples with loops or
    repeated edges are rejected and redrawn.  Deterministic for a fixed seed.
    """
    if num_vertices < 4 or num_vertices % 2 != 0:
        raise ValueError("3-regular graphs need an even vertex count >= 4")
    rng = random.Random(seed)
    while True:
        stubs = [v for v in range(1, num_vertices + 1) for _ in range(3)]
        rng.shuffle(stubs)
        edges: set[tuple[int, int]] = set()
        for u, v in zip(stubs[::2], stubs[1::2]):
            if u == v:
                break
            e = (min(u, v), max(u, v))
            if e in edges:
                break
            edges.add(e)
        else:
            return Graph(num_vertices, tuple(sorted(edges)))


def is_vertex_cover(graph: Graph, vertices: Iterable[int]) -> bool:
    cover = set(vertices)
    return all(u in cover or v in cover for u, v in graph.edges)


def _check_vc_cap(graph: Graph, cap: int) -> None:
    if 2**graph.num_vertices > cap:
        raise CapExceededError(
            f"2^{graph.num_vertices} subsets exceeds the vertex-cover cap of {cap}"
        )


def vc_brute(graph: Graph, k: int, cap: int = DEFAULT_VC_CAP) -> frozenset[int] | None:
    """Some vertex cover of size <= k, or None.  Smallest size first, so the
    returned cover is minimum whenever one of size <= k exists."""
    _check_vc_cap(graph, cap)
    if not graph.edges:
        return frozenset()
    for size in range(0, min(k, graph.num_vertices) + 1):
        for combo in combinations(range(1, graph.num_vertices + 1), size):
            if is_vertex_cover(graph, combo):
                return frozenset(combo)
    return None


def min_vertex_cover_size(graph: Graph, cap: int = DEFAULT_VC_CAP) -> int:
    _check_vc_cap(graph, cap)
    for size in range(0, graph.num_vertices + 1):
        for combo in combinations(range(1, graph.num_vertices + 1), size):
            if is_vertex_cover(graph, combo):
                return size
    return graph.num_vertices


@dataclass(frozen=True)
class ReductionInstance:
    """A generated election plus the provenance needed to read answers back.

    ``vertex_candidates[i-1]`` is vertex i's candidate (even parity appends a
    second copy per vertex at offset ``graph.num_vertices``);
    ``edge_groups[t-1]`` are the group names enforcing coverage of edge t.
    Block coordinates are all 1-based.
    """

    instance: DireInstance
    graph: Graph
    mu: int
    cover_bound: int
    seed: int
    pi: int
    parity: str  # "odd" | "even"
    vertex_candidates: tuple[str, ...]
    edge_groups: tuple[tuple[str, ...], ...]
    b1_t1: tuple[str, ...]
    b1_t2: tuple[tuple[str, ...], ...]
    b1_t3: tuple[tuple[str, ...], ...]
    b2: tuple[tuple[str, ...], ...]

    @property
    def num_b1_blocks(self) -> int:
        return len(self.b1_t1)

    @property
    def num_b2_blocks(self) -> int:
        return len(self.b2)

    @property
    def dummy_count(self) -> int:
        return self.instance.election.num_candidates - len(self.vertex_candidates)

    def roles(self) -> dict[str, str]:
        """Candidate -> provenance role (vertex:<i>, B1:<block>:<set>:<j>,
        B2:<block>:<j>)."""
        out: dict[str, str] = {}
        for i, c in enumerate(self.vertex_candidates, start=1):
            out[c] = f"vertex:{i}"
        for bi in range(1, self.num_b1_blocks + 1):
            out[self.b1_t1[bi - 1]] = f"B1:{bi}:T1:1"
            for j, c in enumerate(self.b1_t2[bi - 1], start=1):
                out[c] = f"B1:{bi}:T2:{j}"
            for j, c in enumerate(self.b1_t3[bi - 1], start=1):
                out[c] = f"B1:{bi}:T3:{j}"
        for bi, row in enumerate(self.b2, start=1):
            for j, c in enumerate(row, start=1):
                out[c] = f"B2:{bi}:{j}"
        return out


def _split_pairs(rng: random.Random, items: list[str], leave_one: bool):
    """Randomly halve ``items`` and match the halves pairwise.  With
    ``leave_one`` the odd item out is returned separately."""
    idx = list(items)
    rng.shuffle(idx)
    leftover = None
    if leave_one:
        leftover = idx.pop()
    half = len(idx) // 2
    return list(zip(idx[:half], idx[half:])), leftover


def _build_reduction(
    graph: Graph, mu: int, k: int, seed: int, pi: int, parity: str
) -> ReductionInstance:
    if not is_three_regular(graph):
        raise ValueError("the source graph must be 3-regular")
    if not 1 <= k <= graph.num_vertices:
        raise ValueError(
            f"cover bound {k} outside [1, {graph.num_vertices}]"
        )
    if pi < 1:
        raise ValueError("need at least one voter attribute")
    gm, gn = graph.num_vertices, graph.num_edges
    double = 2 if parity == "even" else 1
    rng = random.Random(seed)

    num_vertex_cands = double * gm
    b1_blocks = num_vertex_cands * (mu - 3)
    b2_blocks = double * 2 * gm * gn
    committee_size = double * (k + gm * mu**2 + 2 * gm * gn * mu - 3 * gm * mu)
    rep_bound = double * (1 + gm * mu**2 - 3 * gm * mu + 2 * gm * gn * mu)
    kinds = 2 * gn
    copies = double * gn

    # Candidates, in global index order: vertices, then B1 blocks (T1, T2s,
    # T3s), then B2 blocks.  The tie-break is this order.
    vertex_cands = tuple(f"c{i}" for i in range(1, num_vertex_cands + 1))
    names: list[str] = list(vertex_cands)
    counter = 0

    def next_dummy() -> str:
        nonlocal counter
        counter += 1
        name = f"d{counter}"
        names.append(name)
        return name

    b1_t1: list[str] = []
    b1_t2: list[tuple[str, ...]] = []
    b1_t3: list[tuple[str, ...]] = []
    for _ in range(b1_blocks):
        b1_t1.append(next_dummy())
        b1_t2.append(tuple(next_dummy() for _ in range(mu - 1)))
        b1_t3.append(tuple(next_dummy() for _ in range(mu - 1)))
    b2 = [
        tuple(next_dummy() for _ in range(mu + 1)) for _ in range(b2_blocks)
    ]

    # Groups.  Bounds: 2 for B2 pairs avoiding the block's (mu+1)-th
    # candidate, 1 everywhere else.
    groups: list[Group] = []

    def add_group(name: str, members: Iterable[str], bound: int) -> None:
        groups.append(Group(name, name, frozenset(members), bound))

    edge_groups: list[tuple[str, ...]] = []
    for t, (u, v) in enumerate(graph.edges, start=1):
        add_group(f"e{t}", (vertex_cands[u - 1], vertex_cands[v - 1]), 1)
        if parity == "even":
            add_group(
                f"e{t}b", (vertex_cands[gm + u - 1], vertex_cands[gm + v - 1]), 1
            )
            edge_groups.append((f"e{t}", f"e{t}b"))
        else:
            edge_groups.append((f"e{t}",))

    leftovers: list[str | None] = []
    for bi in range(1, b1_blocks + 1):
        owner = (bi - 1) // (mu - 3)  # 0-based vertex-candidate index
        add_group(f"a{bi}", (vertex_cands[owner], b1_t1[bi - 1]), 1)
        for o, t2 in enumerate(b1_t2[bi - 1], start=1):
            add_group(f"t12_{bi}_{o}", (b1_t1[bi - 1], t2), 1)
        for i, t2 in enumerate(b1_t2[bi - 1], start=1):
            for o, t3 in enumerate(b1_t3[bi - 1], start=1):
                add_group(f"t23_{bi}_{i}_{o}", (t2, t3), 1)
        pairs, leftover = _split_pairs(
            rng, list(b1_t3[bi - 1]), leave_one=(parity == "even")
        )
        for p, (x, y) in enumerate(pairs, start=1):
            add_group(f"t33_{bi}_{p}", (x, y), 1)
        leftovers.append(leftover)
    if parity == "even" and mu > 3:
        # The odd candidate out of each block's T3 pairs up with its twin in
        # the corresponding block of the vertex's second candidate copy.
        per_vertex = mu - 3
        for i in range(gm):
            for t in range(per_vertex):
                bi1 = i * per_vertex + t + 1
                bi2 = (gm + i) * per_vertex + t + 1
                add_group(
                    f"t33x_{bi1}_{bi2}",
                    (leftovers[bi1 - 1], leftovers[bi2 - 1]),
                    1,
                )

    for bi, row in enumerate(b2, start=1):
        for j in range(1, mu + 2):
            for o in range(j + 1, mu + 2):
                bound = 2 if o <= mu else 1
                add_group(f"b2_{bi}_{j}_{o}", (row[j - 1], row[o - 1]), bound)

    # Shared ranking segments, each in global index order.
    u2 = [c for t1, t3 in zip(b1_t1, b1_t3) for c in (t1, *t3)]
    u3 = [c for row in b2 for c in row[:mu]]
    closers = [row[mu] for row in b2]  # the (mu+1)-th candidate of each block
    u7 = [c for row in b1_t2 for c in row]

    # Per-kind segments: the closer of B2 block o belongs to the kind
    # (o mod kinds) + 1; each kind gets a disjoint slice of the closers.
    u4_by_kind: dict[int, list[str]] = {a: [] for a in range(1, kinds + 1)}
    for o, c in enumerate(closers, start=1):
        u4_by_kind[(o % kinds) + 1].append(c)

    voters: list[Voter] = []
    for a in range(1, kinds + 1):
        u, v = graph.edges[(a - 1) // 2]
        tops = [u, v] if parity == "odd" else [u, v, gm + u, gm + v]
        tops.sort(reverse=(a % 2 == 0))  # odd kinds ascend, even kinds descend
        u1 = [vertex_cands[i - 1] for i in tops]
        top_set = set(u1)
        u4 = u4_by_kind[a]
        u4_set = set(u4)
        u5 = [c for c in vertex_cands if c not in top_set]
        u6 = [c for c in closers if c not in u4_set]
        ranking = tuple(u1 + u2 + u3 + u4 + u5 + u6 + u7)
        if len(ranking) != len(names):
            raise AssertionError("generated ranking is not a permutation")
        for b in range(1, copies + 1):
            voters.append(Voter(f"v{a}_{b}", ranking))

    election = Election(
        candidates=tuple(names),
        voters=tuple(voters),
        committee_size=committee_size,
        tiebreak=tuple(names),
    )
    rule = ScoringRule.borda(len(names))

    # Populations keyed, per voter attribute x, by kind and copy residue
    # mod x; every voter lands in exactly pi populations.
    populations: list[Population] = []
    for x in range(1, pi + 1):
        for y in range(1, kinds + 1):
            for r in range(x):
                members = frozenset(
                    f"v{y}_{b}" for b in range(1, copies + 1) if b % x == r
                )
                if members:
                    populations.append(
                        Population(f"vx{x}", f"p{x}_{r}_{y}", members, rep_bound)
                    )

    provisional = DireInstance(
        election=election,
        groups=GroupSystem(tuple(groups)),
        populations=PopulationSystem(tuple(populations)),
        rule=rule,
    )
    with_wp = tuple(
        replace(p, given_committee=population_winning_committee(provisional, p))
        for p in populations
    )
    instance = replace(provisional, populations=PopulationSystem(with_wp))

    return ReductionInstance(
        instance=instance,
        graph=graph,
        mu=mu,
        cover_bound=k,
        seed=seed,
        pi=pi,
        parity=parity,
        vertex_candidates=vertex_cands,
        edge_groups=tuple(edge_groups),
        b1_t1=tuple(b1_t1),
        b1_t2=tuple(b1_t2),
        b1_t3=tuple(b1_t3),
        b2=tuple(b2),
    )


def reduce_odd(
    graph: Graph, mu: int, k: int, seed: int = 0, pi: int = 1
) -> ReductionInstance:
    """Gadget instance for an odd number of candidate attributes (mu >= 3)."""
    if mu < 3 or mu % 2 == 0:
        raise ValueError(f"odd reduction needs odd mu >= 3, got {mu}")
    return _build_reduction(graph, mu, k, seed, pi, "odd")


def reduce_even(
    graph: Graph, mu: int, k: int, seed: int = 0, pi: int = 1
) -> ReductionInstance:
    """Doubled-scale gadget instance for an even number of attributes
    (mu >= 4): two candidates per vertex, twice the blocks and voters, and
    cross-block pairing for each T3 set's odd candidate out."""
    if mu < 4 or mu % 2 == 1:
        raise ValueError(f"even reduction needs even mu >= 4, got {mu}")
    return _build_reduction(graph, mu, k, seed, pi, "even")


def witness_committee(
    rinstance: ReductionInstance, cover: Iterable[int]
) -> tuple[str, ...]:
    """Forward-direction committee for a valid vertex cover: the cover's
    candidates, T1 and all of T3 from every B1 block, and the first mu
    candidates of every B2 block."""
    cover_set = frozenset(cover)
    graph = rinstance.graph
    if len(cover_set) != rinstance.cover_bound:
        raise ValueError(
            f"cover has {len(cover_set)} vertices, expected {rinstance.cover_bound}"
        )
    for v in cover_set:
        if not 1 <= v <= graph.num_vertices:
            raise ValueError(f"unknown vertex {v} in cover")
    if not is_vertex_cover(graph, cover_set):
        bad = next(
            e for e in graph.edges if e[0] not in cover_set and e[1] not in cover_set
        )
        raise ValueError(f"not a vertex cover: edge {bad} is uncovered")

    gm = graph.num_vertices
    members: list[str] = []
    for i in sorted(cover_set):
        members.append(rinstance.vertex_candidates[i - 1])
        if rinstance.parity == "even":
            members.append(rinstance.vertex_candidates[gm + i - 1])
    for t1, t3 in zip(rinstance.b1_t1, rinstance.b1_t3):
        members.append(t1)
        members.extend(t3)
    for row in rinstance.b2:
        members.extend(row[: rinstance.mu])
    return ordered_committee(rinstance.instance.election, members)


def _fresh(base: str, taken: set[str]) -> str:
    if base not in taken:
        return base
    i = 2
    while f"{base}{i}" in taken:
        i += 1
    return f"{base}{i}"


def transform_add_top(instance: DireInstance) -> DireInstance:
    """Add a candidate ranked first by every voter, forced into every
    feasible committee by a new two-group attribute; set every representation
    bound to 2 and grow the committee by one seat.

    The scoring vector gains a strictly larger top entry, which leaves every
    original candidate's score unchanged and makes the new candidate the
    unique positional winner.  Given population committees gain the new
    candidate as their top-ranked member.
    """
    election = instance.election
    top = _fresh("a", set(election.candidates))
    new_election = Election(
        candidates=election.candidates + (top,),
        voters=tuple(
            Voter(v.id, (top,) + v.ranking) for v in election.voters
        ),
        committee_size=election.committee_size + 1,
        tiebreak=election.tiebreak + (top,),
    )
    vector = instance.rule.vector
    new_rule = ScoringRule((vector[0] + 1,) + vector)
    attr = _fresh("aug", {g.attribute for g in instance.groups})
    new_groups = instance.groups.groups + (
        Group(attr, "base", frozenset(election.candidates), 1),
        Group(attr, "top", frozenset((top,)), 1),
    )
    new_populations = tuple(
        replace(
            p,
            lower_bound=2,
            given_committee=(
                (top,) + p.given_committee if p.given_committee is not None else None
            ),
        )
        for p in instance.populations
    )
    return DireInstance(
        election=new_election,
        groups=GroupSystem(new_groups),
        populations=PopulationSystem(new_populations),
        rule=new_rule,
    )


def transform_add_complement_attribute(
    instance: DireInstance, first: Iterable[str], second: Iterable[str]
) -> DireInstance:
    """Add one attribute splitting the candidates into two groups with bound
    1 each, so feasible committees must touch both sides."""
    first = frozenset(first)
    second = frozenset(second)
    candidates = set(instance.election.candidates)
    if (
        not first
        or not second
        or first & second
        or (first | second) != candidates
    ):
        raise ValueError("split is not a bipartition of the candidates")
    attr = _fresh("split", {g.attribute for g in instance.groups})
    new_groups = instance.groups.groups + (
        Group(attr, "first", first, 1),
        Group(attr, "second", second, 1),
    )
    return replace(instance, groups=GroupSystem(new_groups))


@dataclass(frozen=True)
class EquivalenceReport:
    vc_exists: bool
    dire_exists: bool
    agree: bool
    cover_ok: bool | None  # None unless the solver found a committee
    vc_cover: frozenset[int] | None
    recovered_cover: frozenset[int] | None
    solve_result: SolveResult


def verify_equivalence(
    graph: Graph,
    mu: int,
    k: int,
    seed: int = 0,
    pi: int = 1,
    vc_cap: int = DEFAULT_VC_CAP,
) -> EquivalenceReport:
    """Cross-check the reduction: brute-force vertex cover on the graph vs.
    the exact solver on the generated instance, plus the backward check that
    the solver committee's vertex candidates cover the graph."""
    cover = vc_brute(graph, k, cap=vc_cap)
    rinstance = reduce_odd(graph, mu, k, seed, pi)
    result = solve(rinstance.instance)
    vc_exists = cover is not None
    dire_exists = result.status == "optimal"
    recovered = None
    cover_ok = None
    if dire_exists:
        committee = set(result.committee)
        recovered = frozenset(
            i
            for i, c in enumerate(rinstance.vertex_candidates, start=1)
            if c in committee
        )
        cover_ok = len(recovered) <= k and is_vertex_cover(graph, recovered)
    return EquivalenceReport(
        vc_exists=vc_exists,
        dire_exists=dire_exists,
        agree=vc_exists == dire_exists,
        cover_ok=cover_ok,
        vc_cover=cover,
        recovered_cover=recovered,
        solve_result=result,
    )
