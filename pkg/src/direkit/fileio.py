"""Text formats for elections, graphs, and reduction provenance maps.

Election files are line-oriented UTF-8; ``#`` starts a comment and tokens
are whitespace-separated::

    election <m> <n> <k>
    candidate <name>                      # x m, order defines index 1..m
    tiebreak <name> ... <name>            # optional, exactly m names
    rule borda | rule vector <s1> ... <sm>
    cattr <attr> <group> <lb> <name> ...  # one candidate group per line
    vattr <attr> <pop> <lb> <voter> ...   # one voter population per line
    wp <attr> <pop> <name> ...            # optional given committee, k names
    voter <id> <name1> ... <namem>        # x n, most preferred first

Lines may appear in any order after the header.  Structural problems
(unknown keywords, bad token counts, non-integer fields) raise
:class:`ParseError` with the line number; semantic problems (broken
permutations, out-of-range bounds, unknown names in groups) parse fine and
are reported by :func:`direkit.core.validate`.

Graph files: ``graph <m> <n>`` then ``edge <u> <v>`` per edge, 1-based.

Writing then re-reading any instance reproduces it exactly (given committees
keep their order; it is the population's ranking of its committee).
"""

from __future__ import annotations

from pathlib import Path

from .core import (
    DireInstance,
    Election,
    Group,
    GroupSystem,
    Population,
    PopulationSystem,
    ScoringRule,
    Voter,
)
from .errors import ParseError
from .reduction import Graph, ReductionInstance


def _meaningful_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _int(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{what} {token!r} is not an integer", lineno) from None


def parse_election(text: str) -> DireInstance:
    lines = list(_meaningful_lines(text))
    if not lines:
        raise ParseError("empty election file")
    lineno, header = lines[0]
    if len(header) != 4 or header[0] != "election":
        raise ParseError("expected header `election <m> <n> <k>`", lineno)
    m = _int(header[1], lineno, "candidate count")
    n = _int(header[2], lineno, "voter count")
    k = _int(header[3], lineno, "committee size")

    candidates: list[str] = []
    tiebreak: tuple[str, ...] | None = None
    rule: ScoringRule | None = None
    groups: list[Group] = []
    pop_rows: list[tuple[int, str, str, int, tuple[str, ...]]] = []
    wp_rows: list[tuple[int, str, str, tuple[str, ...]]] = []
    voters: list[Voter] = []

    for lineno, tokens in lines[1:]:
        kind, rest = tokens[0], tokens[1:]
        if kind == "candidate":
            if len(rest) != 1:
                raise ParseError("expected `candidate <name>`", lineno)
            candidates.append(rest[0])
        elif kind == "tiebreak":
            if tiebreak is not None:
                raise ParseError("duplicate tiebreak line", lineno)
            if len(rest) != m:
                raise ParseError(
                    f"tiebreak has {len(rest)} names, expected {m}", lineno
                )
            tiebreak = tuple(rest)
        elif kind == "rule":
            if rule is not None:
                raise ParseError("duplicate rule line", lineno)
            if rest and rest[0] == "borda":
                if len(rest) != 1:
                    raise ParseError("expected `rule borda`", lineno)
                rule = ScoringRule.borda(m)
            elif rest and rest[0] == "vector":
                if len(rest) != m + 1:
                    raise ParseError(
                        f"rule vector has {len(rest) - 1} entries, expected {m}",
                        lineno,
                    )
                rule = ScoringRule(
                    tuple(_int(t, lineno, "score") for t in rest[1:])
                )
            else:
                raise ParseError(
                    "expected `rule borda` or `rule vector <s1> ... <sm>`", lineno
                )
        elif kind == "cattr":
            if len(rest) < 4:
                raise ParseError(
                    "expected `cattr <attr> <group> <lb> <name> ...`", lineno
                )
            bound = _int(rest[2], lineno, "lower bound")
            groups.append(Group(rest[0], rest[1], frozenset(rest[3:]), bound))
        elif kind == "vattr":
            if len(rest) < 4:
                raise ParseError(
                    "expected `vattr <attr> <pop> <lb> <voter> ...`", lineno
                )
            bound = _int(rest[2], lineno, "lower bound")
            pop_rows.append((lineno, rest[0], rest[1], bound, tuple(rest[3:])))
        elif kind == "wp":
            if len(rest) < 3:
                raise ParseError("expected `wp <attr> <pop> <name> ...`", lineno)
            wp_rows.append((lineno, rest[0], rest[1], tuple(rest[2:])))
        elif kind == "voter":
            if len(rest) < 2:
                raise ParseError("expected `voter <id> <name1> ...`", lineno)
            voters.append(Voter(rest[0], tuple(rest[1:])))
        else:
            raise ParseError(f"unknown line keyword {kind!r}", lineno)

    if len(candidates) != m:
        raise ParseError(
            f"header declares {m} candidates but {len(candidates)} were listed"
        )
    if len(voters) != n:
        raise ParseError(
            f"header declares {n} voters but {len(voters)} were listed"
        )
    if rule is None:
        raise ParseError("missing `rule` line")

    given: dict[tuple[str, str], tuple[str, ...]] = {}
    declared = {(attr, name) for _, attr, name, _, _ in pop_rows}
    for lineno, attr, name, committee in wp_rows:
        if (attr, name) not in declared:
            raise ParseError(
                f"wp references undeclared population {attr}/{name}", lineno
            )
        if (attr, name) in given:
            raise ParseError(f"duplicate wp line for {attr}/{name}", lineno)
        given[(attr, name)] = committee

    populations = tuple(
        Population(attr, name, frozenset(members), bound, given.get((attr, name)))
        for _, attr, name, bound, members in pop_rows
    )
    election = Election(
        candidates=tuple(candidates),
        voters=tuple(voters),
        committee_size=k,
        tiebreak=tiebreak or tuple(candidates),
    )
    return DireInstance(
        election=election,
        groups=GroupSystem(tuple(groups)),
        populations=PopulationSystem(populations),
        rule=rule,
    )


def _token(name: str) -> str:
    if not name or any(ch.isspace() for ch in name) or "#" in name:
        raise ValueError(f"name {name!r} cannot be written as a file token")
    return name


def write_election(instance: DireInstance) -> str:
    """Canonical text form; parsing it back reproduces the instance."""
    election = instance.election
    index = {c: i for i, c in enumerate(election.candidates)}
    voter_index = {v.id: i for i, v in enumerate(election.voters)}
    out = [
        f"election {election.num_candidates} {election.num_voters} "
        f"{election.committee_size}"
    ]
    out.extend(f"candidate {_token(c)}" for c in election.candidates)
    out.append("tiebreak " + " ".join(_token(c) for c in election.tiebreak))
    if instance.rule.is_borda:
        out.append("rule borda")
    else:
        out.append("rule vector " + " ".join(str(s) for s in instance.rule.vector))
    for g in instance.groups:
        members = sorted(g.members, key=lambda c: index.get(c, len(index)))
        out.append(
            f"cattr {_token(g.attribute)} {_token(g.name)} {g.lower_bound} "
            + " ".join(_token(c) for c in members)
        )
    for p in instance.populations:
        members = sorted(p.members, key=lambda v: voter_index.get(v, len(voter_index)))
        out.append(
            f"vattr {_token(p.attribute)} {_token(p.name)} {p.lower_bound} "
            + " ".join(_token(v) for v in members)
        )
    for p in instance.populations:
        if p.given_committee is not None:
            out.append(
                f"wp {_token(p.attribute)} {_token(p.name)} "
                + " ".join(_token(c) for c in p.given_committee)
            )
    for v in election.voters:
        out.append(f"voter {_token(v.id)} " + " ".join(_token(c) for c in v.ranking))
    return "\n".join(out) + "\n"


def load_election(path) -> DireInstance:
    return parse_election(Path(path).read_text(encoding="utf-8"))


def save_election(instance: DireInstance, path) -> None:
    Path(path).write_text(write_election(instance), encoding="utf-8")


def parse_graph(text: str) -> Graph:
    lines = list(_meaningful_lines(text))
    if not lines:
        raise ParseError("empty graph file")
    lineno, header = lines[0]
    if len(header) != 3 or header[0] != "graph":
        raise ParseError("expected header `graph <m> <n>`", lineno)
    num_vertices = _int(header[1], lineno, "vertex count")
    num_edges = _int(header[2], lineno, "edge count")
    edges: list[tuple[int, int]] = []
    for lineno, tokens in lines[1:]:
        if tokens[0] != "edge" or len(tokens) != 3:
            raise ParseError("expected `edge <u> <v>`", lineno)
        u = _int(tokens[1], lineno, "vertex")
        v = _int(tokens[2], lineno, "vertex")
        edges.append((u, v))
    if len(edges) != num_edges:
        raise ParseError(
            f"header declares {num_edges} edges but {len(edges)} were listed"
        )
    try:
        return Graph(num_vertices, tuple(edges))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def write_graph(graph: Graph) -> str:
    out = [f"graph {graph.num_vertices} {graph.num_edges}"]
    out.extend(f"edge {u} {v}" for u, v in graph.edges)
    return "\n".join(out) + "\n"


def load_graph(path) -> Graph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def save_graph(graph: Graph, path) -> None:
    Path(path).write_text(write_graph(graph), encoding="utf-8")


def write_reduction_map(rinstance: ReductionInstance) -> str:
    """Provenance sidecar: one `map <candidate> <role>` line per candidate."""
    roles = rinstance.roles()
    out = [
        f"map {c} {roles[c]}" for c in rinstance.instance.election.candidates
    ]
    return "\n".join(out) + "\n"


def save_reduction_map(rinstance: ReductionInstance, path) -> None:
    Path(path).write_text(write_reduction_map(rinstance), encoding="utf-8")
