"""Command-line surface: validate, solve, score, fairness, reduce, verify,
graph, vc.

Output is machine-parseable, one record per line as `key value ...` pairs.
Exit codes: 0 success (for `verify`: the equivalence holds), 1 no feasible
committee / equivalence failure, 2 parse error, 3 invalid instance or
problem structure, 4 enumeration cap exceeded.  The environment variable
``DIRE_ORACLE_CAP`` overrides the default enumeration caps.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import fileio
from .core import validate
from .errors import CapExceededError, CommitteeSizeError, ParseError
from .fairness import (
    is_fec,
    is_uec,
    is_wec,
    max_fec_envy,
    population_utilities,
    uec_spread,
    wec_spread,
)
from .reduction import (
    DEFAULT_VC_CAP,
    gen_3regular,
    min_vertex_cover_size,
    reduce_even,
    reduce_odd,
    vc_brute,
    verify_equivalence,
)
from .scoring import all_candidate_scores, committee_score
from .solver import DEFAULT_ORACLE_CAP, solve, solve_brute

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_CAP = 4


def _emit(*fields) -> None:
    print(" ".join(str(f) for f in fields))


def _oracle_cap(args) -> int:
    if getattr(args, "cap", None) is not None:
        return args.cap
    env = os.environ.get("DIRE_ORACLE_CAP")
    return int(env) if env else DEFAULT_ORACLE_CAP


def _vc_cap() -> int:
    env = os.environ.get("DIRE_ORACLE_CAP")
    return int(env) if env else DEFAULT_VC_CAP


def _load_instance(path: str, mode: str = "relaxed"):
    """Parse and validate; returns (instance, exit_code_or_None)."""
    try:
        instance = fileio.load_election(path)
    except ParseError as exc:
        _emit("status", "parse_error")
        _emit("error", exc)
        return None, EXIT_PARSE
    report = validate(instance, mode)
    if not report.ok:
        _emit("status", "invalid")
        for e in report.errors:
            _emit("error", e)
        return None, EXIT_INVALID
    return instance, None


def _parse_committee(instance, text: str):
    members = tuple(text.replace(",", " ").split())
    unknown = set(members) - set(instance.election.candidates)
    if unknown:
        raise CommitteeSizeError(f"unknown candidate {sorted(unknown)[0]!r}")
    if len(set(members)) != instance.election.committee_size:
        raise CommitteeSizeError(
            f"committee has {len(set(members))} members, expected "
            f"{instance.election.committee_size}"
        )
    return members


def cmd_validate(args) -> int:
    try:
        instance = fileio.load_election(args.election)
    except ParseError as exc:
        _emit("status", "parse_error")
        _emit("error", exc)
        return EXIT_PARSE
    report = validate(instance, args.mode)
    _emit("status", "valid" if report.ok else "invalid")
    for e in report.errors:
        _emit("error", e)
    for w in report.warnings:
        _emit("warning", w)
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_solve(args) -> int:
    instance, code = _load_instance(args.election)
    if instance is None:
        return code
    try:
        if args.oracle:
            result = solve_brute(instance, cap=_oracle_cap(args))
        else:
            result = solve(instance)
    except CapExceededError as exc:
        _emit("status", "cap_exceeded")
        _emit("error", exc)
        return EXIT_CAP
    _emit("status", result.status)
    if result.status == "optimal":
        _emit("committee", *result.committee)
        _emit("score", result.score)
    _emit("nodes", result.nodes_explored)
    _emit("forced", len(result.forced))
    return EXIT_OK if result.status == "optimal" else EXIT_INFEASIBLE


def cmd_score(args) -> int:
    instance, code = _load_instance(args.election)
    if instance is None:
        return code
    scores = all_candidate_scores(instance)
    for c in instance.election.candidates:
        _emit("candidate", c, scores[c])
    if args.committee:
        try:
            members = _parse_committee(instance, args.committee)
        except CommitteeSizeError as exc:
            _emit("error", exc)
            return EXIT_INVALID
        _emit("committee", *members)
        _emit("committee_score", committee_score(instance, members))
    return EXIT_OK


def _fraction_str(value: Fraction | None) -> str:
    if value is None:
        return "undefined"
    return f"{value.numerator}/{value.denominator}" if value.denominator != 1 else str(value.numerator)


def cmd_fairness(args) -> int:
    instance, code = _load_instance(args.election)
    if instance is None:
        return code
    for text in args.committee:
        try:
            members = _parse_committee(instance, text)
        except CommitteeSizeError as exc:
            _emit("error", exc)
            return EXIT_INVALID
        _emit("committee", *members)
        for record in population_utilities(instance, members):
            _emit(
                "population",
                record.attribute,
                record.population,
                "utility",
                record.utility,
                "weighted",
                _fraction_str(record.weighted_utility),
                "favorite",
                record.favorite_rank if record.favorite_rank is not None else "none",
            )
        worst = max_fec_envy(instance, members)
        _emit("fec_max", "unbounded" if worst is None else worst)
        _emit("uec_spread", uec_spread(instance, members))
        weighted_defined = all(p.lower_bound >= 1 for p in instance.populations)
        if weighted_defined:
            _emit("wec_spread", _fraction_str(wec_spread(instance, members)))
        else:
            _emit("wec_spread", "undefined")
        _emit("is_fec", str(is_fec(instance, members)).lower())
        _emit("is_uec", str(is_uec(instance, members)).lower())
        _emit(
            "is_wec",
            str(is_wec(instance, members)).lower() if weighted_defined else "undefined",
        )
    return EXIT_OK


def cmd_reduce(args) -> int:
    try:
        graph = fileio.load_graph(args.graph)
    except ParseError as exc:
        _emit("status", "parse_error")
        _emit("error", exc)
        return EXIT_PARSE
    try:
        build = reduce_odd if args.mu % 2 == 1 else reduce_even
        rinstance = build(graph, args.mu, args.k, seed=args.seed, pi=args.pi)
    except ValueError as exc:
        _emit("status", "invalid")
        _emit("error", exc)
        return EXIT_INVALID
    election = rinstance.instance.election
    _emit("candidates", election.num_candidates)
    _emit("dummies", rinstance.dummy_count)
    _emit("voters", election.num_voters)
    _emit("committee_size", election.committee_size)
    _emit("groups", len(rinstance.instance.groups))
    _emit("populations", len(rinstance.instance.populations))
    election_path = f"{args.out}.election"
    map_path = f"{args.out}.map"
    fileio.save_election(rinstance.instance, election_path)
    fileio.save_reduction_map(rinstance, map_path)
    _emit("wrote", election_path)
    _emit("wrote", map_path)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        graph = fileio.load_graph(args.graph)
    except ParseError as exc:
        _emit("status", "parse_error")
        _emit("error", exc)
        return EXIT_PARSE
    try:
        report = verify_equivalence(
            graph, args.mu, args.k, seed=args.seed, vc_cap=_vc_cap()
        )
    except ValueError as exc:
        _emit("status", "invalid")
        _emit("error", exc)
        return EXIT_INVALID
    except CapExceededError as exc:
        _emit("status", "cap_exceeded")
        _emit("error", exc)
        return EXIT_CAP
    _emit("vc_exists", str(report.vc_exists).lower())
    _emit("dire_exists", str(report.dire_exists).lower())
    _emit("agree", str(report.agree).lower())
    _emit(
        "cover_ok",
        "none" if report.cover_ok is None else str(report.cover_ok).lower(),
    )
    return EXIT_OK if report.agree else EXIT_INFEASIBLE


def cmd_graph(args) -> int:
    try:
        graph = gen_3regular(args.vertices, seed=args.seed)
    except ValueError as exc:
        _emit("status", "invalid")
        _emit("error", exc)
        return EXIT_INVALID
    text = fileio.write_graph(graph)
    if args.out:
        fileio.save_graph(graph, args.out)
        _emit("vertices", graph.num_vertices)
        _emit("edges", graph.num_edges)
        _emit("wrote", args.out)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_vc(args) -> int:
    try:
        graph = fileio.load_graph(args.graph)
    except ParseError as exc:
        _emit("status", "parse_error")
        _emit("error", exc)
        return EXIT_PARSE
    try:
        cover = vc_brute(graph, args.k, cap=_vc_cap())
        minimum = min_vertex_cover_size(graph, cap=_vc_cap())
    except CapExceededError as exc:
        _emit("status", "cap_exceeded")
        _emit("error", exc)
        return EXIT_CAP
    if cover is None:
        _emit("cover", "none")
    else:
        _emit("cover", *sorted(cover))
    _emit("minimum", minimum)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="direkit",
        description=(
            "Exact toolkit for diverse + representative committee selection: "
            "solving, fairness audits, and vertex-cover gadget generation."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check an election file's invariants")
    p.add_argument("election")
    p.add_argument("--mode", choices=("strict", "relaxed"), default="strict")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("solve", help="find the best feasible committee")
    p.add_argument("election")
    p.add_argument("--oracle", action="store_true", help="force brute-force enumeration")
    p.add_argument("--cap", type=int, default=None, help="enumeration cap for --oracle")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("score", help="print candidate scores")
    p.add_argument("election")
    p.add_argument("--committee", default=None, help="comma-separated members")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("fairness", help="audit committees for envy-freeness")
    p.add_argument("election")
    p.add_argument(
        "--committee",
        action="append",
        required=True,
        help="comma-separated members; repeatable",
    )
    p.set_defaults(func=cmd_fairness)

    p = sub.add_parser("reduce", help="generate a gadget election from a graph")
    p.add_argument("graph")
    p.add_argument("--mu", type=int, required=True, help="number of candidate attributes")
    p.add_argument("--k", type=int, required=True, help="vertex cover bound")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pi", type=int, default=1, help="number of voter attributes")
    p.add_argument("--out", required=True, help="output prefix (.election, .map)")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="check cover/committee equivalence on a graph")
    p.add_argument("graph")
    p.add_argument("--mu", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("graph", help="sample a 3-regular graph")
    p.add_argument("--vertices", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("vc", help="brute-force vertex cover")
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_vc)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
