import random
from collections import Counter
from itertools import combinations

import pytest

from direkit import (
    CapExceededError,
    Graph,
    all_candidate_scores,
    committee_score,
    enumerate_dire,
    gen_3regular,
    is_dire,
    is_three_regular,
    is_vertex_cover,
    min_vertex_cover_size,
    propagate,
    reduce_even,
    reduce_odd,
    solve,
    transform_add_complement_attribute,
    transform_add_top,
    validate,
    vc_brute,
    verify_equivalence,
    witness_committee,
)
from helpers import PETERSEN, random_instance

K4 = Graph(4, ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)))


def group_degree(instance) -> Counter:
    degree = Counter()
    for g in instance.groups:
        for c in g.members:
            degree[c] += 1
    return degree


class TestGraph:
    def test_rejects_self_loop(self):
        with pytest.raises(ValueError, match="self-loop"):
            Graph(3, ((1, 1),))

    def test_rejects_duplicate_edge(self):
        with pytest.raises(ValueError, match="duplicate"):
            Graph(3, ((1, 2), (2, 1)))

    def test_rejects_unknown_vertex(self):
        with pytest.raises(ValueError, match="unknown vertex"):
            Graph(3, ((1, 5),))

    def test_three_regularity(self):
        assert is_three_regular(K4)
        assert is_three_regular(PETERSEN)
        assert not is_three_regular(Graph(4, ((1, 2), (2, 3), (3, 4))))


class TestGen3Regular:
    def test_four_vertices_is_k4(self):
        for seed in range(5):
            g = gen_3regular(4, seed=seed)
            assert sorted(g.edges) == sorted(K4.edges)

    def test_output_is_three_regular(self):
        for seed in range(10):
            assert is_three_regular(gen_3regular(10, seed=seed))

    def test_deterministic(self):
        assert gen_3regular(10, seed=42) == gen_3regular(10, seed=42)

    def test_rejects_odd_or_small(self):
        with pytest.raises(ValueError):
            gen_3regular(5)
        with pytest.raises(ValueError):
            gen_3regular(2)


class TestVertexCoverOracle:
    def test_k4_has_cover_of_three(self):
        cover = vc_brute(K4, 3)
        assert cover is not None and len(cover) <= 3
        assert is_vertex_cover(K4, cover)

    def test_k4_has_no_cover_of_two(self):
        assert vc_brute(K4, 2) is None
        assert min_vertex_cover_size(K4) == 3

    def test_petersen_minimum_is_six(self):
        assert vc_brute(PETERSEN, 5) is None
        cover = vc_brute(PETERSEN, 6)
        assert cover is not None and len(cover) == 6
        assert is_vertex_cover(PETERSEN, cover)
        assert min_vertex_cover_size(PETERSEN) == 6

    def test_cap(self):
        big = Graph(26, ((1, 2),))
        with pytest.raises(CapExceededError):
            vc_brute(big, 3)


class TestReduceOdd:
    def test_k4_mu3_counts(self):
        r = reduce_odd(K4, 3, 3)
        e = r.instance.election
        assert e.num_candidates == 196
        assert r.dummy_count == 192
        assert r.num_b1_blocks == 0
        assert r.num_b2_blocks == 48
        assert e.committee_size == 3 + 144
        assert e.num_voters == 72
        assert all(p.lower_bound == 145 for p in r.instance.populations)

    def test_k4_mu5_counts(self):
        gm, gn, mu = 4, 6, 5
        r = reduce_odd(K4, mu, 3)
        expected_dummies = (
            2 * mu**2 * gm - 7 * mu * gm + 2 * mu * gm * gn + 2 * gm * gn + 3 * gm
        )
        assert r.dummy_count == expected_dummies == 360
        assert r.instance.election.num_candidates == 364
        assert r.instance.election.committee_size == 3 + 280
        assert r.num_b1_blocks == gm * (mu - 3)

    def test_every_candidate_in_exactly_mu_groups(self):
        for mu in (3, 5):
            r = reduce_odd(K4, mu, 3)
            degree = group_degree(r.instance)
            assert all(
                degree[c] == mu for c in r.instance.election.candidates
            )

    def test_rankings_are_permutations(self):
        r = reduce_odd(K4, 3, 3)
        candidates = set(r.instance.election.candidates)
        for v in r.instance.election.voters:
            assert len(v.ranking) == len(candidates)
            assert set(v.ranking) == candidates

    def test_validates_clean_in_relaxed_mode(self):
        for mu in (3, 5):
            r = reduce_odd(K4, mu, 2)
            report = validate(r.instance, "relaxed")
            assert report.ok and not report.warnings

    def test_shared_and_kind_specific_segments(self):
        gm, gn, mu = 4, 6, 3
        r = reduce_odd(K4, mu, 3)
        u2 = gm * mu**2 - 3 * gm * mu
        u3 = 2 * gm * gn * mu
        copies = gn
        kinds = 2 * gn
        rankings = [
            r.instance.election.voters[(a - 1) * copies].ranking
            for a in range(1, kinds + 1)
        ]
        shared = rankings[0][2 : 2 + u2 + u3]
        assert all(rk[2 : 2 + u2 + u3] == shared for rk in rankings)
        u7_len = u2 - (gm * mu - 3 * gm)
        if u7_len:
            tail = rankings[0][-u7_len:]
            assert all(rk[-u7_len:] == tail for rk in rankings)
        # U4 slices of distinct kinds are pairwise disjoint.
        u4s = [set(rk[2 + u2 + u3 : 2 + u2 + u3 + gm]) for rk in rankings]
        for i in range(len(u4s)):
            for j in range(i + 1, len(u4s)):
                assert not (u4s[i] & u4s[j])

    def test_top_two_alternate_per_edge(self):
        r = reduce_odd(K4, 3, 3)
        copies = K4.num_edges
        for t, (u, v) in enumerate(K4.edges, start=1):
            lo = r.vertex_candidates[min(u, v) - 1]
            hi = r.vertex_candidates[max(u, v) - 1]
            odd_kind = r.instance.election.voters[(2 * t - 2) * copies]
            even_kind = r.instance.election.voters[(2 * t - 1) * copies]
            assert odd_kind.ranking[:2] == (lo, hi)
            assert even_kind.ranking[:2] == (hi, lo)

    def test_deterministic_for_seed(self):
        assert reduce_odd(K4, 5, 3, seed=9) == reduce_odd(K4, 5, 3, seed=9)
        a = reduce_odd(K4, 5, 3, seed=1)
        b = reduce_odd(K4, 5, 3, seed=2)
        assert a.instance.election == b.instance.election  # rankings unaffected
        assert a != b  # T3 pairing differs

    def test_preconditions(self):
        with pytest.raises(ValueError, match="odd"):
            reduce_odd(K4, 4, 2)
        with pytest.raises(ValueError, match="odd"):
            reduce_odd(K4, 1, 2)
        with pytest.raises(ValueError, match="3-regular"):
            reduce_odd(Graph(4, ((1, 2), (2, 3), (3, 4))), 3, 2)
        with pytest.raises(ValueError, match="cover bound"):
            reduce_odd(K4, 3, 5)

    def test_multiple_voter_attributes(self):
        r = reduce_odd(K4, 3, 3, pi=2)
        per_voter = Counter()
        for p in r.instance.populations:
            for vid in p.members:
                per_voter[vid] += 1
        assert all(count == 2 for count in per_voter.values())
        assert validate(r.instance, "relaxed").ok


class TestReduceEven:
    def test_k4_mu4_structure(self):
        gm, gn, mu, k = 4, 6, 4, 3
        r = reduce_even(K4, mu, k)
        e = r.instance.election
        assert len(r.vertex_candidates) == 2 * gm
        base_dummies = (
            2 * mu**2 * gm - 7 * mu * gm + 2 * mu * gm * gn + 2 * gm * gn + 3 * gm
        )
        assert r.dummy_count == 2 * base_dummies
        assert e.committee_size == 2 * (
            k + gm * mu**2 + 2 * gm * gn * mu - 3 * gm * mu
        )
        assert e.num_voters == 4 * gn**2
        rep = 2 * (1 + gm * mu**2 - 3 * gm * mu + 2 * gm * gn * mu)
        assert all(p.lower_bound == rep for p in r.instance.populations)

    def test_group_degree_including_cross_block_t3(self):
        r = reduce_even(K4, 4, 3)
        degree = group_degree(r.instance)
        assert all(degree[c] == 4 for c in r.instance.election.candidates)

    def test_four_top_candidates_per_voter(self):
        gm = 4
        r = reduce_even(K4, 4, 3)
        v = r.instance.election.voters[0]
        u, w = K4.edges[0]
        expected = {
            r.vertex_candidates[u - 1],
            r.vertex_candidates[w - 1],
            r.vertex_candidates[gm + u - 1],
            r.vertex_candidates[gm + w - 1],
        }
        assert set(v.ranking[:4]) == expected

    def test_validates_clean_in_relaxed_mode(self):
        report = validate(reduce_even(K4, 4, 2).instance, "relaxed")
        assert report.ok and not report.warnings

    def test_preconditions(self):
        with pytest.raises(ValueError, match="even"):
            reduce_even(K4, 3, 2)
        with pytest.raises(ValueError, match="even"):
            reduce_even(K4, 2, 2)


class TestWitness:
    def test_witness_feasible_at_target_size(self):
        for mu in (3, 5):
            r = reduce_odd(K4, mu, 3)
            committee = witness_committee(r, (1, 2, 3))
            assert len(committee) == r.instance.election.committee_size
            assert is_dire(r.instance, committee).feasible

    def test_witness_even_parity(self):
        r = reduce_even(K4, 4, 3)
        committee = witness_committee(r, (1, 2, 4))
        assert len(committee) == r.instance.election.committee_size
        assert is_dire(r.instance, committee).feasible

    def test_dropping_forced_dummy_breaks_bound_two_group(self):
        r = reduce_odd(K4, 3, 3)
        committee = list(witness_committee(r, (1, 2, 3)))
        forced = r.b2[0][0]  # in a bound-2 pair group
        spare = r.b2[0][r.mu]  # the block's closer, in bound-1 groups only
        committee[committee.index(forced)] = spare
        report = is_dire(r.instance, committee)
        assert not report.feasible
        assert any(v.required == 2 for v in report.diversity_violations)

    def test_invalid_cover_rejected(self):
        r = reduce_odd(K4, 3, 3)
        with pytest.raises(ValueError, match="expected 3"):
            witness_committee(r, (1, 2))
        with pytest.raises(ValueError, match="unknown vertex"):
            witness_committee(r, (1, 2, 9))

    def test_non_cover_rejected(self):
        g = gen_3regular(6, seed=0)
        k = min_vertex_cover_size(g)
        r = reduce_odd(g, 3, k)
        non_cover = next(
            combo
            for combo in combinations(range(1, 7), k)
            if not is_vertex_cover(g, combo)
        )
        with pytest.raises(ValueError, match="uncovered"):
            witness_committee(r, non_cover)


class TestTransforms:
    def test_add_top_shapes(self):
        rng = random.Random(71)
        instance = random_instance(rng, max_candidates=6)
        out = transform_add_top(instance)
        assert out.election.num_candidates == instance.election.num_candidates + 1
        assert out.election.committee_size == instance.election.committee_size + 1
        top = out.election.candidates[-1]
        for v in out.election.voters:
            assert v.ranking[0] == top
        assert all(p.lower_bound == 2 for p in out.populations)
        assert validate(out, "relaxed").ok

    def test_add_top_forces_new_candidate(self):
        rng = random.Random(73)
        found_feasible = 0
        for _ in range(30):
            instance = random_instance(rng, max_candidates=6)
            out = transform_add_top(instance)
            top = out.election.candidates[-1]
            feasible = enumerate_dire(out)
            found_feasible += bool(feasible)
            for committee, _ in feasible:
                assert top in committee
        assert found_feasible > 0

    def test_add_top_preserves_old_scores(self):
        rng = random.Random(79)
        instance = random_instance(rng, max_candidates=6)
        out = transform_add_top(instance)
        before = all_candidate_scores(instance)
        after = all_candidate_scores(out)
        for c in instance.election.candidates:
            assert before[c] == after[c]
        top = out.election.candidates[-1]
        assert after[top] == max(after.values())

    def test_complement_attribute(self):
        rng = random.Random(83)
        instance = random_instance(rng, max_candidates=6)
        candidates = instance.election.candidates
        left = frozenset(candidates[:1])
        right = frozenset(candidates[1:])
        out = transform_add_complement_attribute(instance, left, right)
        attrs_before = {g.attribute for g in instance.groups}
        attrs_after = {g.attribute for g in out.groups}
        assert len(attrs_after) == len(attrs_before) + 1
        for committee, _ in enumerate_dire(out):
            assert set(committee) & left and set(committee) & right

    def test_complement_attribute_rejects_bad_split(self):
        rng = random.Random(89)
        instance = random_instance(rng, max_candidates=6)
        candidates = instance.election.candidates
        with pytest.raises(ValueError, match="bipartition"):
            transform_add_complement_attribute(instance, candidates, ())
        with pytest.raises(ValueError, match="bipartition"):
            transform_add_complement_attribute(
                instance, candidates[:2], candidates[1:]
            )

    def test_stacking_reproduces_two_attribute_shape(self):
        # Add the universal top candidate, then split originals vs dummies.
        rng = random.Random(97)
        instance = random_instance(rng, max_candidates=5)
        lifted = transform_add_top(instance)
        original = frozenset(instance.election.candidates)
        rest = frozenset(lifted.election.candidates) - original
        out = transform_add_complement_attribute(lifted, original, rest)
        assert len({g.attribute for g in out.groups}) == len(
            {g.attribute for g in instance.groups}
        ) + 2
        for committee, _ in enumerate_dire(out):
            assert set(committee) & original and set(committee) & rest


class TestEquivalence:
    def test_k4_yes_case(self):
        report = verify_equivalence(K4, 3, 3)
        assert report.vc_exists and report.dire_exists and report.agree
        assert report.cover_ok
        assert is_vertex_cover(K4, report.recovered_cover)

    def test_k4_no_case(self):
        report = verify_equivalence(K4, 3, 2)
        assert not report.vc_exists and not report.dire_exists
        assert report.agree and report.cover_ok is None

    def test_propagation_reduces_to_vertex_candidates(self):
        r = reduce_odd(K4, 3, 3)
        prop = propagate(r.instance)
        expected_forced = {c for row in r.b2 for c in row[: r.mu]}
        assert prop.forced == expected_forced
        assert len(prop.forced) == 144
        remaining = set().union(*(g.members for g in prop.unmet_groups))
        assert remaining - prop.forced == set(r.vertex_candidates)

    def test_witness_scores_match_solver_optimum_on_k4(self):
        r = reduce_odd(K4, 3, 3)
        result = solve(r.instance)
        for cover in ((1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)):
            witness = witness_committee(r, cover)
            score = committee_score(r.instance, witness)
            assert score <= result.score
        # K4 is vertex-transitive: every cover's witness is optimal.
        best = committee_score(r.instance, witness_committee(r, (1, 2, 3)))
        assert best == result.score
