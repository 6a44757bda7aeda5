"""Relation core: closure, protocol step, alignment, role validation."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pairvote.relations import (
    GeneralWill,
    InvalidRelationError,
    ProtoRanking,
    ProtocolViolationError,
    Ranking,
    Relation,
    Tournament,
    adjacent_pairs,
    alignment_subset_check,
    all_rankings,
    all_tournaments,
    chain_ranking,
    has_cycle,
    is_more_aligned,
    order_interval,
    record_vote,
    relabel,
    tournament_from_code,
    transitive_closure,
)
from pairvote.textio import dump_ranking, dump_relation, parse_ranking, parse_tournament

from sample_wills import chorded4, cycle3


def closure_oracle(rel: Relation) -> Relation:
    """Independent reachability closure: per-node graph search."""
    n = rel.n
    rows = []
    for start in range(1, n + 1):
        reach = set()
        stack = [y for x, y in rel.pairs() if x == start]
        while stack:
            y = stack.pop()
            if y in reach:
                continue
            reach.add(y)
            stack.extend(z for w, z in rel.pairs() if w == y)
        rows.append(sum(1 << (y - 1) for y in reach))
    return Relation(n, tuple(rows))


def all_relations(n):
    for bits in range(1 << (n * n)):
        rows = tuple((bits >> (i * n)) & ((1 << n) - 1) for i in range(n))
        yield Relation(n, rows)


class TestTransitiveClosure:
    def test_empty(self):
        assert transitive_closure(Relation.empty(3)) == Relation.empty(3)

    def test_single_chain(self):
        rel = Relation.from_pairs(3, [(1, 2), (2, 3)])
        assert set(transitive_closure(rel).pairs()) == {(1, 2), (2, 3), (1, 3)}

    def test_cycle_closure_contains_self_loops(self):
        rel = Relation.from_pairs(3, [(1, 2), (2, 3), (3, 1)])
        closed = transitive_closure(rel)
        assert closed == closure_oracle(rel)
        assert all(closed.has(x, x) for x in (1, 2, 3))
        assert closed.count() == 9

    def test_exhaustive_n3_matches_oracle_idempotent_monotone(self):
        rels = list(all_relations(3))
        closed = [transitive_closure(r) for r in rels]
        for r, c in zip(rels, closed):
            assert c == closure_oracle(r)
            assert transitive_closure(c) == c
            assert c.contains(r)
        # monotone: adding one edge never removes closure edges
        for r, c in zip(rels, closed):
            for x, y in [(1, 2), (2, 3), (3, 1)]:
                bigger = Relation.from_pairs(3, r.pairs() + [(x, y)])
                assert transitive_closure(bigger).contains(c)

    @settings(max_examples=150, deadline=None)
    @given(st.integers(4, 5), st.data())
    def test_randomized_n45(self, n, data):
        bits = data.draw(st.integers(0, (1 << (n * n)) - 1))
        extra = data.draw(st.integers(0, (1 << (n * n)) - 1))
        rows = tuple((bits >> (i * n)) & ((1 << n) - 1) for i in range(n))
        rel = Relation(n, rows)
        closed = transitive_closure(rel)
        assert closed == closure_oracle(rel)
        assert transitive_closure(closed) == closed
        sup_rows = tuple(r | ((extra >> (i * n)) & ((1 << n) - 1)) for i, r in enumerate(rows))
        assert transitive_closure(Relation(n, sup_rows)).contains(closed)


def reachable_protos(n):
    """All proto-rankings reachable through the protocol, by search."""
    seen = {ProtoRanking.empty(n).rows: ProtoRanking.empty(n)}
    frontier = [ProtoRanking.empty(n)]
    while frontier:
        nxt = []
        for proto in frontier:
            for x, y in proto.unranked_pairs():
                for w, l in ((x, y), (y, x)):
                    new = record_vote(proto, w, l)
                    if new.rows not in seen:
                        seen[new.rows] = new
                        nxt.append(new)
        frontier = nxt
    return list(seen.values())


class TestRecordVote:
    def test_first_vote(self):
        proto = record_vote(ProtoRanking.empty(3), 2, 3)
        assert set(proto.pairs()) == {(2, 3)}

    def test_imposition_path(self):
        proto = record_vote(ProtoRanking.empty(3), 2, 3)
        proto = record_vote(proto, 1, 2)
        assert set(proto.pairs()) == {(2, 3), (1, 2), (1, 3)}

    def test_closure_oracle_case(self):
        proto = record_vote(ProtoRanking.empty(3), 3, 2)
        proto = record_vote(proto, 2, 1)
        assert set(proto.pairs()) == {(3, 2), (2, 1), (3, 1)}

    def test_rejects_ranked_and_reflexive_pairs(self):
        proto = record_vote(ProtoRanking.empty(3), 2, 3)
        with pytest.raises(ProtocolViolationError):
            record_vote(proto, 3, 2)
        with pytest.raises(ProtocolViolationError):
            record_vote(proto, 2, 3)
        with pytest.raises(ProtocolViolationError):
            record_vote(proto, 1, 1)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_exhaustive_invariants(self, n):
        """Over every reachable state: output validates as a proto-ranking,
        equals the generic closure, and satisfies the one-step formula
        z R' w iff z R w or (z above-or-equal winner and loser above-or-equal w)."""
        for proto in reachable_protos(n):
            for x, y in proto.unranked_pairs():
                for w, l in ((x, y), (y, x)):
                    new = record_vote(proto, w, l)
                    ProtoRanking(new.n, new.rows)  # re-validate via public constructor
                    via_closure = transitive_closure(
                        Relation.from_pairs(n, proto.pairs() + [(w, l)])
                    )
                    assert new.rows == via_closure.rows
                    for z in range(1, n + 1):
                        for v in range(1, n + 1):
                            if z == v:
                                continue
                            expected = proto.has(z, v) or (
                                (z == w or proto.has(z, w)) and (l == v or proto.has(l, v))
                            )
                            assert new.has(z, v) == expected


class TestAlignment:
    def test_examples(self):
        pref = chain_ranking(3)
        r123, r213, r132 = (Ranking.from_order(o) for o in ([1, 2, 3], [2, 1, 3], [1, 3, 2]))
        assert is_more_aligned(r123, r213, pref)
        assert not is_more_aligned(r213, r132, pref)
        assert not is_more_aligned(r132, r213, pref)
        assert is_more_aligned(r213, r213, pref)

    def test_subset_check_examples(self):
        pref = chain_ranking(3)
        assert alignment_subset_check(
            Ranking.from_order([1, 2, 3]), Ranking.from_order([2, 1, 3]), pref
        )
        assert not alignment_subset_check(
            Ranking.from_order([3, 2, 1]), Ranking.from_order([1, 2, 3]), pref
        )

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_subset_check_equivalence(self, n):
        rankings = list(all_rankings(n))
        for pref in rankings:
            for r in rankings:
                for rp in rankings:
                    assert is_more_aligned(r, rp, pref) == alignment_subset_check(r, rp, pref)

    @pytest.mark.parametrize("n", [3, 4])
    def test_partial_order(self, n):
        pref = chain_ranking(n)
        rankings = list(all_rankings(n))
        for r in rankings:
            assert is_more_aligned(r, r, pref)
        for r in rankings:
            for rp in rankings:
                if r != rp and is_more_aligned(r, rp, pref):
                    assert not is_more_aligned(rp, r, pref)
                for rq in rankings:
                    if is_more_aligned(r, rp, pref) and is_more_aligned(rp, rq, pref):
                        assert is_more_aligned(r, rq, pref)

    def test_hasse_diagram_n3(self):
        """The covering graph over the six rankings has exactly six arrows:
        two chains from 123 down to 321."""
        pref = chain_ranking(3)
        rankings = list(all_rankings(3))
        better = {
            (a.order(), b.order())
            for a in rankings
            for b in rankings
            if a != b and is_more_aligned(a, b, pref)
        }
        covers = {
            (a, b)
            for a, b in better
            if not any((a, c) in better and (c, b) in better for c in [r.order() for r in rankings])
        }
        assert covers == {
            ((1, 2, 3), (2, 1, 3)),
            ((2, 1, 3), (2, 3, 1)),
            ((2, 3, 1), (3, 2, 1)),
            ((1, 2, 3), (1, 3, 2)),
            ((1, 3, 2), (3, 1, 2)),
            ((3, 1, 2), (3, 2, 1)),
        }


class TestOrderToolsAndCycles:
    def test_order_interval(self):
        chain = Ranking.from_order([1, 2, 3])
        assert order_interval(chain, 1, 3) == {1, 2, 3}
        assert order_interval(chain, 1, 2) == {1, 2}
        winding = Ranking.from_order([1, 4, 3, 2])
        assert order_interval(winding, 4, 2) == {4, 3, 2}
        with pytest.raises(ProtocolViolationError):
            order_interval(chain, 3, 1)

    def test_adjacent_pairs(self):
        assert adjacent_pairs(Ranking.from_order([1, 2, 3])) == [(1, 2), (2, 3)]
        assert adjacent_pairs(Ranking.from_order([1, 4, 3, 2])) == [(1, 4), (4, 3), (3, 2)]
        assert adjacent_pairs(Ranking.from_order([2, 1])) == [(2, 1)]

    def test_has_cycle(self):
        assert has_cycle(cycle3)
        assert not has_cycle(chain_ranking(3).as_tournament())
        assert has_cycle(chorded4)

    @pytest.mark.parametrize("n", [3, 4])
    def test_cycle_equals_nontransitive(self, n):
        for t in all_tournaments(n):
            assert has_cycle(t) == (not t.is_transitive())


class TestRoleValidation:
    def test_self_loops_rejected_by_roles(self):
        rows = (0b001, 0, 0)  # 1 relates to itself
        Relation(3, rows)  # representable raw
        with pytest.raises(InvalidRelationError):
            ProtoRanking(3, rows)
        with pytest.raises(InvalidRelationError):
            Tournament(3, rows)

    def test_tournament_requires_total_asymmetric(self):
        with pytest.raises(InvalidRelationError):
            Tournament.from_pairs(3, [(1, 2), (2, 3)])  # missing {1,3}
        with pytest.raises(InvalidRelationError):
            Tournament.from_pairs(3, [(1, 2), (2, 1), (2, 3), (1, 3)])

    def test_general_will_allows_mutual_pairs(self):
        will = GeneralWill.from_pairs(3, [(1, 2), (2, 1), (2, 3), (1, 3)])
        assert will.has(1, 2) and will.has(2, 1)

    def test_proto_requires_transitive(self):
        with pytest.raises(InvalidRelationError):
            ProtoRanking.from_pairs(3, [(1, 2), (2, 3)])

    def test_size_limits(self):
        with pytest.raises(InvalidRelationError):
            Relation.empty(65)
        with pytest.raises(InvalidRelationError):
            Relation.empty(1)


class TestRelabelAndTextFormat:
    @settings(max_examples=60, deadline=None)
    @given(st.permutations(list(range(1, 5))), st.integers(0, (1 << 6) - 1))
    def test_relabel_is_a_bijection(self, perm, code):
        t = tournament_from_code(4, code)
        moved = relabel(t, perm)
        assert isinstance(moved, Tournament)
        inverse = [0] * 4
        for old, new in enumerate(perm, start=1):
            inverse[new - 1] = old
        assert relabel(moved, inverse) == t
        for x, y in t.pairs():
            assert moved.has(perm[x - 1], perm[y - 1])

    def test_tournament_text_round_trip(self):
        text = dump_relation(chorded4)
        assert text == "4\n0001\n1001\n1100\n0010\n"
        assert parse_tournament(text) == chorded4

    def test_ranking_text_round_trip(self):
        r = Ranking.from_order([1, 4, 3, 2])
        assert dump_ranking(r) == "1 4 3 2"
        assert parse_ranking("1 4 3 2") == r

    def test_bad_grids_rejected(self):
        with pytest.raises(InvalidRelationError):
            parse_tournament("3\n010\n001\n100\nextra")
        with pytest.raises(InvalidRelationError):
            parse_tournament("2\n10\n00")  # diagonal 1
