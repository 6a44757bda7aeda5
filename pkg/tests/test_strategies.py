"""Named strategies, error classification, and strategy-level sweeps."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pairvote.feasibility import is_feasible
from pairvote.protocol import (
    History,
    IndecisiveVoteError,
    Strategy,
    TerminalHistoryError,
    play,
)
from pairvote.relations import (
    GeneralWill,
    ProtoRanking,
    ProtocolViolationError,
    Ranking,
    all_general_wills,
    all_tournaments,
    chain_ranking,
    tournament_from_code,
)
from pairvote.strategies import (
    enumerate_strategies,
    first_pair_strategy,
    gambit_strategy,
    greedy_error_free,
    greedy_error_free_next,
    efficient_over_general_wills,
    insertion_sort,
    insertion_sort_next,
    is_strategy_efficient,
    is_strategy_regret_free,
    misses_opportunity,
    never_errs,
    non_error_pairs,
    outcome_equivalent,
    ranks_against_interest,
    reachable_histories,
    recursive_amendment,
    recursive_amendment_next,
    takes_risk,
)

from sample_wills import chorded4, chorded4_flip, cycle3, order_demo4


def history_of(n, votes):
    h = History.empty(n)
    for w, l in votes:
        h = h.extend(w, l)
    return h


def proto_of(n, votes):
    return history_of(n, votes).proto


class TestPlay:
    def test_insertion_sort_on_cycle3(self):
        h, outcome = play(insertion_sort(), cycle3)
        assert h.votes == ((3, 2), (1, 3))
        assert outcome.order() == (1, 3, 2)

    def test_insertion_sort_on_chorded4(self):
        h, outcome = play(insertion_sort(), chorded4)
        assert outcome.order() == (2, 1, 4, 3)
        assert h.offered_pairs() == [(3, 4), (2, 4), (1, 2), (1, 4)]

    def test_sorting_a_sorted_list(self):
        chain = chain_ranking(3)
        _, outcome = play(insertion_sort(), chain.as_tournament())
        assert outcome == chain

    def test_ranked_pair_offer_is_a_violation(self):
        bad = Strategy("stuck", lambda h: (2, 3))
        with pytest.raises(ProtocolViolationError):
            play(bad, cycle3)

    def test_indecisive_without_resolver(self):
        will = GeneralWill.from_pairs(3, [(1, 2), (2, 1), (2, 3), (1, 3)])
        naked = Strategy("naked", insertion_sort_next)
        with pytest.raises(IndecisiveVoteError):
            play(naked, will)

    @settings(max_examples=80, deadline=None)
    @given(st.integers(5, 6), st.data())
    def test_random_tournament_play_invariants(self, n, data):
        code = data.draw(st.integers(0, (1 << (n * (n - 1) // 2)) - 1))
        will = tournament_from_code(n, code)
        h, outcome = play(insertion_sort(), will)
        for proto in h.protos():
            ProtoRanking(proto.n, proto.rows)  # validates role invariants
        assert is_feasible(will, outcome)
        assert len(h.votes) >= n - 1


class TestInsertionSortRule:
    def test_first_offer_n3(self):
        assert insertion_sort_next(History.empty(3)) == (2, 3)

    def test_after_3_beats_2(self):
        assert insertion_sort_next(history_of(3, [(3, 2)])) == (1, 3)

    def test_order_demo_insert_step(self):
        assert insertion_sort_next(history_of(4, [(4, 3)])) == (2, 4)

    def test_terminal_raises(self):
        h = history_of(3, [(1, 2), (2, 3)])
        with pytest.raises(TerminalHistoryError):
            insertion_sort_next(h)


class TestRecursiveAmendmentRule:
    def test_first_offer_n4(self):
        assert recursive_amendment_next(History.empty(4)) == (3, 4)

    def test_order_demo_steps(self):
        assert recursive_amendment_next(history_of(4, [(4, 3), (4, 2)])) == (1, 4)
        assert recursive_amendment_next(history_of(4, [(4, 3), (4, 2), (1, 4)])) == (2, 3)

    def test_terminal_raises(self):
        with pytest.raises(TerminalHistoryError):
            recursive_amendment_next(history_of(3, [(1, 2), (2, 3)]))


class TestErrorClauses:
    def test_missed_opportunity_on_empty(self):
        proto = ProtoRanking.empty(3)
        assert misses_opportunity(proto, 1, 3) == (2,)
        assert misses_opportunity(proto, 1, 2) == ()

    def test_opportunity_persists_when_middle_already_ranks_above_bottom(self):
        # with 2 above 3 decided, offering {1,2} can still win 1-above-3 for
        # free, so offering {1,3} forfeits it
        proto = proto_of(3, [(2, 3)])
        assert misses_opportunity(proto, 1, 3) == (2,)

    def test_opportunity_gone_when_middle_sits_below_bottom(self):
        proto = proto_of(3, [(3, 2)])
        assert misses_opportunity(proto, 1, 3) == ()

    def test_risk_clauses(self):
        assert takes_risk(proto_of(3, [(3, 2)]), 1, 2) == (3,)
        # with 2 above 3 decided, losing {1,3} would impose 2 above 1 too
        assert takes_risk(proto_of(3, [(2, 3)]), 1, 3) == (2,)
        assert takes_risk(ProtoRanking.empty(3), 1, 3) == ()
        assert takes_risk(ProtoRanking.empty(4), 2, 4) == ()

    def test_ranked_pair_rejected(self):
        proto = proto_of(3, [(2, 3)])
        with pytest.raises(ProtocolViolationError):
            misses_opportunity(proto, 2, 3)
        with pytest.raises(ValueError):
            takes_risk(proto, 3, 1)  # wrong preference order

    def test_classification_listing(self):
        by_pair = {c.pair: c for c in non_error_pairs(ProtoRanking.empty(3))}
        assert by_pair[(1, 2)].is_clean and by_pair[(2, 3)].is_clean
        assert by_pair[(1, 3)].status == "misses_opportunity"
        assert by_pair[(1, 3)].miss_witnesses == (2,)

        by_pair = {c.pair: c for c in non_error_pairs(proto_of(3, [(3, 2)]))}
        assert by_pair[(1, 3)].is_clean
        assert by_pair[(1, 2)].status == "takes_risk"

        by_pair = {c.pair: c for c in non_error_pairs(proto_of(3, [(2, 3)]))}
        assert by_pair[(1, 2)].is_clean
        assert by_pair[(1, 3)].status == "both"

    def test_total_proto_rejected(self):
        with pytest.raises(TerminalHistoryError):
            non_error_pairs(proto_of(3, [(1, 2), (2, 3)]))


class TestGreedy:
    def test_lexicographic_default(self):
        assert greedy_error_free_next(History.empty(3)) == (1, 2)
        assert greedy_error_free_next(history_of(3, [(3, 2)])) == (1, 3)

    def test_custom_tiebreak(self):
        assert greedy_error_free_next(History.empty(3), tiebreak=max) == (2, 3)

    def test_never_exhausts_clean_pairs(self):
        for will in all_tournaments(4):
            h, _ = play(greedy_error_free(), will)
            protos = h.protos()
            for t in range(len(h.votes)):
                assert any(c.is_clean for c in non_error_pairs(protos[t]))


class TestIndecisiveResolution:
    def test_ranks_against_interest(self):
        pref = chain_ranking(3)
        assert not ranks_against_interest(pref, (1, 2))
        assert ranks_against_interest(pref, (2, 1))

    def test_in_interest_strategy_never_goes_against(self):
        pref = chain_ranking(3)
        strategy = insertion_sort()
        for will in all_general_wills(3):
            h, _ = play(strategy, will)
            for w, l in h.votes:
                if will.has(w, l) and will.has(l, w):
                    assert not ranks_against_interest(pref, (w, l))

    def test_in_interest_efficient_n3(self):
        assert efficient_over_general_wills(insertion_sort(), 3).ok

    def test_against_interest_fails_with_counterexample(self):
        verdict = efficient_over_general_wills(insertion_sort(indecisive="against"), 3)
        assert not verdict.ok
        will = verdict.counterexample["will"]
        _, outcome = play(insertion_sort(indecisive="against"), will)
        assert outcome == verdict.counterexample["outcome"]


class TestStrategyChecks:
    @pytest.mark.parametrize("n", [3, 4])
    def test_insertion_sort_efficient(self, n):
        assert is_strategy_efficient(insertion_sort(), n).ok

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_insertion_sort_regret_free(self, n):
        assert is_strategy_regret_free(insertion_sort(), n).ok

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_greedy_regret_free(self, n):
        assert is_strategy_regret_free(greedy_error_free(), n).ok

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_recursive_amendment_efficient(self, n):
        assert is_strategy_efficient(recursive_amendment(), n).ok

    def test_gambit_fails_efficiency_with_chorded4(self):
        verdict = is_strategy_efficient(gambit_strategy(), 4)
        assert not verdict.ok
        # the chorded 4-cycle is itself a counterexample: the outcome ranks
        # 4 above 2 although the chair and the will both favour 2
        _, outcome = play(gambit_strategy(), chorded4)
        assert outcome.order() == (1, 4, 3, 2)
        from pairvote.feasibility import efficiency_violation

        assert efficiency_violation(chorded4, outcome) == (2, 4)

    def test_gambit_fails_regret_freeness_via_flip(self):
        assert not is_strategy_regret_free(gambit_strategy(), 4).ok
        _, outcome = play(gambit_strategy(), chorded4_flip)
        assert outcome.order() == (4, 3, 2, 1)
        improving = Ranking.from_order([3, 2, 4, 1])
        assert is_feasible(chorded4_flip, improving)
        from pairvote.relations import is_more_aligned

        assert is_more_aligned(improving, outcome, chain_ranking(4))

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_insertion_sort_never_errs(self, n):
        assert never_errs(insertion_sort(), n).ok

    def test_gambit_first_error_is_the_second_offer(self):
        verdict = never_errs(gambit_strategy(), 4)
        assert not verdict.ok
        ce = verdict.counterexample
        assert ce["history"] == ((3, 2),)
        assert ce["pair"] == (3, 4)
        assert ce["classification"].status == "takes_risk"
        assert ce["classification"].risk_witnesses == (2,)

    def test_opening_with_the_skip_pair_errs_immediately(self):
        verdict = never_errs(first_pair_strategy((1, 3)), 3)
        assert not verdict.ok
        assert verdict.counterexample["history"] == ()
        assert verdict.counterexample["pair"] == (1, 3)


class TestOutcomeEquivalence:
    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_insertion_vs_amendment(self, n):
        report = outcome_equivalent(insertion_sort(), recursive_amendment(), n)
        assert report.ok and report.same_vote_sets
        if n >= 4:
            assert report.order_difference is not None

    def test_identity(self):
        report = outcome_equivalent(insertion_sort(), insertion_sort(), 4)
        assert report.ok and report.same_vote_sets and report.order_difference is None

    def test_gambit_differs(self):
        assert not outcome_equivalent(insertion_sort(), gambit_strategy(), 4).ok

    def test_vote_orders_differ_at_order_demo(self):
        hi, _ = play(insertion_sort(), order_demo4)
        ha, _ = play(recursive_amendment(), order_demo4)
        assert hi.offered_pairs() == [(3, 4), (2, 4), (2, 3), (1, 4)]
        assert ha.offered_pairs() == [(3, 4), (2, 4), (1, 4), (2, 3)]


class TestStrategyEnumeration:
    def test_game_tree_counts(self):
        histories = reachable_histories(3)
        nonterminal = [h for h in histories if not h.is_terminal]
        assert len(nonterminal) == 19
        # table count = product of per-history option counts
        expected = 1
        for h in nonterminal:
            expected *= len(h.proto.unranked_pairs())
        strategies = enumerate_strategies(3)
        assert len(strategies) == expected == 192

    def test_every_strategy_terminates_everywhere(self):
        for s in enumerate_strategies(3):
            for will in all_tournaments(3):
                _, outcome = play(s, will)
                assert outcome.is_total()

    def test_regret_free_equals_efficient_equals_never_errs(self):
        strategies = enumerate_strategies(3)
        efficient = {s.name for s in strategies if is_strategy_efficient(s, 3).ok}
        regret_free = {s.name for s in strategies if is_strategy_regret_free(s, 3).ok}
        no_errors = {s.name for s in strategies if never_errs(s, 3).ok}
        assert efficient == regret_free == no_errors
        assert efficient  # non-empty: insertion sort's table is among them


def error_free_histories(n):
    """Depth-first enumeration of histories whose offers are all clean."""
    out = []
    stack = [History.empty(n)]
    while stack:
        h = stack.pop()
        out.append(h)
        if h.is_terminal:
            continue
        for cls in non_error_pairs(h.proto):
            if cls.is_clean:
                x, y = cls.pair
                stack.append(h.extend(x, y))
                stack.append(h.extend(y, x))
    return out


class TestErrorFreeStructure:
    @pytest.mark.parametrize("n", [3, 4])
    def test_wrong_way_rankings_come_only_from_direct_votes(self, n):
        """Along error-free play, a preferred alternative ends up below a
        worse one only if that exact pair was voted on."""
        for h in error_free_histories(n):
            protos = h.protos()
            for t, (w, l) in enumerate(h.votes):
                before, after = protos[t], protos[t + 1]
                for x in range(1, n + 1):
                    for y in range(x + 1, n + 1):
                        if after.has(y, x) and not before.has(y, x):
                            assert (w, l) == (y, x)

    @pytest.mark.parametrize("n", [3, 4])
    def test_thm1_proof_obligation(self, n):
        """Insertion sort ranks x above y whenever the chair prefers x and
        the will agrees."""
        pref = chain_ranking(n)
        for will in all_tournaments(n):
            _, outcome = play(insertion_sort(), will)
            for x in range(1, n + 1):
                for y in range(x + 1, n + 1):
                    if will.has(x, y):
                        assert outcome.has(x, y)

    def test_prop2_sampled_n5(self):
        import random

        rng = random.Random(1128)
        for _ in range(300):
            h = History.empty(5)
            while not h.is_terminal:
                clean = [c.pair for c in non_error_pairs(h.proto) if c.is_clean]
                assert clean
                x, y = rng.choice(clean)
                if rng.random() < 0.5:
                    x, y = y, x
                h = h.extend(x, y)
