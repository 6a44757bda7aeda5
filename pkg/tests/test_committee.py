"""Majority aggregation, profile synthesis, and sincere-voting dominance."""

import pytest

from pairvote.committee import (
    SincereDeviationError,
    VotingProfile,
    behaviour_policy,
    dominance_exists_witness,
    dominance_forall_check,
    first_deviation_point,
    general_will_of,
    mcgarvey_profile,
    play_committee,
    sincere_policy,
    sincere_vote,
)
from pairvote.relations import (
    Ranking,
    all_tournaments,
    chain_ranking,
    is_more_aligned,
)
from pairvote.simulate import (
    dominance_sweep,
    random_chair,
    random_deviation,
    random_ranking,
    random_voter,
    _rng,
)
from pairvote.strategies import insertion_sort

from sample_wills import cycle3


def behaviour(order):
    return Ranking.from_order(order).as_tournament()


class TestGeneralWill:
    def test_identical_voters(self):
        profile = VotingProfile((behaviour([1, 2, 3]),) * 3)
        assert general_will_of(profile) == behaviour([1, 2, 3])

    def test_cyclic_trio(self):
        profile = VotingProfile(
            (behaviour([1, 2, 3]), behaviour([2, 3, 1]), behaviour([3, 1, 2]))
        )
        will = general_will_of(profile)
        assert will.has(1, 2) and will.has(2, 3) and will.has(3, 1)

    def test_single_voter(self):
        assert general_will_of(VotingProfile((cycle3,))) == cycle3

    def test_even_committee_rejected(self):
        with pytest.raises(ValueError):
            VotingProfile((cycle3, cycle3))


class TestMcGarvey:
    def test_three_cycle_voter_count_and_round_trip(self):
        will = behaviour([1, 2, 3])
        cyc = cycle3
        profile = mcgarvey_profile(cyc)
        assert len(profile.voters) == 7
        assert general_will_of(profile) == cyc

    def test_transitive_round_trip(self):
        will = behaviour([2, 1, 3])
        assert general_will_of(mcgarvey_profile(will)) == will

    @pytest.mark.parametrize("n", [3, 4])
    def test_round_trip_exhaustive(self, n):
        for will in all_tournaments(n):
            profile = mcgarvey_profile(will)
            assert general_will_of(profile) == will
            assert all(v.is_transitive() for v in profile.voters)


class TestSincereVoting:
    def test_examples(self):
        assert sincere_vote(chain_ranking(3), (2, 3)) == 2
        assert sincere_vote(Ranking.from_order([3, 2, 1]), (1, 3)) == 3

    def test_history_invariance_by_signature(self):
        policy = sincere_policy(chain_ranking(3))
        from pairvote.protocol import History

        h0, h1 = History.empty(3), History.empty(3).extend(3, 2)
        assert policy(h0, (1, 2)) == policy(h1, (1, 2)) == 1


class TestPlayCommittee:
    def test_majority_decides(self):
        policies = [
            behaviour_policy(behaviour([1, 2, 3])),
            behaviour_policy(behaviour([1, 2, 3])),
            behaviour_policy(behaviour([3, 2, 1])),
        ]
        _, outcome = play_committee(insertion_sort(), policies, 3)
        assert outcome.order() == (1, 2, 3)

    def test_matches_general_will_play(self):
        from pairvote.protocol import play

        for will in all_tournaments(3):
            profile = mcgarvey_profile(will)
            policies = [behaviour_policy(v) for v in profile.voters]
            _, via_committee = play_committee(insertion_sort(), policies, 3)
            _, via_will = play(insertion_sort(), will)
            assert via_committee == via_will


class TestDominance:
    def test_sincere_deviation_trivially_passes(self):
        pref = chain_ranking(3)
        ok, base, alt = dominance_forall_check(
            0,
            pref,
            sincere_policy(pref),
            random_chair("t"),
            [random_voter("a"), random_voter("b")],
        )
        assert ok and base == alt

    def test_sweep_small(self):
        result = dominance_sweep(3, 3, 1500, seed=5)
        assert result.failures == 0

    def test_pivotal_flip_never_obviously_better(self):
        """Flipping every vote is never obviously better for the voter."""
        pref = chain_ranking(3)
        flip = random_deviation(("flip",), pref, flip_rate=1.0)
        for case in range(200):
            chair = random_chair(("case", case))
            others = [random_voter(("o", case, j)) for j in range(2)]
            ok, _, _ = dominance_forall_check(1, pref, flip, chair, others)
            assert ok

    def test_witness_for_flip_everything(self):
        pref = chain_ranking(3)
        flip = random_deviation(("w",), pref, flip_rate=1.0)
        witness = dominance_exists_witness(0, pref, flip)
        assert witness.sincere_outcome != witness.deviant_outcome
        assert is_more_aligned(witness.sincere_outcome, witness.deviant_outcome, pref)

    def test_witness_for_single_point_flip(self):
        pref = chain_ranking(3)
        sincere = sincere_policy(pref)

        def deviation(h, pair):
            if h.votes == () and pair == (1, 2):
                return 2
            return sincere(h, pair)

        point = first_deviation_point(pref, deviation, 3)
        assert point is not None and point[1] == (1, 2)
        witness = dominance_exists_witness(0, pref, deviation)
        assert witness.pair == (1, 2)

    def test_witness_replays_for_random_deviations(self):
        for case in range(40):
            pref = random_ranking(_rng("wit", case), 3)
            deviation = random_deviation(("wit", case), pref, flip_rate=0.6)
            if first_deviation_point(pref, deviation, 3) is None:
                continue
            witness = dominance_exists_witness(1, pref, deviation)
            assert is_more_aligned(witness.sincere_outcome, witness.deviant_outcome, pref)
            assert witness.sincere_outcome != witness.deviant_outcome

    def test_no_witness_for_sincere(self):
        pref = chain_ranking(3)
        with pytest.raises(SincereDeviationError):
            dominance_exists_witness(0, pref, sincere_policy(pref))
