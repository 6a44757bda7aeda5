"""Voters, majority aggregation, profile synthesis, and sincere-voting dominance.

A voting behaviour is a tournament (who the voter picks on each pair); a
profile is an odd-sized collection of behaviours whose pairwise majority
relation is the general will.  Strategic voters get history-dependent vote
policies; the dominance checks compare a deviation against sincere voting
under the "more aligned" partial order on outcomes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .protocol import History, Pair, Strategy, play
from .relations import (
    ProtoRanking,
    ProtocolViolationError,
    Ranking,
    Relation,
    Tournament,
    all_rankings,
    is_more_aligned,
    ranking_of,
)
from .strategies import reachable_histories

VoterPolicy = Callable[[History, Pair], int]


class SincereDeviationError(ValueError):
    """A dominance witness was requested for a policy that never deviates."""


@dataclass(frozen=True)
class VotingProfile:
    """One voting behaviour per voter; the committee size must be odd."""

    voters: tuple[Tournament, ...]

    def __post_init__(self) -> None:
        if len(self.voters) % 2 == 0 or not self.voters:
            raise ValueError("committee size must be odd")
        if len({v.n for v in self.voters}) != 1:
            raise ValueError("voters must share one alternative set")

    @property
    def n(self) -> int:
        return self.voters[0].n


def general_will_of(profile: VotingProfile) -> Tournament:
    """Pairwise majority relation; odd committees never tie."""
    n = profile.n
    pairs = []
    for x in range(1, n + 1):
        for y in range(x + 1, n + 1):
            ayes = sum(1 for v in profile.voters if v.has(x, y))
            pairs.append((x, y) if 2 * ayes > len(profile.voters) else (y, x))
    return Tournament.from_pairs(n, pairs)


def _ranking_behaviour(order: Sequence[int]) -> Tournament:
    return Ranking.from_order(order).as_tournament()


def mcgarvey_profile(will: Tournament) -> VotingProfile:
    """A profile of transitive behaviours whose general will is ``will``.

    For each will edge (x, y), add two voters who rank x just above y and
    the rest in mutually reversed orders: their margins cancel everywhere
    except on (x, y), where they contribute +2.  One fixed extra voter
    restores odd size; margins of +/-1 cannot flip a +2.
    """
    n = will.n
    voters = []
    for x, y in will.pairs():
        rest = [z for z in range(1, n + 1) if z not in (x, y)]
        voters.append(_ranking_behaviour([x, y] + rest))
        voters.append(_ranking_behaviour(list(reversed(rest)) + [x, y]))
    voters.append(_ranking_behaviour(range(1, n + 1)))
    return VotingProfile(tuple(voters))


def sincere_vote(pref: Ranking, pair: Pair) -> int:
    """The pref-better member of the pair, regardless of history."""
    x, y = pair
    return x if pref.has(x, y) else y


def sincere_policy(pref: Ranking) -> VoterPolicy:
    return lambda h, pair: sincere_vote(pref, pair)


def behaviour_policy(behaviour: Relation) -> VoterPolicy:
    """History-invariant voting per a fixed tournament or ranking."""
    return lambda h, pair: pair[0] if behaviour.has(pair[0], pair[1]) else pair[1]


def play_committee(
    chair: Strategy, policies: Sequence[VoterPolicy], n: int
) -> tuple[History, Ranking]:
    """Play the protocol with explicit voters instead of a fixed will."""
    if len(policies) % 2 == 0:
        raise ValueError("committee size must be odd")
    h = History.empty(n)
    while not h.is_terminal:
        x, y = chair.next_pair(h)
        if h.proto.has(x, y) or h.proto.has(y, x):
            raise ProtocolViolationError(f"chair offered ranked pair ({x}, {y})")
        ayes = sum(1 for p in policies if p(h, (x, y)) == x)
        winner, loser = (x, y) if 2 * ayes > len(policies) else (y, x)
        h = h.extend(winner, loser)
    return h, ranking_of(h.proto)


def dominance_forall_check(
    i: int,
    pref_i: Ranking,
    deviation: VoterPolicy,
    chair: Strategy,
    others: Sequence[VoterPolicy],
) -> tuple[bool, Ranking, Ranking]:
    """The no-obviously-better-deviation clause for one strategy profile:
    with voter i sincere the outcome is R, with the deviation R'; pass iff
    R' equals R or is not more aligned with i's preference."""
    sincere = list(others)
    sincere.insert(i, sincere_policy(pref_i))
    deviant = list(others)
    deviant.insert(i, deviation)
    n = pref_i.n
    _, base = play_committee(chair, sincere, n)
    _, alt = play_committee(chair, deviant, n)
    ok = alt == base or not is_more_aligned(alt, base, pref_i)
    return ok, base, alt


def extend_with_adjacent_pair(proto: ProtoRanking, x: int, y: int) -> Ranking:
    """A ranking containing ``proto`` in which x sits immediately above y.

    Exists whenever the pair is unranked (any proto-ranking extends this
    way); found by scanning rankings in lexicographic order, so only
    suitable at small n.
    """
    if proto.has(x, y) or proto.has(y, x):
        raise ProtocolViolationError(f"pair ({x}, {y}) is already ranked")
    for r in all_rankings(proto.n):
        if r.has(x, y) and r.contains(proto):
            if not any(r.has(x, z) and r.has(z, y) for z in range(1, proto.n + 1)):
                return r
    raise AssertionError("an adjacent extension always exists for an unranked pair")


def plan_strategy(n: int, plan: Sequence[Pair]) -> Strategy:
    """Offers the first still-unranked pair of a fixed pair list."""
    full_plan = list(plan) + [
        (a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)
    ]

    def next_pair(h: History) -> Pair:
        for a, b in full_plan:
            if not (h.proto.has(a, b) or h.proto.has(b, a)):
                return (a, b)
        raise AssertionError("plan exhausted before the ranking was total")

    return Strategy("planned", next_pair)


def first_deviation_point(
    pref_i: Ranking, deviation: VoterPolicy, n: int
) -> tuple[History, Pair] | None:
    """Earliest reachable (history, offered pair) where the policy votes
    against the voter's own preference; None if it never does."""
    for h in reachable_histories(n):
        if h.is_terminal:
            continue
        for pair in h.proto.unranked_pairs():
            if deviation(h, pair) != sincere_vote(pref_i, pair):
                return h, pair
    return None


@dataclass
class DominanceWitness:
    """Chair and co-voter strategies against which sincere voting beats the
    deviation outright: voter i is pivotal on exactly one adjacent pair."""

    chair: Strategy
    others: tuple[VoterPolicy, ...]
    history: History
    pair: Pair
    sincere_outcome: Ranking
    deviant_outcome: Ranking


def dominance_exists_witness(
    i: int,
    pref_i: Ranking,
    deviation: VoterPolicy,
    committee_size: int = 3,
) -> DominanceWitness:
    """Construct the obviously-worse scenario for a non-sincere deviation.

    Locate the first reachable point where the deviation votes against
    preference, extend that proto-ranking to a ranking R with the offered
    pair adjacent and pref-ordered, and let half the co-voters vote by R
    and half by R-with-the-pair-swapped.  The deviator is then pivotal on
    that pair alone, so sincere play yields R and the deviation yields the
    strictly less aligned swap.  Validated by replay.
    """
    n = pref_i.n
    point = first_deviation_point(pref_i, deviation, n)
    if point is None:
        raise SincereDeviationError("policy is sincere at every reachable point")
    h0, pair = point
    x, y = (pair[0], pair[1]) if pref_i.has(pair[0], pair[1]) else (pair[1], pair[0])
    aligned = extend_with_adjacent_pair(h0.proto, x, y)
    swapped_order = list(aligned.order())
    ix = swapped_order.index(x)
    swapped_order[ix], swapped_order[ix + 1] = swapped_order[ix + 1], swapped_order[ix]
    misaligned = Ranking.from_order(swapped_order)

    chair = plan_strategy(n, list(h0.offered_pairs()) + [(min(x, y), max(x, y))])
    half = (committee_size - 1) // 2
    others = tuple(
        [behaviour_policy(aligned)] * half + [behaviour_policy(misaligned)] * half
    )

    sincere = list(others)
    sincere.insert(i, sincere_policy(pref_i))
    deviant = list(others)
    deviant.insert(i, deviation)
    _, got_aligned = play_committee(chair, sincere, n)
    _, got_misaligned = play_committee(chair, deviant, n)
    if got_aligned != aligned or got_misaligned != misaligned:
        raise AssertionError("witness replay did not reproduce the target outcomes")
    return DominanceWitness(chair, others, h0, (x, y), got_aligned, got_misaligned)
