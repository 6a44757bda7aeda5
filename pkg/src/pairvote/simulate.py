"""Randomized sweeps for the sincere-voting dominance property.

Chair strategies and voter policies are derived deterministically from a
seed and the local history, so a case is reproducible from (seed, index)
alone.  The sweep checks the universal half of dominance: no deviation is
ever obviously better than sincere voting; the constructive half lives in
:func:`committee.dominance_exists_witness`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .committee import VoterPolicy, dominance_forall_check, sincere_vote
from .protocol import History, Pair, Strategy
from .relations import Ranking


def _rng(*tags) -> random.Random:
    return random.Random(repr(tags))


def random_ranking(rng: random.Random, n: int) -> Ranking:
    order = list(range(1, n + 1))
    rng.shuffle(order)
    return Ranking.from_order(order)


def random_chair(seed) -> Strategy:
    """A deterministic pseudo-random chair: pair choice per history."""

    def next_pair(h: History) -> Pair:
        return _rng(seed, "chair", h.votes).choice(h.proto.unranked_pairs())

    return Strategy(f"random-chair-{seed}", next_pair)


def random_voter(seed) -> VoterPolicy:
    def policy(h: History, pair: Pair) -> int:
        return _rng(seed, "vote", h.votes, pair).choice(pair)

    return policy


def random_deviation(seed, pref: Ranking, flip_rate: float = 0.5) -> VoterPolicy:
    """Sincere voting with history-dependent random flips."""

    def policy(h: History, pair: Pair) -> int:
        better = sincere_vote(pref, pair)
        if _rng(seed, "flip", h.votes, pair).random() < flip_rate:
            return pair[0] if better == pair[1] else pair[1]
        return better

    return policy


@dataclass
class SweepResult:
    n: int
    voters: int
    cases: int
    seed: int
    failures: int = 0
    counterexample: Optional[dict] = None

    def report(self) -> str:
        status = "pass" if self.failures == 0 else "FAIL"
        return (
            f"dominance n={self.n} voters={self.voters} cases={self.cases} "
            f"seed={self.seed} obviously_better_deviations={self.failures} {status}"
        )


def dominance_sweep(n: int, voters: int, cases: int, seed: int) -> SweepResult:
    """Randomized (deviation, chair, others) cases; a failure is a deviation
    whose outcome is distinct from and more aligned than sincere play."""
    result = SweepResult(n, voters, cases, seed)
    for case in range(cases):
        tag = f"{seed}:{case}"
        pref = random_ranking(_rng(tag, "pref"), n)
        deviation = random_deviation((tag, "dev"), pref)
        chair = random_chair((tag, "chair"))
        others = [random_voter((tag, "other", j)) for j in range(voters - 1)]
        i = _rng(tag, "slot").randrange(voters)
        ok, base, alt = dominance_forall_check(i, pref, deviation, chair, others)
        if not ok:
            result.failures += 1
            if result.counterexample is None:
                result.counterexample = {
                    "case": case,
                    "pref": pref,
                    "sincere_outcome": base,
                    "deviant_outcome": alt,
                }
    return result
