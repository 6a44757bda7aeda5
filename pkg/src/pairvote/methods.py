"""Ranking methods: tournament-to-ranking tables and their properties.

A method is faithful when its output is always feasible under the input
will, consistent when any two differing outputs are pinned to a reversed
pair in a way stable across all tournaments extending their agreement,
and efficient when every output is will-efficient for the chair.  Methods
induced by strategies are exactly the faithful and consistent ones.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Optional

from .feasibility import EnumerationBoundError, efficiency_violation, is_feasible
from .protocol import History, Pair, Strategy, play
from .relations import (
    Ranking,
    Tournament,
    all_rankings,
    all_tournaments,
    is_more_aligned_with,
    pair_slots,
)
from .strategies import Verdict


@dataclass(frozen=True)
class RankingMethod:
    """An explicit table from every tournament on n alternatives to a ranking."""

    n: int
    name: str
    table: Mapping[Tournament, Ranking]

    def __post_init__(self) -> None:
        expected = 1 << (self.n * (self.n - 1) // 2)
        if len(self.table) != expected:
            raise ValueError(f"table must cover all {expected} tournaments")

    def __call__(self, will: Tournament) -> Ranking:
        return self.table[will]


def induced_method(strategy: Strategy, n: int, bound: int = 5) -> RankingMethod:
    """The method a strategy induces: play it out under every tournament."""
    if n > bound:
        raise EnumerationBoundError(f"n={n} exceeds bound {bound}")
    table = {will: play(strategy, will)[1] for will in all_tournaments(n)}
    return RankingMethod(n, f"induced-{strategy.name}", table)


def is_faithful(method: RankingMethod) -> Verdict:
    """Pass iff every output is feasible under its will (equivalently, no
    ranking is more aligned with the will than the output)."""
    for will, out in method.table.items():
        if not is_feasible(will, out):
            return Verdict(
                False,
                f"{method.name} is not faithful",
                {"will": will, "output": out},
            )
    return Verdict(True, f"{method.name} is faithful")


def faithful_by_alignment(method: RankingMethod, bound: int = 4) -> Verdict:
    """The direct definition of faithfulness: no other ranking is more
    aligned with the will than the method's output.  Factorial cost; kept
    as a small-n cross-check of :func:`is_faithful`."""
    if method.n > bound:
        raise EnumerationBoundError(f"n={method.n} exceeds bound {bound}")
    rankings = list(all_rankings(method.n))
    for will, out in method.table.items():
        for other in rankings:
            if other != out and is_more_aligned_with(other, out, will):
                return Verdict(
                    False,
                    f"{method.name} is not faithful",
                    {"will": will, "output": out, "better": other},
                )
    return Verdict(True, f"{method.name} is faithful")


def _extensions(n: int, base: Tournament, other: Tournament) -> list[Tournament]:
    """Tournaments containing the agreement of two tournaments."""
    slots = pair_slots(n)
    free = [(x, y) for x, y in slots if base.has(x, y) != other.has(x, y)]
    fixed = [(x, y) if base.has(x, y) else (y, x) for x, y in slots if base.has(x, y) == other.has(x, y)]
    out = []
    for orient in itertools.product((0, 1), repeat=len(free)):
        pairs = list(fixed)
        for bit, (x, y) in zip(orient, free):
            pairs.append((x, y) if bit else (y, x))
        out.append(Tournament.from_pairs(n, pairs))
    return out


def is_consistent(method: RankingMethod, bound: int = 4) -> Verdict:
    """Pass iff any two wills with differing outputs expose a reversed pair
    (x, y) whose treatment by the method tracks every tournament extending
    their agreement.  On failure the offending will pair is the certificate."""
    if method.n > bound:
        raise EnumerationBoundError(f"n={method.n} exceeds bound {bound}")
    wills = list(method.table)
    for a in range(len(wills)):
        for b in range(a + 1, len(wills)):
            w1, w2 = wills[a], wills[b]
            if method.table[w1] == method.table[w2]:
                continue
            extensions = _extensions(method.n, w1, w2)
            candidates = [
                (x, y) if w1.has(x, y) else (y, x)
                for x, y in pair_slots(method.n)
                if w1.has(x, y) != w2.has(x, y)
            ]
            if not any(
                all(method.table[ext].has(x, y) == ext.has(x, y) for ext in extensions)
                for x, y in candidates
            ):
                return Verdict(
                    False,
                    f"{method.name} is not consistent",
                    {"wills": (w1, w2), "outputs": (method.table[w1], method.table[w2])},
                )
    return Verdict(True, f"{method.name} is consistent")


def method_efficient(method: RankingMethod, pref: Ranking) -> Verdict:
    """Pass iff every table entry is will-efficient for ``pref``."""
    for will, out in method.table.items():
        pair = efficiency_violation(will, out, pref)
        if pair:
            return Verdict(
                False,
                f"{method.name} is not efficient",
                {"will": will, "output": out, "pair": pair},
            )
    return Verdict(True, f"{method.name} is efficient")


def copeland(will: Tournament, tiebreak: Ranking) -> Ranking:
    """Rank by descending win count, ties broken by the tiebreak order."""
    scores = {x: will.rows[x - 1].bit_count() for x in range(1, will.n + 1)}
    order = sorted(scores, key=lambda x: (-scores[x], tiebreak.position(x)))
    return Ranking.from_order(order)


def disagreements(r: Ranking, will: Tournament) -> int:
    """Pairs on which a ranking and a will point opposite ways."""
    return sum(will.rows[x - 1].bit_count() - (r.rows[x - 1] & will.rows[x - 1]).bit_count() for x in range(1, will.n + 1))


def kemeny_slater(will: Tournament, tiebreak: Ranking, bound: int = 8) -> Ranking:
    """A ranking minimizing disagreement with the will, exact search; ties
    broken by tiebreak-lexicographic order over permutations."""
    if will.n > bound:
        raise EnumerationBoundError(f"exact search is factorial; n={will.n} exceeds {bound}")
    best: Optional[Ranking] = None
    best_cost = None
    for perm in itertools.permutations(tiebreak.order()):
        r = Ranking.from_order(perm)
        cost = disagreements(r, will)
        if best_cost is None or cost < best_cost:
            best, best_cost = r, cost
    assert best is not None
    return best


def copeland_method(n: int, tiebreak: Ranking) -> RankingMethod:
    table = {will: copeland(will, tiebreak) for will in all_tournaments(n)}
    return RankingMethod(n, "copeland", table)


def kemeny_method(n: int, tiebreak: Ranking) -> RankingMethod:
    table = {will: kemeny_slater(will, tiebreak) for will in all_tournaments(n)}
    return RankingMethod(n, "kemeny-slater", table)


class InconsistentMethodError(ValueError):
    """strategy_from_method hit a history its table cannot steer through."""


def strategy_from_method(method: RankingMethod) -> Strategy:
    """Realize a faithful, consistent table as a strategy.

    At each history, build the two tournaments that agree with the votes so
    far and disagree on every other pair; offer a pair they reverse whose
    method treatment tracks every extension of their agreement.  For a
    consistent method such a pair exists and is unranked.
    """
    n = method.n
    cache: dict[tuple, Pair] = {}

    def filled(votes: tuple, invert: bool) -> Tournament:
        voted = {frozenset(v): v for v in votes}
        pairs = []
        for x, y in pair_slots(n):
            if frozenset((x, y)) in voted:
                pairs.append(voted[frozenset((x, y))])
            else:
                pairs.append((y, x) if invert else (x, y))
        return Tournament.from_pairs(n, pairs)

    def next_pair(h: History) -> Pair:
        if h.votes in cache:
            return cache[h.votes]
        w1 = filled(h.votes, False)
        w2 = filled(h.votes, True)
        extensions = _extensions(n, w1, w2)
        voted = {frozenset(v) for v in h.votes}
        for x, y in pair_slots(n):
            if frozenset((x, y)) in voted:
                continue
            a, b = (x, y) if w1.has(x, y) else (y, x)
            if all(method.table[ext].has(a, b) == ext.has(a, b) for ext in extensions):
                cache[h.votes] = (x, y)
                return (x, y)
        raise InconsistentMethodError(
            f"{method.name} admits no stable pair after votes {h.votes}"
        )

    return Strategy(f"realizes-{method.name}", next_pair)
