"""Named agenda strategies, error classification, and strategy-level checks.

Labels double as the chair's preference rank (1 is her favourite), so the
error clauses below read x < y as "x preferred to y".

Offering an unranked pair {x, y} with x preferred to y:

* misses an opportunity when some z between them in preference satisfies
  neither y-above-z nor z-above-x, i.e. a favourable imposition of
  transitivity via z was still available;
* takes a risk when losing the vote would impose an extra unfavourable
  ranking through an already-ranked neighbour z.

Both are evaluated on the proto-ranking before the vote.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional

from .feasibility import EnumerationBoundError, efficiency_violation, enumerate_feasible
from .protocol import History, Pair, Strategy, TerminalHistoryError, play
from .relations import (
    ProtoRanking,
    ProtocolViolationError,
    Ranking,
    Tournament,
    all_general_wills,
    all_tournaments,
    chain_ranking,
    right_pairs_mask,
)

CLEAN = "clean"
MISSES_OPPORTUNITY = "misses_opportunity"
TAKES_RISK = "takes_risk"
BOTH = "both"


def _require_offerable(proto: ProtoRanking, x: int, y: int) -> None:
    if not 1 <= x < y <= proto.n:
        raise ValueError(f"need x preferred to y, got ({x}, {y})")
    if proto.has(x, y) or proto.has(y, x):
        raise ProtocolViolationError(f"pair ({x}, {y}) is already ranked")


def misses_opportunity(proto: ProtoRanking, x: int, y: int) -> tuple[int, ...]:
    """Witnesses z with x < z < y, not y-above-z and not z-above-x."""
    _require_offerable(proto, x, y)
    return tuple(
        z for z in range(x + 1, y) if not proto.has(y, z) and not proto.has(z, x)
    )


def takes_risk(proto: ProtoRanking, x: int, y: int) -> tuple[int, ...]:
    """Witnesses z for either risk clause: z preferred to y with x above z
    and z not below y; or x preferred to z with z above y and z not below x."""
    _require_offerable(proto, x, y)
    out = []
    for z in range(1, proto.n + 1):
        if z == x or z == y:
            continue
        if z < y and proto.has(x, z) and not proto.has(y, z):
            out.append(z)
        elif z > x and proto.has(z, y) and not proto.has(z, x):
            out.append(z)
    return tuple(out)


@dataclass(frozen=True)
class PairClassification:
    """Error status of one unranked pair, with the witnesses per clause."""

    pair: Pair
    miss_witnesses: tuple[int, ...]
    risk_witnesses: tuple[int, ...]

    @property
    def status(self) -> str:
        if self.miss_witnesses and self.risk_witnesses:
            return BOTH
        if self.miss_witnesses:
            return MISSES_OPPORTUNITY
        if self.risk_witnesses:
            return TAKES_RISK
        return CLEAN

    @property
    def is_clean(self) -> bool:
        return not (self.miss_witnesses or self.risk_witnesses)


def classify_pair(proto: ProtoRanking, x: int, y: int) -> PairClassification:
    return PairClassification(
        (x, y), misses_opportunity(proto, x, y), takes_risk(proto, x, y)
    )


def non_error_pairs(proto: ProtoRanking) -> list[PairClassification]:
    """Classification of every unranked pair; errors if the proto is total."""
    pairs = proto.unranked_pairs()
    if not pairs:
        raise TerminalHistoryError("proto-ranking is already total")
    return [classify_pair(proto, x, y) for x, y in pairs]


def insertion_sort_next(h: History) -> Pair:
    """Insert-from-the-top rule: x is the least-preferred alternative still
    unranked with some even less preferred one; y is the currently highest
    ranked alternative among those.  The pool is always totally ranked, so
    y is well defined."""
    proto = h.proto
    n = proto.n
    rows = proto.rows
    full = (1 << n) - 1
    cols = [0] * n
    for i in range(n):
        row = rows[i]
        while row:
            low = row & -row
            cols[low.bit_length() - 1] |= 1 << i
            row ^= low
    for x in range(n - 1, 0, -1):
        worse = full & ~((1 << x) - 1)
        pool = worse & ~rows[x - 1] & ~cols[x - 1]
        if pool:
            m = pool
            while m:
                low = m & -m
                j = low.bit_length() - 1
                if rows[j] & pool == pool & ~low:
                    return (x, j + 1)
                m ^= low
            raise AssertionError("insertion pool must be totally ranked")
    raise TerminalHistoryError("no unranked pair remains")


def recursive_amendment_next(h: History) -> Pair:
    """Next pair under recursive amendment: repeatedly run king-of-the-hill
    contests in worsening preference order, treating already-ranked pairs
    as if the vote had occurred, and extract winners top-down; the first
    contest the proto-ranking cannot settle is the pair to offer."""
    if h.is_terminal:
        raise TerminalHistoryError("no unranked pair remains")
    proto = h.proto
    remaining = list(range(1, proto.n + 1))
    while len(remaining) >= 2:
        a, b = remaining[-2], remaining[-1]
        if proto.has(a, b):
            champion = a
        elif proto.has(b, a):
            champion = b
        else:
            return (a, b)
        for k in range(len(remaining) - 3, -1, -1):
            c = remaining[k]
            if proto.has(c, champion):
                champion = c
            elif not proto.has(champion, c):
                return (min(c, champion), max(c, champion))
        remaining.remove(champion)
    raise AssertionError("non-terminal history exhausted the contest pools")


Tiebreak = Callable[[list[Pair]], Pair]


def greedy_error_free_next(h: History, tiebreak: Optional[Tiebreak] = None) -> Pair:
    """Any clean pair per :func:`non_error_pairs`; defaults to the
    lexicographically smallest.  After an error-free history a clean pair
    always exists; otherwise falls back to the first unranked pair."""
    classified = non_error_pairs(h.proto)
    pool = [c.pair for c in classified if c.is_clean] or [c.pair for c in classified]
    return tiebreak(pool) if tiebreak else min(pool)


def ranks_against_interest(pref: Ranking, resolution: tuple[int, int]) -> bool:
    """True iff an indecisive vote was resolved with the pref-worse winner."""
    winner, loser = resolution
    return pref.has(loser, winner)


def _resolve_in_interest(h: History, pair: Pair) -> tuple[int, int]:
    return (min(pair), max(pair))


def _resolve_against_interest(h: History, pair: Pair) -> tuple[int, int]:
    return (max(pair), min(pair))


def insertion_sort(indecisive: str = "interest") -> Strategy:
    """The insertion-sort strategy; indecisive votes resolve in the chair's
    interest by default ("against" builds the deliberately bad variant)."""
    resolve = _resolve_in_interest if indecisive == "interest" else _resolve_against_interest
    return Strategy("insertion-sort", insertion_sort_next, resolve)


def recursive_amendment() -> Strategy:
    return Strategy("recursive-amendment", recursive_amendment_next, _resolve_in_interest)


def greedy_error_free(tiebreak: Optional[Tiebreak] = None) -> Strategy:
    def next_pair(h: History) -> Pair:
        return greedy_error_free_next(h, tiebreak)

    return Strategy("greedy", next_pair, _resolve_in_interest)


def table_strategy(name: str, table: dict[tuple, Pair]) -> Strategy:
    """A decision table keyed by the vote tuple of each non-terminal history."""

    def next_pair(h: History) -> Pair:
        return table[h.votes]

    return Strategy(name, next_pair)


def gambit_strategy() -> Strategy:
    """The known non-regret-free 4-alternative strategy: it sacrifices the
    2-over-4 consensus hoping to sneak 1 above 2.  Offers {2,3}, then {3,4}
    if 3 won, then {1,4} if 4 also won; insertion sort elsewhere."""

    def next_pair(h: History) -> Pair:
        if h.votes == ():
            return (2, 3)
        if h.votes == ((3, 2),):
            return (3, 4)
        if h.votes == ((3, 2), (4, 3)):
            return (1, 4)
        return insertion_sort_next(h)

    return Strategy("gambit", next_pair)


def first_pair_strategy(pair: Pair) -> Strategy:
    """Offers ``pair`` first, then falls back to insertion sort."""

    def next_pair(h: History) -> Pair:
        if h.votes == ():
            return pair
        return insertion_sort_next(h)

    return Strategy(f"first-{pair[0]}-{pair[1]}", next_pair)


@dataclass
class Verdict:
    """Pass/fail outcome of a strategy-level sweep, with a counterexample."""

    ok: bool
    detail: str = ""
    counterexample: Optional[dict] = None


def is_strategy_efficient(strategy: Strategy, n: int, bound: int = 6) -> Verdict:
    """Play against every tournament; pass iff every outcome is will-efficient."""
    if n > bound:
        raise EnumerationBoundError(f"n={n} exceeds bound {bound}")
    for will in all_tournaments(n):
        _, outcome = play(strategy, will)
        pair = efficiency_violation(will, outcome)
        if pair:
            return Verdict(
                False,
                f"{strategy.name} reaches an inefficient outcome",
                {"will": will, "outcome": outcome, "pair": pair},
            )
    return Verdict(True, f"{strategy.name} is efficient at n={n}")


def is_strategy_regret_free(strategy: Strategy, n: int, bound: int = 5) -> Verdict:
    """Play against every tournament; pass iff every outcome is unimprovable
    within the enumerated feasible set."""
    if n > bound:
        raise EnumerationBoundError(f"n={n} exceeds bound {bound}")
    pref = chain_ranking(n)
    for will in all_tournaments(n):
        _, outcome = play(strategy, will)
        base = right_pairs_mask(outcome, pref)
        for other in enumerate_feasible(will).rankings:
            if other != outcome and base & ~right_pairs_mask(other, pref) == 0:
                return Verdict(
                    False,
                    f"{strategy.name} has an improvable outcome",
                    {"will": will, "outcome": outcome, "improving": other},
                )
    return Verdict(True, f"{strategy.name} is regret-free at n={n}")


def never_errs(strategy: Strategy, n: int, bound: int = 5) -> Verdict:
    """Play against every tournament; pass iff no on-path offer misses an
    opportunity or takes a risk."""
    if n > bound:
        raise EnumerationBoundError(f"n={n} exceeds bound {bound}")
    for will in all_tournaments(n):
        h, _ = play(strategy, will)
        protos = h.protos()
        for t, (winner, loser) in enumerate(h.votes):
            x, y = min(winner, loser), max(winner, loser)
            cls = classify_pair(protos[t], x, y)
            if not cls.is_clean:
                return Verdict(
                    False,
                    f"{strategy.name} errs at step {t + 1}",
                    {
                        "will": will,
                        "history": h.votes[:t],
                        "pair": (x, y),
                        "classification": cls,
                    },
                )
    return Verdict(True, f"{strategy.name} never errs at n={n}")


@dataclass
class EquivalenceReport:
    """Outcome and offered-vote comparison of two strategies."""

    ok: bool
    same_vote_sets: bool
    order_difference: Optional[Tournament]
    counterexample: Optional[dict] = None

    @property
    def detail(self) -> str:
        parts = ["outcome-equivalent" if self.ok else "outcomes differ"]
        parts.append("same vote sets" if self.same_vote_sets else "vote sets differ")
        if self.order_difference is not None:
            parts.append("vote order differs somewhere")
        return ", ".join(parts)


def outcome_equivalent(s1: Strategy, s2: Strategy, n: int, bound: int = 6) -> EquivalenceReport:
    """Compare outcomes on every tournament, and report whether the two
    offer identical vote sets (they must, if outcome-equivalent) and
    whether the offer order ever differs."""
    if n > bound:
        raise EnumerationBoundError(f"n={n} exceeds bound {bound}")
    same_sets = True
    order_diff: Optional[Tournament] = None
    for will in all_tournaments(n):
        h1, r1 = play(s1, will)
        h2, r2 = play(s2, will)
        if r1 != r2:
            return EquivalenceReport(
                False, False, order_diff, {"will": will, "outcomes": (r1, r2)}
            )
        p1, p2 = h1.offered_pairs(), h2.offered_pairs()
        if sorted(p1) != sorted(p2):
            same_sets = False
        elif p1 != p2 and order_diff is None:
            order_diff = will
    return EquivalenceReport(True, same_sets, order_diff)


def reachable_histories(n: int) -> list[History]:
    """Every valid history, breadth-first (each is reachable by some strategy)."""
    out: list[History] = []
    frontier = [History.empty(n)]
    while frontier:
        out.extend(frontier)
        nxt: list[History] = []
        for h in frontier:
            if h.is_terminal:
                continue
            for x, y in h.proto.unranked_pairs():
                nxt.append(h.extend(x, y))
                nxt.append(h.extend(y, x))
        frontier = nxt
    return out


def enumerate_strategies(n: int) -> list[Strategy]:
    """All deterministic strategies as decision tables over the reachable
    non-terminal histories.  Tractable only at n=3 (192 tables)."""
    if n != 3:
        raise EnumerationBoundError("strategy enumeration is only supported at n=3")
    nonterminal = [h for h in reachable_histories(n) if not h.is_terminal]
    keys = [h.votes for h in nonterminal]
    options = [h.proto.unranked_pairs() for h in nonterminal]
    strategies = []
    for idx, combo in enumerate(itertools.product(*options)):
        strategies.append(table_strategy(f"table-{idx}", dict(zip(keys, combo))))
    return strategies


def efficient_over_general_wills(strategy: Strategy, n: int, bound: int = 4) -> Verdict:
    """Indecisive-vote extension: play against every total irreflexive will
    (3 states per pair); pass iff every outcome is will-efficient."""
    if n > bound:
        raise EnumerationBoundError(f"n={n} exceeds bound {bound}")
    for will in all_general_wills(n):
        _, outcome = play(strategy, will)
        pair = efficiency_violation(will, outcome)
        if pair:
            return Verdict(
                False,
                f"{strategy.name} is inefficient under an indecisive will",
                {"will": will, "outcome": outcome, "pair": pair},
            )
    return Verdict(True, f"{strategy.name} is efficient over general wills at n={n}")
