"""Exact first-order-stochastic-dominance bookkeeping over all tournaments.

For an alternative k, N_k(W) counts the less-preferred alternatives that a
strategy's outcome under W ranks below k.  A strategy is lexicographically
optimal exactly when, for every k up to n-2 and every threshold m, it
attains the maximal count of tournaments with N_k >= m; insertion sort
attains these maxima, and matching them for all k, m characterises its
outcome-equivalence class.
"""

from __future__ import annotations

from dataclasses import dataclass

from .feasibility import EnumerationBoundError
from .protocol import Strategy, play
from .relations import all_tournaments
from .strategies import Verdict, insertion_sort

LEX_BOUND = 5


@dataclass(frozen=True)
class LexStats:
    """counts[k][m-1] = number of tournaments with N_k >= m."""

    strategy: str
    n: int
    counts: dict[int, tuple[int, ...]]

    def count(self, k: int, m: int) -> int:
        return self.counts[k][m - 1]


def lex_stats(strategy: Strategy, n: int, bound: int = LEX_BOUND) -> LexStats:
    if n > bound:
        raise EnumerationBoundError(f"n={n} exceeds bound {bound}")
    counts = {k: [0] * (n - k) for k in range(1, n)}
    for will in all_tournaments(n):
        _, outcome = play(strategy, will)
        for k in range(1, n):
            worse = ((1 << n) - 1) & ~((1 << k) - 1)
            n_k = (outcome.rows[k - 1] & worse).bit_count()
            for m in range(1, n_k + 1):
                counts[k][m - 1] += 1
    return LexStats(strategy.name, n, {k: tuple(v) for k, v in counts.items()})


def f_ell_counts(strategy: Strategy, n: int, k: int, bound: int = LEX_BOUND) -> tuple[int, ...]:
    """|F_l| for l = 1..n-k: tournaments where the strategy offers at least
    l votes involving k, with k losing the first l-1 and winning the l-th."""
    if n > bound:
        raise EnumerationBoundError(f"n={n} exceeds bound {bound}")
    out = [0] * (n - k)
    for will in all_tournaments(n):
        h, _ = play(strategy, will)
        record = [winner == k for winner, loser in h.votes if k in (winner, loser)]
        for ell in range(1, len(record) + 1):
            if record[ell - 1] and not any(record[: ell - 1]):
                if ell <= n - k:
                    out[ell - 1] += 1
                break
    return tuple(out)


def is_lexicographic(strategy: Strategy, n: int, bound: int = LEX_BOUND) -> Verdict:
    """Pass iff the strategy's counts attain insertion sort's for every
    k <= n-2 and every threshold, which certifies lexicographic optimality
    (and outcome-equivalence to insertion sort)."""
    stats = lex_stats(strategy, n, bound)
    reference = lex_stats(insertion_sort(), n, bound)
    for k in range(1, n - 1):
        if stats.counts[k] != reference.counts[k]:
            return Verdict(
                False,
                f"{strategy.name} is not lexicographic at n={n}",
                {"k": k, "counts": stats.counts[k], "reference": reference.counts[k]},
            )
    return Verdict(True, f"{strategy.name} is lexicographic at n={n}")
