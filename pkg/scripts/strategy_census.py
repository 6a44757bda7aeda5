#!/usr/bin/env python3
"""Census of the n=3 strategy space: how many tables pass each property,
and the exact dominance counts of the named strategies."""

from pairvote.lexicographic import lex_stats
from pairvote.strategies import (
    enumerate_strategies,
    greedy_error_free,
    insertion_sort,
    is_strategy_efficient,
    is_strategy_regret_free,
    never_errs,
    outcome_equivalent,
    recursive_amendment,
)


def main() -> None:
    strategies = enumerate_strategies(3)
    efficient = [s for s in strategies if is_strategy_efficient(s, 3).ok]
    regret_free = [s for s in strategies if is_strategy_regret_free(s, 3).ok]
    error_free = [s for s in strategies if never_errs(s, 3).ok]
    sort_like = [s for s in strategies if outcome_equivalent(s, insertion_sort(), 3).ok]
    print(f"tables: {len(strategies)}")
    print(f"efficient: {len(efficient)}  regret-free: {len(regret_free)}  never-errs: {len(error_free)}")
    print(f"outcome-equivalent to insertion sort: {len(sort_like)}")
    for s in (insertion_sort(), recursive_amendment(), greedy_error_free()):
        stats = lex_stats(s, 3)
        print(f"{s.name}: counts(k=1)={stats.counts[1]} counts(k=2)={stats.counts[2]}")


if __name__ == "__main__":
    main()
