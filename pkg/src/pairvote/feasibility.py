"""Feasibility, efficiency and unimprovability oracles over tournaments.

A ranking is feasible under a will exactly when each of its adjacent pairs
is decided the same way by the will, i.e. when the ranking traces a
directed Hamiltonian path of the will.  Everything here is pure;
tournament-level sweeps parallelize trivially.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .relations import (
    Ranking,
    Relation,
    Tournament,
    adjacent_pairs,
    chain_ranking,
    pair_slots,
    right_pairs_mask,
    tournament_from_code,
)

DEFAULT_FEASIBLE_BOUND = 10


class EnumerationBoundError(RuntimeError):
    """An exhaustive enumeration was requested beyond its configured bound."""


class InfeasibleRankingError(ValueError):
    """Unimprovability was asked about a ranking the will cannot produce."""


@dataclass(frozen=True)
class FeasibleSet:
    """All rankings reachable under a will: its directed Hamiltonian paths."""

    will: Tournament
    rankings: tuple[Ranking, ...]


def is_feasible(will: Relation, r: Ranking) -> bool:
    return all(will.has(x, y) for x, y in adjacent_pairs(r))


def enumerate_feasible(will: Tournament, bound: int = DEFAULT_FEASIBLE_BOUND) -> FeasibleSet:
    """Depth-first search over directed Hamiltonian paths, ascending label
    order, so the result order is deterministic."""
    n = will.n
    if n > bound:
        raise EnumerationBoundError(
            f"feasible-set enumeration is exponential; n={n} exceeds bound {bound}"
        )
    rows = will.rows
    full = (1 << n) - 1
    found: list[Ranking] = []
    prefix = [0] * n

    def walk(last: int, visited: int, depth: int) -> None:
        if visited == full:
            found.append(Ranking.from_order(prefix))
            return
        succ = rows[last - 1] & ~visited
        while succ:
            low = succ & -succ
            nxt = low.bit_length()
            prefix[depth] = nxt
            walk(nxt, visited | low, depth + 1)
            succ ^= low

    for start in range(1, n + 1):
        prefix[0] = start
        walk(start, 1 << (start - 1), 1)
    return FeasibleSet(will, tuple(found))


def efficiency_violation(
    will: Relation, r: Ranking, pref: Ranking | None = None
) -> tuple[int, int] | None:
    """First pair on which chair and will agree but ``r`` disagrees, or None."""
    pref = pref or chain_ranking(r.n)
    for x in range(1, r.n + 1):
        bad = pref.rows[x - 1] & will.rows[x - 1] & ~r.rows[x - 1]
        if bad:
            return (x, (bad & -bad).bit_length())
    return None


def is_w_efficient(will: Relation, r: Ranking, pref: Ranking) -> bool:
    """True iff ``r`` ranks x above y whenever both pref and will do.

    Accepts tournaments and general wills: an indecisive pair agrees with
    the chair in her preferred direction, so it still binds.
    """
    return efficiency_violation(will, r, pref) is None


def is_unimprovable(
    will: Tournament,
    r: Ranking,
    pref: Ranking,
    feasible: FeasibleSet | None = None,
) -> bool:
    """True iff no other feasible ranking is more aligned with ``pref``."""
    if not is_feasible(will, r):
        raise InfeasibleRankingError(
            "unimprovability is only defined for feasible rankings"
        )
    fs = feasible or enumerate_feasible(will)
    base = right_pairs_mask(r, pref)
    for other in fs.rankings:
        if other != r and base & ~right_pairs_mask(other, pref) == 0:
            return False
    return True


def chair_benefits(will: Tournament, pref: Ranking) -> bool:
    """True iff some feasible ranking is not unimprovable, i.e. setting the
    agenda matters.  Equals :func:`relations.has_cycle` for every pref."""
    masks = [right_pairs_mask(r, pref) for r in enumerate_feasible(will).rankings]
    return any(
        i != j and m & ~masks[j] == 0
        for i, m in enumerate(masks)
        for j in range(len(masks))
    )


@dataclass(frozen=True)
class FractionStats:
    """Outcome of an unimprovable-fraction estimate."""

    n: int
    trials: int
    feasible_checked: int
    fraction: float

    def report(self) -> str:
        return (
            f"n={self.n} trials={self.trials} "
            f"feasible_checked={self.feasible_checked} "
            f"unimprovable_fraction={self.fraction:.6f}"
        )


def _unimprovable_count(masks: list[int]) -> int:
    return sum(
        1
        for i, m in enumerate(masks)
        if not any(j != i and m & ~masks[j] == 0 for j in range(len(masks)))
    )


def unimprovable_fraction(n: int, trials: int, seed: int = 0) -> FractionStats:
    """Estimate the chance that a feasible ranking is unimprovable.

    ``trials == 0`` enumerates every tournament and every feasible ranking
    (exact; n <= 6).  Otherwise samples: a uniform tournament, then a
    uniform member of its enumerated feasible set.  Deterministic per seed.
    """
    if n < 3:
        raise ValueError("need at least 3 alternatives")
    pref = chain_ranking(n)
    if trials == 0:
        if n > 6:
            raise EnumerationBoundError(f"exact mode enumerates 2^{n*(n-1)//2} tournaments")
        feas_total = 0
        unimp_total = 0
        for code in range(1 << (n * (n - 1) // 2)):
            will = tournament_from_code(n, code)
            masks = [right_pairs_mask(r, pref) for r in enumerate_feasible(will).rankings]
            feas_total += len(masks)
            unimp_total += _unimprovable_count(masks)
        return FractionStats(n, 0, feas_total, unimp_total / feas_total)

    rng = random.Random(seed)
    slots = len(pair_slots(n))
    hits = 0
    for _ in range(trials):
        will = tournament_from_code(n, rng.getrandbits(slots))
        rankings = enumerate_feasible(will, bound=max(DEFAULT_FEASIBLE_BOUND, n)).rankings
        masks = [right_pairs_mask(r, pref) for r in rankings]
        i = rng.randrange(len(masks))
        if not any(j != i and masks[i] & ~masks[j] == 0 for j in range(len(masks))):
            hits += 1
    return FractionStats(n, trials, trials, hits / trials)
