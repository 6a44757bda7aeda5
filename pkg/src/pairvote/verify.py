"""Desk-scale exhaustive verification of the library's headline claims.

Each checker returns a :class:`CheckResult` whose ``dump()`` serializes any
counterexample in the tournament text format, so the CLI can exit 1 with a
reproducible artifact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from . import textio
from .feasibility import enumerate_feasible, is_w_efficient
from .protocol import History
from .relations import (
    ProtoRanking,
    Ranking,
    Relation,
    Tournament,
    all_tournaments,
    chain_ranking,
    record_vote,
)
from .lexicographic import f_ell_counts, is_lexicographic
from .strategies import (
    Verdict,
    classify_pair,
    enumerate_strategies,
    gambit_strategy,
    efficient_over_general_wills,
    insertion_sort,
    is_strategy_efficient,
    is_strategy_regret_free,
    never_errs,
    non_error_pairs,
    outcome_equivalent,
    recursive_amendment,
)


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str
    artifacts: list[tuple[str, Relation | Ranking | str]] = field(default_factory=list)

    def dump(self) -> str:
        lines = [f"{self.name}: {'pass' if self.ok else 'FAIL'} ({self.detail})"]
        for label, value in self.artifacts:
            if isinstance(value, Ranking):
                lines.append(f"{label}: {textio.dump_ranking(value)}")
            elif isinstance(value, Relation):
                lines.append(f"{label}:")
                lines.append(textio.dump_relation(value).rstrip("\n"))
            else:
                lines.append(f"{label}: {value}")
        return "\n".join(lines) + "\n"


def _from_verdict(name: str, verdict: Verdict) -> CheckResult:
    artifacts = []
    if verdict.counterexample:
        for key, value in verdict.counterexample.items():
            if isinstance(value, (Relation, Ranking)):
                artifacts.append((key, value))
            else:
                artifacts.append((key, repr(value)))
    return CheckResult(name, verdict.ok, verdict.detail, artifacts)


def check_thm1(n: int) -> CheckResult:
    """Insertion sort reaches a will-efficient outcome under every tournament."""
    return _from_verdict(f"thm1(n={n})", is_strategy_efficient(insertion_sort(), n, bound=max(6, n)))


def check_thm23(n: int = 3) -> CheckResult:
    """Over the full strategy enumeration, the regret-free, efficient and
    never-errs strategy sets coincide."""
    strategies = enumerate_strategies(n)
    for s in strategies:
        eff = is_strategy_efficient(s, n).ok
        reg = is_strategy_regret_free(s, n).ok
        err = never_errs(s, n).ok
        if not (eff == reg == err):
            return CheckResult(
                f"thm23(n={n})",
                False,
                f"{s.name}: efficient={eff} regret_free={reg} never_errs={err}",
            )
    count = sum(1 for s in strategies if is_strategy_efficient(s, n).ok)
    return CheckResult(
        f"thm23(n={n})",
        True,
        f"{len(strategies)} strategies enumerated, {count} regret-free; the three sets coincide",
    )


def error_free_sequence_to(will: Tournament, target: Ranking) -> Optional[History]:
    """An error-free vote sequence whose play under ``will`` yields ``target``.

    Greedy: at each step offer any unranked pair on which will and target
    agree and whose offer commits no error.  For a feasible efficient
    target such a pair always exists, and every voted edge stays inside the
    target, so the closure terminates at it.
    """
    h = History.empty(will.n)
    while not h.is_terminal:
        progressed = False
        for x, y in h.proto.unranked_pairs():
            a, b = (x, y) if target.has(x, y) else (y, x)
            if will.has(a, b) and classify_pair(h.proto, x, y).is_clean:
                h = h.extend(a, b)
                progressed = True
                break
        if not progressed:
            return None
    return h if h.proto.rows == target.rows else None


def check_prop1(n: int) -> CheckResult:
    """Every feasible efficient ranking is reached by some error-free vote
    sequence (hence by some regret-free strategy)."""
    pref = chain_ranking(n)
    checked = 0
    for will in all_tournaments(n):
        for r in enumerate_feasible(will).rankings:
            if not is_w_efficient(will, r, pref):
                continue
            checked += 1
            if error_free_sequence_to(will, r) is None:
                return CheckResult(
                    f"prop1(n={n})",
                    False,
                    "no error-free sequence reaches a feasible efficient ranking",
                    [("will", will), ("target", r)],
                )
    return CheckResult(f"prop1(n={n})", True, f"{checked} feasible efficient rankings all reached")


def error_free_protos(n: int) -> list[ProtoRanking]:
    """Proto-rankings reachable by offering only clean pairs, deduplicated."""
    seen = {ProtoRanking.empty(n).rows: ProtoRanking.empty(n)}
    frontier = [ProtoRanking.empty(n)]
    total = n * (n - 1) // 2
    while frontier:
        nxt = []
        for proto in frontier:
            if proto.count() == total:
                continue
            for cls in non_error_pairs(proto):
                if not cls.is_clean:
                    continue
                x, y = cls.pair
                for winner, loser in ((x, y), (y, x)):
                    new = record_vote(proto, winner, loser)
                    if new.rows not in seen:
                        seen[new.rows] = new
                        nxt.append(new)
        frontier = nxt
    return list(seen.values())


def check_prop2(n: int) -> CheckResult:
    """Every proto-ranking reachable by error-free play admits a clean pair."""
    count = 0
    for proto in error_free_protos(n):
        if proto.count() == n * (n - 1) // 2:
            continue
        count += 1
        if not any(c.is_clean for c in non_error_pairs(proto)):
            return CheckResult(
                f"prop2(n={n})",
                False,
                "an error-free state admits no clean pair",
                [("proto", proto)],
            )
    return CheckResult(f"prop2(n={n})", True, f"{count} error-free states all admit a clean pair")


def check_thm4(n: int) -> CheckResult:
    """Exact first-win counts match 2^(pairs-l) for insertion sort, and the
    lexicographic verdicts come out as expected (gambit checked at n=4)."""
    slots = n * (n - 1) // 2
    for k in range(1, n - 1):
        counts = f_ell_counts(insertion_sort(), n, k)
        expected = tuple(1 << (slots - ell) for ell in range(1, n - k + 1))
        if counts != expected:
            return CheckResult(
                f"thm4(n={n})", False, f"F_l counts for k={k}: {counts} != {expected}"
            )
    for s in (insertion_sort(), recursive_amendment()):
        verdict = is_lexicographic(s, n)
        if not verdict.ok:
            return _from_verdict(f"thm4(n={n})", verdict)
    if n == 4:
        if is_lexicographic(gambit_strategy(), n).ok:
            return CheckResult(f"thm4(n={n})", False, "gambit strategy passed but must fail")
    return CheckResult(f"thm4(n={n})", True, "F_l identities exact; lexicographic verdicts as expected")


def check_prop3(n: int) -> CheckResult:
    """Recursive amendment is outcome-equivalent to insertion sort, offers
    the same vote sets, and (from n=4) sometimes in a different order."""
    report = outcome_equivalent(insertion_sort(), recursive_amendment(), n, bound=max(6, n))
    if not report.ok or not report.same_vote_sets:
        result = CheckResult(f"prop3(n={n})", False, report.detail)
        if report.counterexample:
            result.artifacts.append(("will", report.counterexample["will"]))
        return result
    if n >= 4 and report.order_difference is None:
        return CheckResult(f"prop3(n={n})", False, "expected a vote-order difference")
    return CheckResult(f"prop3(n={n})", True, report.detail)


def check_s3(n: int) -> CheckResult:
    """With indecisive votes resolved in the chair's interest, insertion
    sort stays efficient over every total irreflexive will; the
    against-interest variant must fail somewhere."""
    good = efficient_over_general_wills(insertion_sort(), n)
    if not good.ok:
        return _from_verdict(f"s3(n={n})", good)
    bad = efficient_over_general_wills(insertion_sort(indecisive="against"), n)
    if bad.ok:
        return CheckResult(f"s3(n={n})", False, "against-interest resolution passed but must fail")
    total = 3 ** (n * (n - 1) // 2)
    return CheckResult(
        f"s3(n={n})",
        True,
        f"in-interest efficient over all {total} wills; against-interest has a counterexample",
    )


CHECKS: dict[str, tuple[Callable[[int], CheckResult], int]] = {
    "thm1": (check_thm1, 6),
    "thm23": (lambda n: check_thm23(n), 3),
    "prop1": (check_prop1, 4),
    "prop2": (check_prop2, 4),
    "thm4": (check_thm4, 4),
    "prop3": (check_prop3, 5),
    "s3": (check_s3, 4),
}


def run_check(name: str, n: Optional[int] = None) -> CheckResult:
    fn, default_n = CHECKS[name]
    return fn(n if n is not None else default_n)
