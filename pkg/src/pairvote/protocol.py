"""The sequential voting protocol: histories, chair strategies, play-out.

A history is the ordered list of (winner, loser) vote records; the running
proto-ranking is the transitive closure of its edges.  A strategy maps each
non-terminal history to an unranked pair, plus (for indecisive-vote wills)
a resolution rule.  All values are immutable; play-outs are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .relations import (
    ProtoRanking,
    ProtocolViolationError,
    Ranking,
    Relation,
    record_vote,
)

Pair = tuple[int, int]
Vote = tuple[int, int]


class TerminalHistoryError(ValueError):
    """A next pair was requested after the ranking was already total."""


class IndecisiveVoteError(ValueError):
    """An indecisive vote occurred and the strategy has no resolution rule."""


class History:
    """An ordered list of (winner, loser) votes with the running proto-ranking.

    Each recorded pair must have been unranked when offered; the history is
    terminal once the proto-ranking is total.
    """

    __slots__ = ("n", "votes", "proto")

    def __init__(self, n: int, votes: tuple[Vote, ...] = (), proto: Optional[ProtoRanking] = None):
        self.n = n
        self.votes = votes
        if proto is None:
            proto = ProtoRanking.empty(n)
            for winner, loser in votes:
                proto = record_vote(proto, winner, loser)
        self.proto = proto

    @classmethod
    def empty(cls, n: int) -> "History":
        return cls(n)

    def extend(self, winner: int, loser: int) -> "History":
        return History(self.n, self.votes + ((winner, loser),), record_vote(self.proto, winner, loser))

    @property
    def is_terminal(self) -> bool:
        return self.proto.count() == self.n * (self.n - 1) // 2

    def offered_pairs(self) -> list[Pair]:
        """The unordered pairs offered so far, in offer order."""
        return [(min(w, l), max(w, l)) for w, l in self.votes]

    def protos(self) -> list[ProtoRanking]:
        """The derived proto-ranking sequence R_0 .. R_T, recomputed."""
        out = [ProtoRanking.empty(self.n)]
        for winner, loser in self.votes:
            out.append(record_vote(out[-1], winner, loser))
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, History) and self.n == other.n and self.votes == other.votes

    def __hash__(self) -> int:
        return hash((self.n, self.votes))

    def __repr__(self) -> str:
        return f"History(n={self.n}, votes={self.votes})"


@dataclass(frozen=True)
class Strategy:
    """A chair policy: next unranked pair per history, plus an optional
    indecisive-vote resolution (an ordered (winner, loser))."""

    name: str
    next_pair: Callable[[History], Pair]
    resolve_indecisive: Optional[Callable[[History, Pair], Vote]] = None


def play(strategy: Strategy, will: Relation) -> tuple[History, Ranking]:
    """Run the protocol to termination: the strategy offers pairs, the will
    resolves them, transitivity is imposed after each vote.

    Under a general will, a mutual pair is resolved by the strategy's
    resolution rule.  A strategy returning a ranked pair is a protocol
    violation.  Termination is guaranteed: each vote ranks at least one
    new pair.
    """
    h = History.empty(will.n)
    while not h.is_terminal:
        x, y = strategy.next_pair(h)
        if x == y or h.proto.has(x, y) or h.proto.has(y, x):
            raise ProtocolViolationError(
                f"strategy {strategy.name!r} offered ranked pair ({x}, {y})"
            )
        forward = will.has(x, y)
        backward = will.has(y, x)
        if forward and backward:
            if strategy.resolve_indecisive is None:
                raise IndecisiveVoteError(
                    f"strategy {strategy.name!r} cannot resolve the indecisive pair ({x}, {y})"
                )
            winner, loser = strategy.resolve_indecisive(h, (x, y))
            if {winner, loser} != {x, y}:
                raise ProtocolViolationError("resolution must order the offered pair")
        elif forward:
            winner, loser = x, y
        elif backward:
            winner, loser = y, x
        else:
            raise ProtocolViolationError(f"will does not decide pair ({x}, {y})")
        h = h.extend(winner, loser)
    return h, Ranking._trusted(h.n, h.proto.rows)
