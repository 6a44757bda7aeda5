"""Live chair sessions: append-only persistence, stepping, recommendations.

A session wraps one protocol run for a chair with an arbitrary preference
over her own labels.  Internally everything is relabelled so that label k
is her k-th favourite; the boundary translates back.  State is always
derivable from the vote log, which makes undo and audit trivial: undo is
itself an appended record, and replaying a log reproduces the session
byte for byte.
"""

from __future__ import annotations

import json
import os
import threading
import time
import uuid
from dataclasses import dataclass
from typing import Iterable

from .protocol import History
from .relations import ProtocolViolationError, record_vote
from .strategies import (
    PairClassification,
    greedy_error_free_next,
    insertion_sort_next,
    non_error_pairs,
    recursive_amendment_next,
)

ADVISORS = {
    "insertion-sort": insertion_sort_next,
    "recursive-amendment": recursive_amendment_next,
    "greedy": greedy_error_free_next,
}

MAX_SESSION_SIZE = 64


class UnknownSessionError(KeyError):
    pass


class SessionCompleteError(ValueError):
    pass


class BadRequestError(ValueError):
    pass


@dataclass
class Session:
    """One chair session; votes are stored in the chair's own labels."""

    id: str
    n: int
    chair_pref: tuple[int, ...]
    advisor: str
    created_at: str
    updated_at: str
    votes: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        # internal label = preference rank: chair_pref[k-1] is internal k
        self._to_internal = {ext: k + 1 for k, ext in enumerate(self.chair_pref)}

    def internal(self, ext: int) -> int:
        if ext not in self._to_internal:
            raise BadRequestError(f"unknown alternative {ext}")
        return self._to_internal[ext]

    def external(self, internal: int) -> int:
        return self.chair_pref[internal - 1]

    def history(self) -> History:
        h = History.empty(self.n)
        for winner, loser in self.votes:
            h = h.extend(self.internal(winner), self.internal(loser))
        return h

    @property
    def status(self) -> str:
        return "complete" if self.history().is_terminal else "open"

    def to_dict(self) -> dict:
        h = self.history()
        direct = {(w, l) for w, l in h.votes}
        edges = [
            {
                "above": self.external(a),
                "below": self.external(b),
                "source": "vote" if (a, b) in direct else "imposed",
            }
            for a, b in sorted(h.proto.pairs())
        ]
        complete = h.is_terminal
        from .relations import ranking_of

        return {
            "id": self.id,
            "n": self.n,
            "chair_pref": list(self.chair_pref),
            "advisor": self.advisor,
            "status": "complete" if complete else "open",
            "created_at": self.created_at,
            "updated_at": self.updated_at,
            "votes": [{"winner": w, "loser": l} for w, l in self.votes],
            "edges": edges,
            "unranked": [
                [self.external(x), self.external(y)] for x, y in h.proto.unranked_pairs()
            ],
            "ranking": [self.external(x) for x in ranking_of(h.proto).order()]
            if complete
            else None,
        }


def _classification_dict(session: Session, cls: PairClassification) -> dict:
    x, y = cls.pair
    return {
        "pair": [session.external(x), session.external(y)],
        "status": cls.status,
        "miss_witnesses": [session.external(z) for z in cls.miss_witnesses],
        "risk_witnesses": [session.external(z) for z in cls.risk_witnesses],
    }


class SessionStore:
    """Append-only JSONL log of session events, one file for all sessions."""

    def __init__(self, path: str):
        self.path = path
        self._lock = threading.Lock()

    def append(self, record: dict) -> None:
        with self._lock:
            directory = os.path.dirname(os.path.abspath(self.path))
            os.makedirs(directory, exist_ok=True)
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(record, sort_keys=True) + "\n")

    def records(self) -> Iterable[dict]:
        if not os.path.exists(self.path):
            return []
        with open(self.path, encoding="utf-8") as fh:
            return [json.loads(line) for line in fh if line.strip()]


class AdvisorEngine:
    """Session lifecycle over a store; one logical writer per session."""

    def __init__(self, store: SessionStore):
        self.store = store
        self.sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        for record in self.store.records():
            self._apply(record)

    def _apply(self, record: dict) -> Session:
        op = record["op"]
        if op == "create":
            session = Session(
                id=record["id"],
                n=record["n"],
                chair_pref=tuple(record["pref"]),
                advisor=record["advisor"],
                created_at=record["ts"],
                updated_at=record["ts"],
            )
            self.sessions[session.id] = session
            return session
        session = self.sessions[record["id"]]
        if op == "vote":
            session.votes = session.votes + ((record["winner"], record["loser"]),)
        elif op == "undo":
            session.votes = session.votes[:-1]
        else:
            raise ValueError(f"unknown log op {op!r}")
        session.updated_at = record["ts"]
        return session

    @staticmethod
    def _now() -> str:
        ns = time.time_ns()
        base = time.strftime("%Y-%m-%dT%H:%M:%S", time.gmtime(ns // 1_000_000_000))
        return f"{base}.{ns % 1_000_000_000:09d}Z"

    def _log(self, record: dict) -> Session:
        self.store.append(record)
        return self._apply(record)

    def create_session(self, n: int, chair_pref: Iterable[int], advisor: str) -> Session:
        pref = tuple(chair_pref)
        if not 2 <= n <= MAX_SESSION_SIZE:
            raise BadRequestError(f"n must be in 2..{MAX_SESSION_SIZE}")
        if sorted(pref) != list(range(1, n + 1)):
            raise BadRequestError(f"chair_pref must be a permutation of 1..{n}")
        if advisor not in ADVISORS:
            raise BadRequestError(f"advisor must be one of {sorted(ADVISORS)}")
        with self._lock:
            record = {
                "op": "create",
                "id": uuid.uuid4().hex[:12],
                "n": n,
                "pref": list(pref),
                "advisor": advisor,
                "ts": self._now(),
            }
            return self._log(record)

    def get(self, session_id: str) -> Session:
        try:
            return self.sessions[session_id]
        except KeyError:
            raise UnknownSessionError(session_id) from None

    def record_outcome(self, session_id: str, winner: int, loser: int) -> tuple[Session, list[list[int]]]:
        """Record one vote; returns the session plus the transitive
        impositions (new edges beyond the voted one), in chair labels."""
        with self._lock:
            session = self.get(session_id)
            h = session.history()
            if h.is_terminal:
                raise SessionCompleteError("session is complete")
            w, l = session.internal(winner), session.internal(loser)
            before = h.proto
            after = record_vote(before, w, l)  # raises ProtocolViolationError
            implied = [
                [session.external(a), session.external(b)]
                for a, b in sorted(after.pairs())
                if not before.has(a, b) and (a, b) != (w, l)
            ]
            session = self._log(
                {"op": "vote", "id": session_id, "winner": winner, "loser": loser, "ts": self._now()}
            )
            return session, implied

    def undo(self, session_id: str) -> Session:
        with self._lock:
            session = self.get(session_id)
            if not session.votes:
                raise BadRequestError("nothing to undo")
            return self._log({"op": "undo", "id": session_id, "ts": self._now()})

    def recommend(self, session_id: str) -> dict:
        """Full pair classification plus the advisor's next pair.  The
        greedy advisor's choice is clean whenever a clean pair exists."""
        session = self.get(session_id)
        h = session.history()
        if h.is_terminal:
            raise SessionCompleteError("session is complete")
        classified = non_error_pairs(h.proto)
        x, y = ADVISORS[session.advisor](h)
        return {
            "advisor": session.advisor,
            "pair": [session.external(x), session.external(y)],
            "classifications": [_classification_dict(session, c) for c in classified],
        }

    def what_if(self, session_id: str, x: int, y: int) -> dict:
        """Both branches of a hypothetical vote: the transitive impositions
        and the resulting classifications.  Never mutates the session."""
        session = self.get(session_id)
        h = session.history()
        a, b = session.internal(x), session.internal(y)
        if h.proto.has(a, b) or h.proto.has(b, a):
            raise ProtocolViolationError(f"pair ({x}, {y}) is already ranked")
        branches = []
        for winner, loser in ((a, b), (b, a)):
            after = record_vote(h.proto, winner, loser)
            imposed = [
                [session.external(p), session.external(q)]
                for p, q in sorted(after.pairs())
                if not h.proto.has(p, q) and (p, q) != (winner, loser)
            ]
            total = after.count() == session.n * (session.n - 1) // 2
            branches.append(
                {
                    "winner": session.external(winner),
                    "loser": session.external(loser),
                    "imposed": imposed,
                    "classifications": []
                    if total
                    else [
                        _classification_dict(session, c) for c in non_error_pairs(after)
                    ],
                }
            )
        return {"pair": [x, y], "branches": branches}
