"""Binary relations over labelled alternatives, stored as row bitmasks.

Alternatives carry labels 1..n, and the chair's preference is fixed by
convention as 1 > 2 > ... > n, so a label doubles as its preference rank.
Any other chair preference is handled by relabelling at the boundary
(see :func:`relabel`).

``rows[i]`` holds one machine word per alternative: bit ``j`` is set iff
alternative ``i + 1`` is related to alternative ``j + 1``.  Equality,
subset and closure are word operations, which is what keeps exhaustive
sweeps over all ``2**(n*(n-1)//2)`` tournaments cheap.

Role types refine the raw :class:`Relation`:

* :class:`ProtoRanking`: irreflexive and transitive (asymmetry follows);
  a partially built ranking.
* :class:`Ranking`: a total proto-ranking, i.e. a strict order of all
  alternatives.
* :class:`Tournament`: total, asymmetric, irreflexive; one winner per pair.
* :class:`GeneralWill`: total and irreflexive; mutual pairs mark
  indecisive votes.

Role constructors validate and raise :class:`InvalidRelationError`.  The
raw :class:`Relation` accepts any bits, self-loops included: the
transitive closure of a cycle legitimately contains them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_ALTERNATIVES = 64


class InvalidRelationError(ValueError):
    """A relation failed the invariants of its declared role."""


class ProtocolViolationError(ValueError):
    """A vote was offered on a pair the protocol forbids."""


def _bit(label: int) -> int:
    return 1 << (label - 1)


def _members(mask: int) -> Iterator[int]:
    """Labels whose bit is set in ``mask``."""
    while mask:
        low = mask & -mask
        yield low.bit_length()
        mask ^= low


@dataclass(frozen=True)
class Relation:
    """A binary relation on alternatives 1..n."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 2 <= self.n <= MAX_ALTERNATIVES:
            raise InvalidRelationError(
                f"alternative count must be in 2..{MAX_ALTERNATIVES}, got {self.n}"
            )
        if len(self.rows) != self.n:
            raise InvalidRelationError("expected one row mask per alternative")
        full = (1 << self.n) - 1
        if any(row & ~full for row in self.rows):
            raise InvalidRelationError("row mask uses bits outside 1..n")

    @classmethod
    def _trusted(cls, n: int, rows: tuple[int, ...]):
        # Fast path for values correct by construction (closure and protocol
        # outputs); the exhaustive small-n tests back the claim.
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "rows", rows)
        return obj

    @classmethod
    def empty(cls, n: int):
        return cls(n, (0,) * n)

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]):
        rows = [0] * n
        for x, y in pairs:
            rows[x - 1] |= _bit(y)
        return cls(n, tuple(rows))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has(self, x: int, y: int) -> bool:
        return bool(self.rows[x - 1] >> (y - 1) & 1)

    def pairs(self) -> list[tuple[int, int]]:
        return [(i + 1, j) for i in range(self.n) for j in _members(self.rows[i])]

    def count(self) -> int:
        return sum(row.bit_count() for row in self.rows)

    def contains(self, other: "Relation") -> bool:
        return all(o & ~s == 0 for s, o in zip(self.rows, other.rows))

    def unranked_pairs(self) -> list[tuple[int, int]]:
        """Unordered pairs (x, y), x < y, ranked in neither direction."""
        return [
            (i + 1, j + 1)
            for i in range(self.n)
            for j in range(i + 1, self.n)
            if not (self.rows[i] >> j & 1 or self.rows[j] >> i & 1)
        ]

    def is_irreflexive(self) -> bool:
        return all(not row >> i & 1 for i, row in enumerate(self.rows))

    def is_asymmetric(self) -> bool:
        return all(
            not (self.rows[i] >> j & 1 and self.rows[j] >> i & 1)
            for i in range(self.n)
            for j in range(i, self.n)
        )

    def is_total(self) -> bool:
        return all(
            self.rows[i] >> j & 1 or self.rows[j] >> i & 1
            for i in range(self.n)
            for j in range(i + 1, self.n)
        )

    def is_transitive(self) -> bool:
        for i in range(self.n):
            reach = 0
            for j in _members(self.rows[i]):
                reach |= self.rows[j - 1]
            if reach & ~self.rows[i]:
                return False
        return True


@dataclass(frozen=True)
class ProtoRanking(Relation):
    """An irreflexive, transitive relation: a partially built ranking."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if not self.is_irreflexive():
            raise InvalidRelationError("proto-ranking must be irreflexive")
        if not self.is_transitive():
            raise InvalidRelationError("proto-ranking must be transitive")
        # Asymmetry follows: a mutual pair plus transitivity forces a self-loop.


@dataclass(frozen=True)
class Ranking(ProtoRanking):
    """A total proto-ranking: a strict order of all alternatives."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if not self.is_total():
            raise InvalidRelationError("ranking must rank every pair")

    @classmethod
    def from_order(cls, order: Sequence[int]) -> "Ranking":
        """Ranking from labels listed highest first, e.g. [1, 4, 3, 2]."""
        n = len(order)
        if sorted(order) != list(range(1, n + 1)):
            raise InvalidRelationError(f"not a permutation of 1..{n}: {order!r}")
        rows = [0] * n
        below = 0
        for label in reversed(order):
            rows[label - 1] = below
            below |= _bit(label)
        return cls(n, tuple(rows))

    def order(self) -> tuple[int, ...]:
        """Labels from highest-ranked to lowest."""
        return tuple(sorted(range(1, self.n + 1), key=lambda x: -self.rows[x - 1].bit_count()))

    def position(self, x: int) -> int:
        """1-based rank of ``x`` (1 = highest)."""
        return self.n - self.rows[x - 1].bit_count()

    def as_tournament(self) -> "Tournament":
        return Tournament._trusted(self.n, self.rows)


@dataclass(frozen=True)
class Tournament(Relation):
    """A total, asymmetric, irreflexive relation: one winner per pair."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if not self.is_irreflexive():
            raise InvalidRelationError("tournament must be irreflexive")
        if not self.is_asymmetric():
            raise InvalidRelationError("tournament must be asymmetric")
        if not self.is_total():
            raise InvalidRelationError("tournament must decide every pair")


@dataclass(frozen=True)
class GeneralWill(Relation):
    """A total, irreflexive relation; mutual pairs mark indecisive votes."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if not self.is_irreflexive():
            raise InvalidRelationError("general will must be irreflexive")
        if not self.is_total():
            raise InvalidRelationError("general will must cover every pair")


def ranking_of(rel: Relation) -> Ranking:
    """Validate ``rel`` as a ranking and return it typed accordingly."""
    if isinstance(rel, Ranking):
        return rel
    return Ranking(rel.n, rel.rows)


def chain_ranking(n: int) -> Ranking:
    """The canonical chair preference 1 > 2 > ... > n."""
    return Ranking.from_order(range(1, n + 1))


def transitive_closure(rel: Relation) -> Relation:
    """Smallest transitive superset of ``rel`` (Warshall reachability)."""
    rows = list(rel.rows)
    for k in range(rel.n):
        kbit = 1 << k
        for i in range(rel.n):
            if rows[i] & kbit:
                rows[i] |= rows[k]
    return Relation._trusted(rel.n, tuple(rows))


def record_vote(proto: ProtoRanking, winner: int, loser: int) -> ProtoRanking:
    """One protocol step: rank winner above loser and impose transitivity.

    Equivalent to the transitive closure of ``proto + (winner, loser)``:
    everything at or above the winner gets ranked above the loser and
    everything below it.  Rejects reflexive or already-ranked pairs.
    """
    n = proto.n
    if winner == loser or not (1 <= winner <= n and 1 <= loser <= n):
        raise ProtocolViolationError(f"bad pair ({winner}, {loser})")
    if proto.has(winner, loser) or proto.has(loser, winner):
        raise ProtocolViolationError(
            f"pair ({winner}, {loser}) is already ranked"
        )
    low = proto.rows[loser - 1] | _bit(loser)
    wbit = _bit(winner)
    rows = list(proto.rows)
    for i in range(n):
        if rows[i] & wbit:
            rows[i] |= low
    rows[winner - 1] |= low
    return ProtoRanking._trusted(n, tuple(rows))


def is_more_aligned(r: Ranking, r_prime: Ranking, pref: Ranking) -> bool:
    """True iff every pair that r_prime ranks the pref-right way, r does too."""
    return all(
        r_prime.rows[i] & pref.rows[i] & ~r.rows[i] == 0 for i in range(r.n)
    )


def is_more_aligned_with(r: Ranking, r_prime: Ranking, rel: Relation) -> bool:
    """`is_more_aligned` with an arbitrary comparator in place of a preference."""
    return all(
        r_prime.rows[i] & rel.rows[i] & ~r.rows[i] == 0 for i in range(r.n)
    )


def right_pairs_mask(r: Ranking, pref: Ranking) -> int:
    """Flat n*n-bit mask of pairs that ``r`` ranks the pref-right way.

    Distinct rankings have distinct masks, and ``r_prime`` is more aligned
    with ``pref`` than ``r`` exactly when its mask contains r's.
    """
    mask = 0
    for i in range(r.n):
        mask |= (r.rows[i] & pref.rows[i]) << (i * r.n)
    return mask


def alignment_subset_check(r: Ranking, r_prime: Ranking, pref: Ranking) -> bool:
    """Alignment via subset maxima: for every non-empty subset of
    alternatives, r's highest member must be weakly pref-better than
    r_prime's.  Agrees with :func:`is_more_aligned` on all inputs.
    """
    n = r.n
    for subset in range(1, 1 << n):
        a = _subset_maximum(r, subset)
        b = _subset_maximum(r_prime, subset)
        if a != b and not pref.has(a, b):
            return False
    return True


def _subset_maximum(r: Ranking, subset: int) -> int:
    for x in _members(subset):
        if r.rows[x - 1] & subset == subset & ~_bit(x):
            return x
    raise AssertionError("total ranking has a maximum on every subset")


def order_interval(r: ProtoRanking, x: int, y: int) -> set[int]:
    """{x, y} plus everything ranked between them.  Requires x above y."""
    if not r.has(x, y):
        raise ProtocolViolationError(f"{x} is not ranked above {y}")
    between = {z for z in range(1, r.n + 1) if r.has(x, z) and r.has(z, y)}
    return {x, y} | between


def adjacent_pairs(r: Ranking) -> list[tuple[int, int]]:
    """The n-1 consecutive pairs of a ranking, highest first."""
    order = r.order()
    return list(zip(order, order[1:]))


def has_cycle(t: Tournament) -> bool:
    """True iff the tournament is not transitive, i.e. contains a 3-cycle."""
    n = t.n
    for x in range(1, n + 1):
        for y in _members(t.rows[x - 1]):
            for z in _members(t.rows[y - 1]):
                if t.has(z, x):
                    return True
    return False


def relabel(rel: Relation, new_label: Sequence[int]) -> Relation:
    """Apply the bijection old -> new_label[old-1] to a relation.

    Preserves the role type: relabelling a tournament yields a tournament.
    """
    n = rel.n
    if sorted(new_label) != list(range(1, n + 1)):
        raise InvalidRelationError(f"not a permutation of 1..{n}: {new_label!r}")
    rows = [0] * n
    for x, y in rel.pairs():
        rows[new_label[x - 1] - 1] |= _bit(new_label[y - 1])
    return type(rel)._trusted(n, tuple(rows))


def pair_slots(n: int) -> list[tuple[int, int]]:
    """Canonical unordered pair order: (1,2), (1,3), ..., (n-1,n)."""
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def tournament_from_code(n: int, code: int) -> Tournament:
    """Tournament from a pair-direction bitcode: bit k set means the
    lower-labelled member of the k-th canonical pair wins."""
    rows = [0] * n
    for k, (i, j) in enumerate(pair_slots(n)):
        if code >> k & 1:
            rows[i - 1] |= _bit(j)
        else:
            rows[j - 1] |= _bit(i)
    return Tournament._trusted(n, tuple(rows))


def all_tournaments(n: int) -> Iterator[Tournament]:
    for code in range(1 << (n * (n - 1) // 2)):
        yield tournament_from_code(n, code)


def all_rankings(n: int) -> Iterator[Ranking]:
    for perm in itertools.permutations(range(1, n + 1)):
        yield Ranking.from_order(perm)


def all_general_wills(n: int) -> Iterator[GeneralWill]:
    """All total irreflexive relations: 3 states per pair (two decisive
    directions plus the indecisive mutual pair)."""
    slots = pair_slots(n)
    for states in itertools.product((0, 1, 2), repeat=len(slots)):
        rows = [0] * n
        for state, (i, j) in zip(states, slots):
            if state != 1:
                rows[i - 1] |= _bit(j)
            if state != 0:
                rows[j - 1] |= _bit(i)
        yield GeneralWill._trusted(n, tuple(rows))
