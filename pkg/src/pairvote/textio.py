"""Plain-text wire formats: relations as 0/1 grids, rankings as permutations.

Grid format, bit-exact: first line ``n``, then n lines of n characters over
{0,1} with row x column y equal to 1 iff x beats (is related to) y; the
diagonal must be 0.  Rankings serialize as a space-separated permutation,
highest first.
"""

from __future__ import annotations

from .relations import GeneralWill, InvalidRelationError, Ranking, Relation, Tournament


def dump_relation(rel: Relation) -> str:
    lines = [str(rel.n)]
    for i in range(rel.n):
        lines.append("".join("1" if rel.has(i + 1, j + 1) else "0" for j in range(rel.n)))
    return "\n".join(lines) + "\n"


def _parse_grid(text: str) -> tuple[int, tuple[int, ...]]:
    lines = [line.strip() for line in text.strip().splitlines() if line.strip()]
    if not lines:
        raise InvalidRelationError("empty relation text")
    try:
        n = int(lines[0])
    except ValueError as exc:
        raise InvalidRelationError(f"first line must be n, got {lines[0]!r}") from exc
    if len(lines) != n + 1:
        raise InvalidRelationError(f"expected {n} rows, got {len(lines) - 1}")
    rows = []
    for x, line in enumerate(lines[1:], start=1):
        if len(line) != n or set(line) - {"0", "1"}:
            raise InvalidRelationError(f"row {x} must be {n} characters over 0/1: {line!r}")
        if line[x - 1] != "0":
            raise InvalidRelationError(f"diagonal must be 0 (row {x})")
        rows.append(sum(1 << j for j, c in enumerate(line) if c == "1"))
    return n, tuple(rows)


def parse_relation(text: str) -> Relation:
    n, rows = _parse_grid(text)
    return Relation(n, rows)


def parse_tournament(text: str) -> Tournament:
    n, rows = _parse_grid(text)
    return Tournament(n, rows)


def parse_general_will(text: str) -> GeneralWill:
    n, rows = _parse_grid(text)
    return GeneralWill(n, rows)


def dump_ranking(r: Ranking) -> str:
    return " ".join(str(x) for x in r.order())


def parse_ranking(text: str) -> Ranking:
    try:
        order = [int(tok) for tok in text.split()]
    except ValueError as exc:
        raise InvalidRelationError(f"ranking must be integer labels: {text!r}") from exc
    return Ranking.from_order(order)
