"""Step sets and brute-force enumeration of quarter-plane walks."""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from .series import Coefficient, TruncatedSeries

TOKENS = ("N", "NE", "E", "SE", "S", "SW", "W", "NW")
VECTORS = ((0, 1), (1, 1), (1, 0), (1, -1), (0, -1), (-1, -1), (-1, 0), (-1, 1))
_TOKEN_BIT = {tok: k for k, tok in enumerate(TOKENS)}
_VECTOR_BIT = {v: k for k, v in enumerate(VECTORS)}


class StepParseError(ValueError):
    """An unknown step token or an invalid step vector."""


@dataclass(frozen=True, order=True)
class StepSet:
    """A set of small steps, stored as a bitmask over ``TOKENS``."""

    mask: int

    def __post_init__(self) -> None:
        if not 0 <= self.mask < 256:
            raise ValueError(f"step bitmask {self.mask} out of range 0..255")

    @classmethod
    def parse(cls, text: str) -> StepSet:
        """Parse a comma-separated token list such as ``"W,S,NE"``."""
        mask = 0
        for raw in text.split(","):
            tok = raw.strip().upper()
            if not tok:
                continue
            if tok not in _TOKEN_BIT:
                raise StepParseError(f"unknown step token {raw.strip()!r}")
            mask |= 1 << _TOKEN_BIT[tok]
        return cls(mask)

    @classmethod
    def from_vectors(cls, vectors: Iterable[tuple[int, int]]) -> StepSet:
        mask = 0
        for v in vectors:
            v = (int(v[0]), int(v[1]))
            if v not in _VECTOR_BIT:
                raise StepParseError(f"invalid step {v}")
            mask |= 1 << _VECTOR_BIT[v]
        return cls(mask)

    @property
    def steps(self) -> tuple[tuple[int, int], ...]:
        return tuple(VECTORS[k] for k in range(8) if self.mask >> k & 1)

    @property
    def tokens(self) -> tuple[str, ...]:
        return tuple(TOKENS[k] for k in range(8) if self.mask >> k & 1)

    def __contains__(self, step: tuple[int, int]) -> bool:
        k = _VECTOR_BIT.get(tuple(step))
        return k is not None and bool(self.mask >> k & 1)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.steps)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __str__(self) -> str:
        return ",".join(self.tokens)

    def reflect(self) -> StepSet:
        """Mirror image in the diagonal, ``(a, b) -> (b, a)``."""
        return StepSet.from_vectors((b, a) for a, b in self.steps)

    def with_step(self, step: tuple[int, int]) -> StepSet:
        return StepSet(self.mask | 1 << _VECTOR_BIT[tuple(step)])


def all_step_sets() -> list[StepSet]:
    """The 255 nonempty step sets in bitmask order."""
    return [StepSet(m) for m in range(1, 256)]


def _advance(grid: list[list[int]], steps, size: int) -> list[list[int]]:
    new = [[0] * size for _ in range(size)]
    for i in range(size):
        row = grid[i]
        for j in range(size):
            c = row[j]
            if not c:
                continue
            for a, b in steps:
                ii, jj = i + a, j + b
                if ii >= 0 and jj >= 0:
                    new[ii][jj] += c
    return new


def _grids(S: StepSet, N: int) -> Iterator[list[list[int]]]:
    size = N + 1
    grid = [[0] * size for _ in range(size)]
    grid[0][0] = 1
    yield grid
    for _ in range(N):
        grid = _advance(grid, S.steps, size)
        yield grid


def enumerate_walks(S: StepSet, N: int) -> TruncatedSeries:
    """Generating series ``Q(x, y, t)`` of quadrant walks, truncated at ``t^N``."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    slices = []
    for grid in _grids(S, N):
        slices.append(
            {(i, j): c for i, row in enumerate(grid) for j, c in enumerate(row) if c}
        )
    return TruncatedSeries(N, tuple(slices))


def count(S: StepSet, i: int, j: int, n: int) -> Coefficient:
    """Number of length-``n`` quadrant walks from the origin ending at ``(i, j)``.

    Runs the DP independently of :func:`enumerate_walks` so the two can be
    cross-checked.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if i < 0 or j < 0 or i > n or j > n:
        return 0
    # states keyed by position; only reachable cells are stored
    state = {(0, 0): 1}
    for _ in range(n):
        nxt: dict[tuple[int, int], int] = {}
        for (p, q), c in state.items():
            for a, b in S.steps:
                if p + a >= 0 and q + b >= 0:
                    key = (p + a, q + b)
                    nxt[key] = nxt.get(key, 0) + c
        state = nxt
    return state.get((i, j), 0)
