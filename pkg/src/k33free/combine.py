"""Switched combinations of orthogonal latin squares.

Two order-n squares on disjoint letter sets interleave into a 2n-by-2n
square: cell (i, j) reads block (i//2, j//2) of square A_b, where the
selector b = (i + j + S(i//2, j//2)) mod 2 and S is a binary switching
matrix with one bit per block.

For orthogonal inputs every K3,3 witness of a combination spans exactly
six blocks, and flipping the parity of a witness's six-block footprint
destroys it.  Killing every witness of the 0-combination is therefore a
linear system over GF(2): one equation per footprint, asking for odd
switching parity on its blocks.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import Grid, LatinError, LatinRectangle, is_orthogonal, validate
from .gf2 import Gf2System, solve
from .pattern import PatternOccurrence, find_k33, is_k33_free

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SwitchingMatrix:
    n: int
    bits: Grid

    def __post_init__(self):
        if len(self.bits) != self.n or any(len(row) != self.n for row in self.bits):
            raise ValueError("switching matrix must be n x n")
        if any(b not in (0, 1) for row in self.bits for b in row):
            raise ValueError("switching matrix entries must be 0/1")

    @classmethod
    def zeros(cls, n: int) -> "SwitchingMatrix":
        return cls(n, tuple((0,) * n for _ in range(n)))

    @classmethod
    def from_vector(cls, n: int, vec: Sequence[int]) -> "SwitchingMatrix":
        """Row-major bit vector (as produced by the GF(2) solver)."""
        if len(vec) != n * n:
            raise ValueError("vector length must be n*n")
        return cls(n, tuple(tuple(vec[i * n : (i + 1) * n]) for i in range(n)))

    def serialize(self) -> str:
        return "\n".join(" ".join(str(b) for b in row) for row in self.bits) + "\n"

    @classmethod
    def parse(cls, text: str) -> "SwitchingMatrix":
        rows = tuple(
            tuple(int(tok) for tok in line.split())
            for line in text.splitlines()
            if line.strip()
        )
        return cls(len(rows), rows)


@dataclass(frozen=True)
class BlockPattern:
    """Six-block footprint of a K3,3 witness of the 0-combination."""

    blocks: frozenset[tuple[int, int]]
    witness: PatternOccurrence


def switched_combination(
    a0: LatinRectangle, a1: LatinRectangle, s: SwitchingMatrix
) -> LatinRectangle:
    """The 2n-by-2n interleaving of a0 (letters 2l) and a1 (letters 2l+1)."""
    n = a0.n
    if not (a0.is_square and a1.is_square and a1.n == n):
        raise LatinError("inputs must be squares of equal order")
    if s.n != n:
        raise LatinError("switching matrix order must match the squares")
    grids = (a0.rows, a1.rows)
    rows = []
    for i in range(2 * n):
        row = []
        for j in range(2 * n):
            b = (i + j + s.bits[i // 2][j // 2]) % 2
            row.append(2 * grids[b][i // 2][j // 2] + b)
        rows.append(tuple(row))
    return LatinRectangle(tuple(rows))


def block_patterns(
    pair: tuple[LatinRectangle, LatinRectangle], zero_comb: LatinRectangle
) -> list[BlockPattern]:
    """Footprints of all K3,3 witnesses of the 0-combination.

    Orthogonal inputs force every footprint to exactly six blocks; a
    smaller footprint is returned as-is and certifies non-orthogonality.
    """
    orthogonal = is_orthogonal(pair[0], pair[1])
    out = []
    for w in find_k33(zero_comb):
        blocks = frozenset((i // 2, j // 2) for i, j in w.cells)
        if orthogonal and len(blocks) != 6:
            raise LatinError(
                f"orthogonal pair produced a {len(blocks)}-block witness"
            )
        out.append(BlockPattern(blocks, w))
    return out


def build_system(patterns: Iterable[BlockPattern], n: int) -> Gf2System:
    """One equation per footprint: odd switching parity on its six blocks."""
    sys = Gf2System(n_vars=n * n)
    for p in patterns:
        if len(p.blocks) != 6:
            raise LatinError("footprint does not span six blocks")
        sys.add_row({i * n + j for i, j in p.blocks}, 1)
    return sys


@dataclass
class SearchHit:
    index: int
    pair: tuple[LatinRectangle, LatinRectangle]
    switching: SwitchingMatrix
    square: LatinRectangle
    solution_count: int
    kernel_dimension: int


def search_k33_free_combination(
    catalog: Iterable[tuple[LatinRectangle, LatinRectangle]],
) -> list[SearchHit]:
    """Solve the switching system for each pair; emit verified hits.

    The linear system controls six-block witnesses only, so every
    candidate square is re-checked by the generic pattern scan before it
    is emitted.
    """
    hits = []
    for idx, (a0, a1) in enumerate(catalog):
        try:
            validate(a0.rows)
            validate(a1.rows)
            n = a0.n
            if not is_orthogonal(a0, a1):
                log.info("pair %d: not orthogonal, skipped", idx)
                continue
            zero = switched_combination(a0, a1, SwitchingMatrix.zeros(n))
            patterns = block_patterns((a0, a1), zero)
            space = solve(build_system(patterns, n))
            if space.particular is None:
                log.info(
                    "pair %d: system unsolvable (%d patterns)", idx, len(patterns)
                )
                continue
            s = SwitchingMatrix.from_vector(n, space.particular)
            square = switched_combination(a0, a1, s)
            if not is_k33_free(square):
                raise RuntimeError(
                    f"pair {idx}: solved system but combination is not K3,3-free"
                )
            hits.append(
                SearchHit(idx, (a0, a1), s, square, space.count, space.dimension)
            )
        except LatinError as exc:
            log.warning("pair %d: %s", idx, exc)
    return hits
