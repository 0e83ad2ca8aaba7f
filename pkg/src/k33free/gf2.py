"""Exact linear algebra over GF(2) with int bitsets."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator


@dataclass
class Gf2System:
    """A system of linear equations over GF(2).

    Each row is a (support, rhs) pair: the variables in ``support`` sum to
    ``rhs``.  Duplicate rows are harmless.
    """

    n_vars: int
    rows: list[tuple[frozenset[int], int]] = field(default_factory=list)

    def add_row(self, support: Iterable[int], rhs: int) -> None:
        sup = frozenset(support)
        if any(v < 0 or v >= self.n_vars for v in sup):
            raise ValueError("variable index out of range")
        if rhs not in (0, 1):
            raise ValueError("rhs must be a bit")
        self.rows.append((sup, rhs))

    def check(self, vector: tuple[int, ...]) -> bool:
        """Re-substitution: does the 0/1 vector satisfy every row?"""
        return all(
            sum(vector[v] for v in sup) % 2 == rhs for sup, rhs in self.rows
        )

    def dump(self) -> str:
        """Debug format: one row per line, "i+j+k = b"."""
        lines = []
        for sup, rhs in self.rows:
            lhs = "+".join(str(v) for v in sorted(sup)) or "0"
            lines.append(f"{lhs} = {rhs}")
        return "\n".join(lines)


@dataclass
class Gf2SolutionSpace:
    """Affine solution space: particular solution plus kernel basis."""

    n_vars: int
    particular: tuple[int, ...] | None
    basis: list[tuple[int, ...]]

    @property
    def consistent(self) -> bool:
        return self.particular is not None

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def count(self) -> int:
        return (1 << self.dimension) if self.consistent else 0


def solve(sys: Gf2System) -> Gf2SolutionSpace:
    """Gaussian elimination with deterministic pivoting (lowest index first).

    Inconsistency is reported as ``particular is None``, not as an error.
    """
    n = sys.n_vars
    # pack each row as an int: bits 0..n-1 the support, bit n the rhs
    packed = []
    for sup, rhs in sys.rows:
        word = 0
        for v in sup:
            word |= 1 << v
        word |= rhs << n
        packed.append(word)

    pivot_of_col: dict[int, int] = {}
    reduced: list[int] = []
    for word in packed:
        for col, row_idx in pivot_of_col.items():
            if word >> col & 1:
                word ^= reduced[row_idx]
        if word == 0:
            continue
        low = (word & ((1 << n) - 1))
        if low == 0:
            # 0 = 1
            return Gf2SolutionSpace(n, None, [])
        col = (low & -low).bit_length() - 1
        # back-substitute into existing rows
        for i, other in enumerate(reduced):
            if other >> col & 1:
                reduced[i] = other ^ word
        pivot_of_col[col] = len(reduced)
        reduced.append(word)

    pivots = sorted(pivot_of_col)
    free_cols = [c for c in range(n) if c not in pivot_of_col]

    particular = [0] * n
    for col in pivots:
        particular[col] = reduced[pivot_of_col[col]] >> n & 1

    basis = []
    for f in free_cols:
        vec = [0] * n
        vec[f] = 1
        for col in pivots:
            if reduced[pivot_of_col[col]] >> f & 1:
                vec[col] = 1
        basis.append(tuple(vec))
    return Gf2SolutionSpace(n, tuple(particular), basis)


def enumerate_solutions(
    space: Gf2SolutionSpace, limit: int | None = None
) -> Iterator[tuple[int, ...]]:
    """Gray-code walk of particular + span(basis), up to ``limit`` vectors."""
    if not space.consistent:
        raise ValueError("cannot enumerate an inconsistent system")
    assert space.particular is not None
    current = list(space.particular)
    total = 1 << space.dimension
    emitted = 0
    for i in range(total):
        if limit is not None and emitted >= limit:
            return
        yield tuple(current)
        emitted += 1
        if i + 1 < total:
            # Gray code: flip the basis vector indexed by the lowest set bit
            b = ((i + 1) & -(i + 1)).bit_length() - 1
            vec = space.basis[b]
            for j, bit in enumerate(vec):
                if bit:
                    current[j] ^= 1
