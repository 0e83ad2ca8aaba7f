"""Detection of forbidden K3,3 configurations and induced K_{t,t} subgraphs.

A witness consists of six cells, two in each of three rows, three columns and
three letters, arranged as

    .  A  B
    A  .  C
    B  C  .

Role-labelled, the cells are (r1,c2,l3), (r2,c3,l1), (r3,c1,l2) in one part
and (r2,c1,l3), (r3,c2,l1), (r1,c3,l2) in the other.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import LatinRectangle

_SYMS = tuple(itertools.permutations((0, 1, 2)))


@dataclass(frozen=True)
class PatternOccurrence:
    """A six-cell K3,3 witness, stored with canonical role labelling."""

    rows: tuple[int, int, int]
    cols: tuple[int, int, int]
    letters: tuple[int, int, int]

    @property
    def cells(self) -> tuple[tuple[int, int], ...]:
        r1, r2, r3 = self.rows
        c1, c2, c3 = self.cols
        return ((r1, c2), (r2, c3), (r3, c1), (r2, c1), (r3, c2), (r1, c3))

    @property
    def parts(self) -> tuple[frozenset[tuple[int, int]], frozenset[tuple[int, int]]]:
        cs = self.cells
        return (frozenset(cs[:3]), frozenset(cs[3:]))

    def cell_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.cells)

    def to_json_dict(self) -> dict:
        return {
            "rows": list(self.rows),
            "cols": list(self.cols),
            "letters": list(self.letters),
            "cells": [list(c) for c in self.cells],
        }


def _canonical_occurrence(rows, cols, letters) -> PatternOccurrence:
    # the six relabellings act as S3 simultaneously on the three index triples;
    # odd permutations swap the two parts
    best = None
    for p in _SYMS:
        cand = (
            tuple(rows[i] for i in p),
            tuple(cols[i] for i in p),
            tuple(letters[i] for i in p),
        )
        if best is None or cand < best:
            best = cand
    return PatternOccurrence(*best)


def find_k33(s: LatinRectangle) -> set[PatternOccurrence]:
    """All K3,3 witnesses of the rectangle, duplicate-free."""
    return _scan(s, stop_first=False)


def is_k33_free(s: LatinRectangle) -> bool:
    """True iff the rectangle has no K3,3 witness (short-circuits)."""
    return not _scan(s, stop_first=True)


def _scan(s: LatinRectangle, stop_first: bool) -> set[PatternOccurrence]:
    m, n = s.m, s.n
    found: set[PatternOccurrence] = set()
    if m < 3:
        return found
    grid = s.rows
    pos = s.column_positions()
    for c in range(n):
        for rp in range(m):
            lp = grid[rp][c]
            for rq in range(rp + 1, m):
                lq = grid[rq][c]
                for t in range(m):
                    if t == rp or t == rq:
                        continue
                    cp = pos[t][lp]
                    cq = pos[t][lq]
                    lx = grid[rp][cq]
                    if lx == grid[rq][cp]:
                        # roles: r1=t r2=rp r3=rq, c1=c c2=cp c3=cq,
                        # l1=lx l2=lq l3=lp
                        occ = _canonical_occurrence(
                            (t, rp, rq), (c, cp, cq), (lx, lq, lp)
                        )
                        found.add(occ)
                        if stop_first:
                            return found
    return found


# ---------------------------------------------------------------------------
# induced K_{t,t} search on the cell graph of k mutually orthogonal squares


def find_induced_ktt(
    squares: list[LatinRectangle], t: int
) -> set[frozenset[frozenset[tuple[int, int]]]]:
    """All induced complete bipartite K_{t,t} subgraphs of the collection graph.

    Vertices are the n^2 cells; two cells are adjacent iff they share a row,
    a column, or a letter in any of the squares.  Witnesses are returned as
    unordered part-pairs of t-cell sets.
    """
    if t < 2:
        raise ValueError("t must be at least 2")
    if not squares:
        raise ValueError("need at least one square")
    m, n = squares[0].m, squares[0].n
    from .core import is_orthogonal

    for a, b in itertools.combinations(squares, 2):
        if not is_orthogonal(a, b):
            raise ValueError("input squares are not pairwise orthogonal")

    cells = [(r, c) for r in range(m) for c in range(n)]
    idx = {cell: i for i, cell in enumerate(cells)}
    nv = len(cells)
    adj = [0] * nv

    def keys(cell):
        r, c = cell
        out = [("r", r), ("c", c)]
        out.extend((i, sq.rows[r][c]) for i, sq in enumerate(squares))
        return out

    buckets: dict = {}
    for cell in cells:
        for k in keys(cell):
            buckets.setdefault(k, []).append(idx[cell])
    for members in buckets.values():
        for i, j in itertools.combinations(members, 2):
            adj[i] |= 1 << j
            adj[j] |= 1 << i

    full = (1 << nv) - 1
    witnesses: set[frozenset[frozenset[tuple[int, int]]]] = set()

    def grow(part_a: list[int], cand_a: int, common: int):
        if len(part_a) == t:
            _complete_part(common, part_a)
            return
        c = cand_a
        while c:
            v = c & -c
            i = v.bit_length() - 1
            c ^= v
            new_common = common & adj[i]
            if bin(new_common).count("1") < t:
                continue
            # candidates after i: indices > i, non-adjacent to i
            new_cand = c & ~adj[i]
            grow(part_a + [i], new_cand, new_common)

    def _complete_part(common: int, part_a: list[int]):
        # enumerate independent t-subsets of `common`
        members = []
        c = common
        while c:
            v = c & -c
            members.append(v.bit_length() - 1)
            c ^= v
        def rec(start: int, chosen: list[int]):
            if len(chosen) == t:
                pa = frozenset(cells[i] for i in part_a)
                pb = frozenset(cells[i] for i in chosen)
                witnesses.add(frozenset((pa, pb)))
                return
            for k in range(start, len(members)):
                i = members[k]
                if any(adj[i] >> j & 1 for j in chosen):
                    continue
                rec(k + 1, chosen + [i])
        rec(0, [])

    grow([], full, full)
    return witnesses
