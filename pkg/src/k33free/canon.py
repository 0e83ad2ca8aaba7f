"""Canonical forms under paratopy/isotopy and symmetry-group computation.

The canonical representative of a class is the lexicographically least cell
matrix (flattened row-major) over the allowed group: row, column and letter
permutations, plus the shape-preserving conjugations at main level.

The search exploits latin structure instead of permuting blindly:

* row 0 of any candidate image can always be normalized to 0..n-1, so it is
  never stored or searched;
* row 1 is the one-line form of a conjugate of the column permutation linking
  two original rows; the conjugate is determined by the cycle type (cycles
  sorted by ascending length, laid out on consecutive positions), so only
  (conjugation, first row, second row) triples of the distinguished cycle
  type — fewest conjugating maps, then lex-least row form — are expanded,
  and the branching enumerates which cycle lands on which block and with
  which rotation;
* once the column map is complete the images of the remaining rows are fixed
  and their optimal order is just sorted order.

Every assignment realizing the minimum is retained, which yields the full
stabilizer (autotopism or paratopism group) from the same search.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from math import factorial

from .core import (
    CONJ_ID,
    LatinRectangle,
    Paratopism,
    apply,
    conjugate,
    shape_preserving_conjs,
)

Level = str  # 'main' | 'isotopy'

#: stop materializing stabilizer elements beyond this many (order stays exact)
ELEMENT_CAP = 100_000


@dataclass
class SymmetryGroup:
    """Stabilizer of a rectangle under isotopisms or paratopisms."""

    kind: str  # 'autotopism' | 'paratopism'
    order: int
    elements: list[Paratopism]  # all elements (possibly truncated, see order)

    @property
    def generators(self) -> list[Paratopism]:
        return self.elements


def allowed_group_order(m: int, n: int, level: Level = "main") -> int:
    base = factorial(m) * factorial(n) ** 2
    if level == "isotopy":
        return base
    return base * len(shape_preserving_conjs(m, n))


def _cycles_of(perm: tuple[int, ...]) -> list[list[int]]:
    n = len(perm)
    seen = [False] * n
    cycles = []
    for start in range(n):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = perm[x]
        cycles.append(cyc)
    return cycles


def _centralizer_order(lengths: tuple[int, ...]) -> int:
    """Number of permutations commuting with one of this cycle type."""
    out = 1
    for ell, reps in Counter(lengths).items():
        out *= ell**reps * factorial(reps)
    return out


def _type_row(lengths: tuple[int, ...]) -> tuple[int, ...]:
    """Lex-least one-line form of a permutation with the given cycle type."""
    row = []
    p = 0
    for ell in lengths:
        row.extend(range(p + 1, p + ell))
        row.append(p)
        p += ell
    return tuple(row)


class _Search:
    """Minimization over one shape; collects every assignment achieving it."""

    def __init__(self, s: LatinRectangle, level: Level):
        self.s = s
        self.m, self.n = s.m, s.n
        if level == "isotopy":
            self.conjs = (CONJ_ID,)
        else:
            self.conjs = shape_preserving_conjs(self.m, self.n)
        self.images = [(sigma, conjugate(s, sigma).rows) for sigma in self.conjs]

    def run(self) -> tuple[LatinRectangle, int, list[Paratopism]]:
        m, n = self.m, self.n
        if m == 1:
            return self._run_single_row()

        # gather (sigma, grid, r0, r1, pi, cycles) for the distinguished
        # cycle type: fewest conjugating maps first (keeps the expansion
        # small for squares rich in short cycles), then lex-least row form
        best_key: tuple | None = None
        best_row1: tuple[int, ...] | None = None
        group: list[tuple] = []
        for sigma, grid in self.images:
            inv_rows = []
            for row in grid:
                inv = [0] * n
                for c, l in enumerate(row):
                    inv[l] = c
                inv_rows.append(inv)
            for r0 in range(m):
                pos0 = inv_rows[r0]
                for r1 in range(m):
                    if r1 == r0:
                        continue
                    row1 = grid[r1]
                    pi = tuple(pos0[row1[c]] for c in range(n))
                    cycles = _cycles_of(pi)
                    lengths = tuple(sorted(len(cy) for cy in cycles))
                    key = (_centralizer_order(lengths), _type_row(lengths))
                    if best_key is None or key < best_key:
                        best_key = key
                        best_row1 = key[1]
                        group = [(sigma, grid, r0, r1, pi, cycles)]
                    elif key == best_key:
                        group.append((sigma, grid, r0, r1, pi, cycles))
        assert best_row1 is not None

        self.best_tail: tuple[int, ...] | None = None
        self.leaf_count = 0
        self.leaves: list[tuple] = []
        for sigma, grid, r0, r1, pi, cycles in group:
            self._expand(sigma, grid, r0, r1, pi, cycles)

        assert self.best_tail is not None or m == 2
        tail = self.best_tail or ()
        rows = [tuple(range(n)), best_row1]
        rows.extend(
            tuple(tail[i * n : (i + 1) * n]) for i in range(m - 2)
        )
        canon = LatinRectangle(tuple(rows))
        maps = [self._leaf_to_paratopism(leaf) for leaf in self.leaves]
        return canon, self.leaf_count, maps

    # -- expansion of one (sigma, r0, r1) triple ---------------------------

    def _expand(self, sigma, grid, r0, r1, pi, cycles):
        m, n = self.m, self.n
        by_len: dict[int, list[list[int]]] = {}
        for cy in cycles:
            by_len.setdefault(len(cy), []).append(cy)
        lengths = sorted(len(cy) for cy in cycles)

        pos0 = [0] * n
        for c, l in enumerate(grid[r0]):
            pos0[l] = c
        other_rows = [r for r in range(m) if r != r0 and r != r1]
        pis = {}
        for r in other_rows:
            row = grid[r]
            pis[r] = [pos0[row[c]] for c in range(n)]

        col2pos = [-1] * n
        used = {ell: [False] * len(cys) for ell, cys in by_len.items()}

        def assign_block(bi: int, p: int):
            if bi == len(lengths):
                self._evaluate(sigma, grid, r0, r1, pis, other_rows, col2pos)
                return
            ell = lengths[bi]
            cys = by_len[ell]
            flags = used[ell]
            for ci, cy in enumerate(cys):
                if flags[ci]:
                    continue
                flags[ci] = True
                for off in range(ell):
                    # cycle element cy[off] sits at position p, successive
                    # elements at successive positions
                    for k in range(ell):
                        col2pos[cy[(off + k) % ell]] = p + k
                    assign_block(bi + 1, p + ell)
                for k in range(ell):
                    col2pos[cy[k]] = -1
                flags[ci] = False

        assign_block(0, 0)

    def _evaluate(self, sigma, grid, r0, r1, pis, other_rows, col2pos):
        n = self.n
        pos2col = [0] * n
        for c, p in enumerate(col2pos):
            pos2col[p] = c
        imgs = []
        for r in other_rows:
            pi_r = pis[r]
            imgs.append((tuple(col2pos[pi_r[pos2col[j]]] for j in range(n)), r))
        imgs.sort()
        tail = tuple(v for img, _ in imgs for v in img)
        if self.best_tail is None or tail < self.best_tail:
            self.best_tail = tail
            self.leaf_count = 1
            self.leaves = [(sigma, [r0, r1] + [r for _, r in imgs], tuple(col2pos))]
        elif tail == self.best_tail:
            self.leaf_count += 1
            if self.leaf_count <= ELEMENT_CAP:
                self.leaves.append(
                    (sigma, [r0, r1] + [r for _, r in imgs], tuple(col2pos))
                )

    def _leaf_to_paratopism(self, leaf) -> Paratopism:
        sigma, row_order, col2pos = leaf
        m, n = self.m, self.n
        grid = dict(self.images)[sigma]
        rho = [0] * m
        for position, r in enumerate(row_order):
            rho[r] = position
        pos0 = [0] * n
        for c, l in enumerate(grid[row_order[0]]):
            pos0[l] = c
        lam = tuple(col2pos[pos0[l]] for l in range(n))
        return Paratopism(tuple(rho), tuple(col2pos), lam, sigma)

    # -- degenerate single-row shape ---------------------------------------

    def _run_single_row(self):
        # any single row normalizes to the identity; the stabilizer is the
        # full gamma choice (lambda then forced), times the conjugations
        n = self.n
        canon = LatinRectangle((tuple(range(n)),))
        order = factorial(n) * len(self.conjs)
        maps: list[Paratopism] = []
        if n <= 6:
            for sigma in self.conjs:
                grid = conjugate(self.s, sigma).rows[0]
                inv = [0] * n
                for c, l in enumerate(grid):
                    inv[l] = c
                for gamma in itertools.permutations(range(n)):
                    lam = tuple(gamma[inv[l]] for l in range(n))
                    maps.append(Paratopism((0,), tuple(gamma), lam, sigma))
        return canon, order, maps


def canonical_form(s: LatinRectangle, level: Level = "main") -> LatinRectangle:
    """Distinguished class representative; idempotent."""
    canon, _, _ = _Search(s, level).run()
    return canon


def canonical_with_stabilizer(
    s: LatinRectangle, level: Level = "main"
) -> tuple[LatinRectangle, int, list[Paratopism]]:
    """(canonical form, stabilizer order, stabilizer elements).

    The elements fix ``s`` itself (not the canonical form) and their conj
    component is the identity when ``level == 'isotopy'``.
    """
    canon, count, maps = _Search(s, level).run()
    if not maps:
        return canon, count, []
    g0_inv = maps[0].inverse()
    elements = [g0_inv.compose(g) for g in maps]
    return canon, count, elements


def symmetry_group(s: LatinRectangle, kind: str = "autotopism") -> SymmetryGroup:
    """Full stabilizer of the rectangle, with exact order.

    kind 'autotopism' restricts to pure isotopisms; 'paratopism' allows the
    shape-preserving conjugations as well.
    """
    level = "isotopy" if kind == "autotopism" else "main"
    _, order, elements = canonical_with_stabilizer(s, level)
    return SymmetryGroup(kind=kind, order=order, elements=elements)


def cell_orbits(group: SymmetryGroup, s: LatinRectangle) -> list[set[tuple[int, int]]]:
    """Orbit partition of the cells of s under the stabilizer elements."""
    m, n = s.m, s.n
    parent: dict[tuple[int, int], tuple[int, int]] = {
        (r, c): (r, c) for r in range(m) for c in range(n)
    }

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for g in group.elements:
        for r in range(m):
            row = s.rows[r]
            for c in range(n):
                t = g.act_triple((r, c, row[c]))
                a, b = find((r, c)), find((t[0], t[1]))
                if a != b:
                    parent[a] = b
    orbits: dict[tuple[int, int], set[tuple[int, int]]] = {}
    for cell in list(parent):
        orbits.setdefault(find(cell), set()).add(cell)
    return list(orbits.values())


def count_total(reps: list[LatinRectangle]) -> int:
    """Orbit-stabilizer total of labeled rectangles across the given classes.

    Every entry must be a main-level canonical representative and the entries
    pairwise non-paratopic (not re-checked here beyond canonicity).
    """
    total = 0
    for rep in reps:
        canon, order, _ = _Search(rep, "main").run()
        if canon != rep:
            raise ValueError("catalog entry is not main-level canonical")
        total += allowed_group_order(rep.m, rep.n, "main") // order
    return total
