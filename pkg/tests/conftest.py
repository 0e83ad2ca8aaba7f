"""Shared helpers: random rectangles and independent brute-force oracles."""

from __future__ import annotations

import itertools
import random

import pytest

from k33free.core import LatinRectangle


def random_rectangle(rng: random.Random, m: int, n: int) -> LatinRectangle:
    """Uniform-ish random latin rectangle by randomized backtracking."""
    while True:
        rows: list[tuple[int, ...]] = []
        ok = True
        for _ in range(m):
            row = _random_row(rng, rows, n)
            if row is None:
                ok = False
                break
            rows.append(row)
        if ok:
            return LatinRectangle(tuple(rows))


def _random_row(rng, rows, n):
    cols_taken = [{r[c] for r in rows} for c in range(n)]
    order = list(range(n))
    row = [-1] * n
    used = set()

    def fill(i):
        if i == n:
            return True
        c = order[i]
        letters = [l for l in range(n) if l not in used and l not in cols_taken[c]]
        rng.shuffle(letters)
        for l in letters:
            row[c] = l
            used.add(l)
            if fill(i + 1):
                return True
            used.discard(l)
        row[c] = -1
        return False

    return tuple(row) if fill(0) else None


def all_rectangles(m: int, n: int):
    """Every labeled m-by-n latin rectangle (small shapes only)."""
    perms = list(itertools.permutations(range(n)))

    def rec(rows):
        if len(rows) == m:
            yield LatinRectangle(rows)
            return
        for p in perms:
            if all(p[c] != r[c] for r in rows for c in range(n)):
                yield from rec(rows + (p,))

    yield from rec(())


def cell_graph_k33_parts(s: LatinRectangle) -> set[frozenset]:
    """Naive induced-K3,3 search straight from the graph definition.

    Vertices are cells, adjacent when they share a row, a column, or a
    letter; returns every pair of independent triples with all nine
    cross edges present, as {frozenset({partA, partB})}.
    """
    cells = [(r, c) for r in range(s.m) for c in range(s.n)]

    def adj(a, b):
        return (
            a != b
            and (a[0] == b[0] or a[1] == b[1]
                 or s.rows[a[0]][a[1]] == s.rows[b[0]][b[1]])
        )

    out = set()
    for a in itertools.combinations(cells, 3):
        if adj(a[0], a[1]) or adj(a[0], a[2]) or adj(a[1], a[2]):
            continue
        rest = [x for x in cells if x not in a and all(adj(x, y) for y in a)]
        for b in itertools.combinations(rest, 3):
            if adj(b[0], b[1]) or adj(b[0], b[2]) or adj(b[1], b[2]):
                continue
            out.add(frozenset({frozenset(a), frozenset(b)}))
    return out


@pytest.fixture
def rng():
    return random.Random(20260826)
