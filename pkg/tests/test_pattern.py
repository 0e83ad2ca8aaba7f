"""Witness search against graph-level oracles and invariance laws."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import all_rectangles, cell_graph_k33_parts, random_rectangle
from k33free.core import (
    LatinRectangle,
    Paratopism,
    apply,
    group_table,
    linear_square,
    shape_preserving_conjs,
    supported_group_specs,
)
from k33free.pattern import find_induced_ktt, find_k33, is_k33_free


def parts_of(s):
    return {frozenset(w.parts) for w in find_k33(s)}


def test_exhaustive_3x3_matches_graph_oracle():
    for s in all_rectangles(3, 3):
        assert parts_of(s) == cell_graph_k33_parts(s)


def test_exhaustive_3x4_matches_graph_oracle():
    for s in all_rectangles(3, 4):
        assert parts_of(s) == cell_graph_k33_parts(s)


def test_random_rectangles_match_graph_oracle():
    rng = random.Random(7)
    for _ in range(150):
        m = rng.randint(2, 5)
        n = rng.randint(max(m, 3), 5)
        s = random_rectangle(rng, m, n)
        assert parts_of(s) == cell_graph_k33_parts(s)


def test_witness_structure():
    z3 = group_table("Z3")
    wits = find_k33(z3)
    assert wits and not is_k33_free(z3)
    for w in wits:
        plus, minus = w.parts
        assert len(plus) == len(minus) == 3
        assert len(w.cell_set()) == 6
        # the letters really sit where the pattern claims
        for r, c in w.cells:
            assert z3.rows[r][c] in w.letters


def test_group_tables_are_never_free():
    for spec in supported_group_specs(12):
        s = group_table(spec)
        if s.n >= 3:
            assert not is_k33_free(s), spec


def test_witness_count_is_paratopism_invariant():
    rng = random.Random(11)
    for _ in range(20):
        s = random_rectangle(rng, 4, 5)
        k = len(find_k33(s))
        sigma = rng.choice(shape_preserving_conjs(4, 5))
        p = Paratopism(
            tuple(rng.sample(range(4), 4)),
            tuple(rng.sample(range(5), 5)),
            tuple(rng.sample(range(5), 5)),
            sigma,
        )
        assert len(find_k33(apply(p, s))) == k


def test_find_induced_ktt_t3_agrees_with_find_k33():
    rng = random.Random(13)
    for _ in range(40):
        s = random_rectangle(rng, rng.randint(3, 5), 5)
        assert {frozenset(p) for p in find_induced_ktt((s,), 3)} == parts_of(s)


def test_find_induced_ktt_on_orthogonal_pair():
    pair = (linear_square(5, 2, 1), linear_square(5, 1, 2))
    wits = find_induced_ktt(pair, 4)
    assert wits
    for pairset in wits:
        a, b = tuple(pairset)
        assert len(a) == len(b) == 4


def test_find_induced_ktt_rejects_non_orthogonal():
    with pytest.raises(Exception):
        find_induced_ktt((group_table("Z4"), group_table("Z4")), 3)


@given(st.integers(3, 5), st.randoms(use_true_random=False))
@settings(max_examples=40, deadline=None)
def test_free_iff_no_witness(n, hyp_rng):
    rng = random.Random(hyp_rng.getrandbits(32))
    s = random_rectangle(rng, rng.randint(2, n), n)
    assert is_k33_free(s) == (not find_k33(s))
