import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coveradj.blocker import minimal_transversals
from coveradj.core import (BinaryPoint, circulant, clutterize, consecutive_ones_circulant,
                           random_row_circular_clutter)
from coveradj.errors import BadParameters, DependentInequality, NotAVertex
from coveradj.exactla import double_description, double_description_system, rank
from coveradj.mni import cn94_row, three_nu_rows, w_and_u_vertices
from coveradj.oracle import (_combination_lp, add_inequality, build_adjacency_structure,
                             build_structure_for_system, convex_combination_certificate,
                             hull_adjacent, relaxation_adjacent)
from coveradj.satgraph import (ComponentKind, Status, adjacency_row_circular,
                               adjacency_sufficient, adjacency_two_ones, classify,
                               saturation_graph)

from helpers import clutters

H = F(1, 2)
PP13 = clutterize(circulant([1, 1, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0]))


def vec(p):
    return tuple(F(b) for b in p.bits)


def test_hull_adjacent_examples():
    c3 = consecutive_ones_circulant(3, 2)
    assert hull_adjacent(c3, [1, 1, 0], [0, 1, 1])
    c15 = consecutive_ones_circulant(15, 2)
    ws, _ = w_and_u_vertices(5)
    assert not hull_adjacent(c15, ws[0], ws[1])
    assert hull_adjacent(PP13, {6, 10, 11, 13}, {4, 5, 9, 10, 11, 13})
    with pytest.raises(NotAVertex):
        hull_adjacent(c3, {1}, {1, 2})


def test_convex_combination_certificate_for_w_pair():
    c15 = consecutive_ones_circulant(15, 2)
    ws, _ = w_and_u_vertices(5)
    cert = convex_combination_certificate(c15, ws[0], ws[1])
    assert cert is not None
    assert sum(lam for _, lam in cert) == 1
    assert any(p not in ws[:2] for p, _ in cert)
    mid = [F(a + b, 2) for a, b in zip(ws[0].bits, ws[1].bits)]
    combo = [sum(lam * p.bits[j] for p, lam in cert) for j in range(15)]
    assert all(x <= y for x, y in zip(combo, mid))
    assert convex_combination_certificate(c15, ws[0], w_and_u_vertices(5)[1][0]) is None


def _pairs_and_blocker(c):
    blk = minimal_transversals(c)
    return blk, list(itertools.combinations(blk, 2))


@settings(max_examples=30, deadline=None)
@given(clutters(min_n=3, max_n=7))
def test_hull_adjacent_symmetric_and_ladder(c):
    blk, pairs = _pairs_and_blocker(c)
    for v, w in pairs:
        h = hull_adjacent(c, v, w, blk)
        assert h == hull_adjacent(c, w, v, blk)
        if adjacency_sufficient(c, v, w).status is Status.ADJACENT:
            assert h


def _full_blocker_lp(c, v, w, blk):
    """Same question answered with every blocker vertex as a candidate."""
    others = [p for p in blk if p not in (v, w)]
    return _combination_lp(v, w, others, range(1, c.n_cols + 1)) is None


@settings(max_examples=20, deadline=None)
@given(clutters(min_n=3, max_n=6))
def test_union_restriction_is_exact(c):
    blk, pairs = _pairs_and_blocker(c)
    for v, w in pairs:
        assert hull_adjacent(c, v, w, blk) == _full_blocker_lp(c, v, w, blk)


def test_hull_matches_relaxation_edges_when_integral():
    # for an ideal clutter Q(A) = Q*(A), so both notions of adjacency coincide
    c = consecutive_ones_circulant(6, 2)
    s = build_adjacency_structure(c)
    assert double_description(c).is_integral()
    blk, pairs = _pairs_and_blocker(c)
    for v, w in pairs:
        assert hull_adjacent(c, v, w, blk) == relaxation_adjacent(s, v, w)


@pytest.mark.parametrize("seed", range(6))
def test_row_circular_and_two_ones_ladder(seed):
    rng = random.Random(seed)
    n = rng.randint(5, 11)
    c = random_row_circular_clutter(n, rng.randint(3, n), rng)
    blk, pairs = _pairs_and_blocker(c)
    for v, w in pairs:
        assert adjacency_row_circular(c, v, w).adjacent == hull_adjacent(c, v, w, blk)
    if n % 2:
        c2 = consecutive_ones_circulant(n, 2)
        blk, pairs = _pairs_and_blocker(c2)
        for v, w in pairs:
            assert adjacency_two_ones(c2, v, w).adjacent == hull_adjacent(c2, v, w, blk)


def test_structure_c32():
    s = build_adjacency_structure(consecutive_ones_circulant(3, 2))
    f = s.index((H, H, H))
    assert s.neighbours(f) == [k for k in range(4) if k != f]
    # two binary vertices share only one tight row and one zero: rank 2 = n - 1
    binary = [k for k in range(4) if k != f]
    for a, b in itertools.combinations(binary, 2):
        assert ((a, b) in s.finite_edges) == relaxation_adjacent(s, s.vertices[a], s.vertices[b])


def test_structure_c52_fractional_degree():
    s = build_adjacency_structure(consecutive_ones_circulant(5, 2))
    f = s.index((H,) * 5)
    assert len(s.neighbours(f)) == 5
    assert all(relaxation_adjacent(s, s.vertices[f], s.vertices[k]) for k in s.neighbours(f))


@settings(max_examples=25, deadline=None)
@given(clutters(min_n=3, max_n=6))
def test_structure_matches_rank_definition(c):
    s = build_adjacency_structure(c)
    n = c.n_cols
    rows = [list(r) for r in s.rows] + [[int(i == j) for j in range(n)] for i in range(n)]
    rhs = list(s.rhs) + [0] * n

    def tight(p):
        return {k for k, (r, b) in enumerate(zip(rows, rhs))
                if sum(a * x for a, x in zip(r, p)) == b}

    for a, b in itertools.combinations(range(len(s.vertices)), 2):
        common = tight(s.vertices[a]) & tight(s.vertices[b])
        is_edge = rank([rows[k] for k in common]) == n - 1 if common else n == 1
        assert ((a, b) in s.finite_edges) == is_edge
    for a, p in enumerate(s.vertices):
        for h in range(1, n + 1):
            # tight along the whole ray: tight at p and blind to coordinate h
            along = [k for k in tight(p) if rows[k][h - 1] == 0]
            assert ((a, h) in s.infinite_edges) == (rank([rows[k] for k in along]) == n - 1)


def test_jobs_give_same_structure():
    c = consecutive_ones_circulant(9, 2)
    assert build_adjacency_structure(c, jobs=2) == build_adjacency_structure(c)


def test_relaxation_c9_size_s_pairs():
    c = consecutive_ones_circulant(9, 2)
    s = build_adjacency_structure(c)
    blk = minimal_transversals(c)
    v, w = BinaryPoint(9, {2, 4, 6, 8, 9}), BinaryPoint(9, {1, 3, 5, 7, 9})
    assert not relaxation_adjacent(s, v, w) and hull_adjacent(c, v, w, blk)
    v, w = BinaryPoint(9, {2, 4, 6, 8, 9}), BinaryPoint(9, {2, 4, 6, 7, 9})
    assert relaxation_adjacent(s, v, w) and hull_adjacent(c, v, w, blk)


@pytest.mark.parametrize("n", [5, 7, 9, 11])
def test_cross_model_law_on_odd_cycles(n):
    c = consecutive_ones_circulant(n, 2)
    s = build_adjacency_structure(c)
    blk = minimal_transversals(c)
    size = (n + 1) // 2
    full = frozenset(range(1, n + 1))
    for v, w in itertools.combinations(blk, 2):
        sv, sw = len(v.support), len(w.support)
        h = hull_adjacent(c, v, w, blk)
        if max(sv, sw) > size:
            assert relaxation_adjacent(s, v, w) == h
        elif sv == sw == size:
            assert h
            assert relaxation_adjacent(s, v, w) == ((v.support | w.support) != full)


@pytest.mark.parametrize("n", [5, 7, 9, 11, 13])
def test_adjacent_pairs_on_odd_cycles_are_paths(n):
    c = consecutive_ones_circulant(n, 2)
    s = build_adjacency_structure(c)
    size = (n + 1) // 2
    for v, w in itertools.combinations(minimal_transversals(c), 2):
        if max(len(v.support), len(w.support)) > size and relaxation_adjacent(s, v, w):
            comps = classify(saturation_graph(c, v, w)).components
            assert len(comps) == 1 and comps[0].kind is ComponentKind.PATH
            if len(v.support) != len(w.support):
                assert comps[0].parity == "even"


def _system_vertices(rows, rhs, n):
    return set(double_description_system(rows, rhs, n).vertices)


def test_add_inequality_cn94_row():
    c = consecutive_ones_circulant(9, 2)
    s = build_adjacency_structure(c)
    a = cn94_row(9, 2, 5, 8).bits
    got = set(add_inequality(s, a, 1).vertices)
    assert got == _system_vertices(c.dense() + [list(a)], [1] * 10, 9)
    assert [p for p in got if any(x.denominator != 1 for x in p)] == [(H,) * 9]


def test_add_inequality_removes_w1_only():
    c = consecutive_ones_circulant(15, 2)
    s = build_adjacency_structure(c)
    a1 = three_nu_rows(5)[0]
    got = set(add_inequality(s, [int(j in a1) for j in range(1, 16)], 1).vertices)
    ws, _ = w_and_u_vertices(5)
    assert got == set(s.vertices) - {vec(ws[0])}


def test_add_inequality_redundant_and_dependent():
    c = consecutive_ones_circulant(7, 2)
    s = build_adjacency_structure(c)
    assert set(add_inequality(s, [1] * 7, 1).vertices) == set(s.vertices)
    with pytest.raises(DependentInequality):
        add_inequality(s, [2, 2, 0, 0, 0, 0, 0], 2)
    with pytest.raises(BadParameters):
        add_inequality(s, [1, -1, 0, 0, 0, 0, 0], 1)
    with pytest.raises(BadParameters):
        add_inequality(s, [1] * 7, 0)


@st.composite
def augmented(draw):
    n = draw(st.integers(3, 7))
    c = draw(clutters(min_n=n, max_n=n))
    a = draw(st.lists(st.integers(0, 3), min_size=n, max_size=n).filter(any))
    c0 = draw(st.integers(1, 4))
    return c, a, c0


@settings(max_examples=40, deadline=None)
@given(augmented())
def test_add_inequality_matches_double_description(case):
    c, a, c0 = case
    s = build_adjacency_structure(c)
    try:
        got = set(add_inequality(s, a, c0).vertices)
    except DependentInequality:
        return
    assert got == _system_vertices(c.dense() + [a], [1] * c.m + [c0], c.n_cols)


def test_structure_for_general_system():
    s = build_structure_for_system([[1, 2], [3, 1]], [2, 3], 2)
    assert len(s.vertices) == 3
    assert len(s.finite_edges) == 2
    assert len(s.infinite_edges) == 2
