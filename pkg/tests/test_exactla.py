from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coveradj.blocker import blocker_clutter
from coveradj.core import consecutive_ones_circulant, degenerate_projective_plane
from coveradj.errors import ResourceLimit
from coveradj.exactla import (Relation, double_description, double_description_system,
                              lp_feasible, rank, relation)

from helpers import basis_vertices, clutters, solve_square

H = F(1, 2)


def test_rank_examples():
    assert rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert rank(consecutive_ones_circulant(3, 2).dense()) == 3
    assert rank([[1, 2, 3], [1, 2, 3]]) == 1
    assert rank([]) == 0
    assert rank([[F(1, 3), F(2, 3)], [1, 2]]) == 1
    assert rank(consecutive_ones_circulant(4, 2).dense()) == 3


def _rank_by_fractions(m):
    a = [[F(x) for x in row] for row in m]
    r = 0
    cols = len(a[0]) if a else 0
    for c in range(cols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=6))
def test_rank_matches_plain_elimination(m):
    assert rank(m) == _rank_by_fractions(m)


def test_lp_feasible_examples():
    assert lp_feasible([relation([1], ">=", 1), relation([1], "<=", 0)]) is None
    x = lp_feasible([relation([1, 1], "=", 1)])
    assert x is not None and sum(x) == 1 and min(x) >= 0
    assert lp_feasible([(([1, -1]), ">=", 3)], bounds=[(None, None), (None, 2)]) is not None
    x = lp_feasible([((1, 1), "=", 0)], bounds=[(-2, None), (None, None)])
    assert x is not None and x[0] >= -2 and x[0] + x[1] == 0


def test_lp_feasible_respects_bounds():
    assert lp_feasible([((1,), ">=", 5)], bounds=[(0, 4)]) is None
    x = lp_feasible([((1,), ">=", 3)], bounds=[(0, 4)])
    assert 3 <= x[0] <= 4


def test_relation_rejects_bad_sense():
    with pytest.raises(ValueError):
        Relation((F(1),), "<", F(0))


@given(st.lists(st.tuples(st.lists(st.integers(-3, 3), min_size=3, max_size=3),
                          st.sampled_from(["<=", "=", ">="]), st.integers(-4, 4)),
                min_size=1, max_size=5))
def test_lp_answers_are_feasible_points(cons):
    x = lp_feasible(cons)
    if x is None:
        return
    assert all(v >= 0 for v in x)
    for coeffs, sense, rhs in cons:
        val = sum(a * v for a, v in zip(coeffs, x))
        assert {"<=": val <= rhs, "=": val == rhs, ">=": val >= rhs}[sense]


def _feasible_in_box(cons):
    # the same system cut by x <= 10, decided by looking for a vertex
    n = 2
    rows = []
    rhs = []
    for coeffs, sense, b in cons:
        if sense in (">=", "="):
            rows.append(coeffs)
            rhs.append(b)
        if sense in ("<=", "="):
            rows.append([-a for a in coeffs])
            rhs.append(-b)
    rows += [[-1, 0], [0, -1]]
    rhs += [-10, -10]
    return bool(basis_vertices(rows, rhs, n))


@settings(max_examples=80)
@given(st.lists(st.tuples(st.lists(st.integers(-3, 3), min_size=2, max_size=2),
                          st.sampled_from(["<=", "=", ">="]), st.integers(-4, 4)),
                min_size=1, max_size=4))
def test_lp_feasibility_matches_vertex_search(cons):
    # with a box x <= 10 added, a nonempty system always has a vertex
    boxed = cons + [([1, 0], "<=", 10), ([0, 1], "<=", 10)]
    assert (lp_feasible(boxed) is not None) == _feasible_in_box(cons)


def test_double_description_c32():
    v = double_description(consecutive_ones_circulant(3, 2))
    assert v.vertices == ((0, 1, 1), (H, H, H), (1, 0, 1), (1, 1, 0))
    assert v.rays == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert v.fractional_vertices == [(H, H, H)]


def test_double_description_c52_and_j2():
    c5 = consecutive_ones_circulant(5, 2)
    v = double_description(c5)
    assert v.fractional_vertices == [(H,) * 5]
    assert {tuple(int(x) for x in p) for p in v.binary_vertices} == {
        tuple(int(j in r) for j in range(1, 6)) for r in blocker_clutter(c5).rows}
    j2 = double_description(degenerate_projective_plane(2))
    assert set(j2.vertices) == {(1, 1, 0), (1, 0, 1), (0, 1, 1), (H, H, H)}


@settings(max_examples=60, deadline=None)
@given(clutters(max_n=6, max_rows=10))
def test_double_description_matches_basis_enumeration(c):
    v = double_description(c)
    assert list(v.vertices) == basis_vertices(c.dense(), [1] * c.m, c.n_cols)


@settings(max_examples=40, deadline=None)
@given(clutters(max_n=7))
def test_binary_vertices_are_the_blocker(c):
    v = double_description(c)
    got = {frozenset(j + 1 for j, x in enumerate(p) if x) for p in v.binary_vertices}
    assert got == blocker_clutter(c).support_set()


@settings(max_examples=40, deadline=None)
@given(clutters(max_n=7))
def test_rays_are_unit_vectors(c):
    n = c.n_cols
    v = double_description(c)
    assert sorted(v.rays) == sorted(tuple(int(i == j) for j in range(n)) for i in range(n))


@settings(max_examples=40, deadline=None)
@given(clutters(max_n=7))
def test_vertices_have_n_independent_tight_constraints(c):
    n = c.n_cols
    rows = c.dense() + [[int(i == j) for j in range(n)] for i in range(n)]
    rhs = [1] * c.m + [0] * n
    for p in double_description(c).vertices:
        assert all(sum(a * x for a, x in zip(r, p)) >= b for r, b in zip(rows, rhs))
        tight = [r for r, b in zip(rows, rhs) if sum(a * x for a, x in zip(r, p)) == b]
        assert rank(tight) == n


def test_general_system_with_rational_rhs():
    # x1 + 2 x2 >= 2, 3 x1 + x2 >= 3
    v = double_description_system([[1, 2], [3, 1]], [2, 3], 2)
    assert set(v.vertices) == {(0, 3), (2, 0), (F(4, 5), F(3, 5))}
    assert set(v.vertices) == set(basis_vertices([[1, 2], [3, 1]], [2, 3], 2))


def test_ray_cap():
    with pytest.raises(ResourceLimit):
        double_description(consecutive_ones_circulant(9, 2), ray_cap=5)


def test_solve_square_helper():
    assert solve_square([[2, 0], [0, 4]], [1, 1]) == (H, F(1, 4))
    assert solve_square([[1, 1], [1, 1]], [1, 2]) is None
