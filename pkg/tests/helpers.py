"""Independent reference implementations used only by the tests.

Nothing here imports the polyhedral code of the package: vertices come from
plain basis enumeration, transversals from subset enumeration.
"""

from fractions import Fraction
from itertools import combinations

from hypothesis import strategies as st

from coveradj.core import BinaryMatrix, Clutter, clutterize


def solve_square(a, b):
    """Unique solution of a square system by Gauss-Jordan over Fractions, or None."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return tuple(m[r][n] for r in range(n))


def basis_vertices(rows, rhs, n):
    """Vertices of {x >= 0 : rows . x >= rhs} by trying every n-subset of constraints."""
    cons = [([Fraction(x) for x in r], Fraction(b)) for r, b in zip(rows, rhs)]
    cons += [([Fraction(int(i == j)) for j in range(n)], Fraction(0)) for i in range(n)]
    out = set()
    for pick in combinations(range(len(cons)), n):
        x = solve_square([cons[k][0] for k in pick], [cons[k][1] for k in pick])
        if x is None:
            continue
        if all(sum(a * y for a, y in zip(r, x)) >= b for r, b in cons):
            out.add(x)
    return sorted(out)


def minimal_transversals_by_subsets(c: Clutter):
    """Supports of all inclusion-minimal transversals, found by plain subset search."""
    n = c.n_cols
    trans = []
    for size in range(1, n + 1):
        for s in combinations(range(1, n + 1), size):
            s = frozenset(s)
            if all(s & r for r in c.rows) and not any(t <= s for t in trans):
                trans.append(s)
    return set(trans)


def points(vs):
    return {tuple(int(b) for b in v.bits) for v in vs}


@st.composite
def clutters(draw, min_n=3, max_n=7, max_rows=8):
    """Random clutters with rows of size at least 2."""
    n = draw(st.integers(min_n, max_n))
    row = st.frozensets(st.integers(1, n), min_size=2, max_size=n)
    rows = draw(st.lists(row, min_size=1, max_size=max_rows))
    return clutterize(BinaryMatrix(n, tuple(rows)))
