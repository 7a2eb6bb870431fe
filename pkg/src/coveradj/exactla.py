"""Exact rational linear algebra over ``fractions.Fraction`` and Python integers.

Three services: matrix rank, LP feasibility (phase-one simplex with Bland's
rule), and the double description method for ``{x >= 0 : A x >= b}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .core import Clutter
from .errors import BadParameters, ResourceLimit

RationalPoint = tuple  # tuple[Fraction, ...]

DEFAULT_RAY_CAP = 200_000


def _integer_rows(m: Iterable[Sequence]) -> list[list[int]]:
    out = []
    for row in m:
        row = [Fraction(x) for x in row]
        den = 1
        for x in row:
            den = lcm(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def rank(m: Sequence[Sequence]) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination."""
    a = _integer_rows(m)
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    r = 0
    prev = 1
    for col in range(cols):
        piv = next((i for i in range(r, rows) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pr = a[r]
        for i in range(r + 1, rows):
            ai = a[i]
            f = ai[col]
            if f == 0:
                if pr[col] != prev:
                    a[i] = [(pr[col] * x) // prev for x in ai]
                continue
            a[i] = [(pr[col] * ai[j] - f * pr[j]) // prev for j in range(cols)]
        prev = pr[col]
        r += 1
        if r == rows:
            break
    return r


# -- LP feasibility ------------------------------------------------------------

@dataclass(frozen=True)
class Relation:
    coeffs: tuple
    sense: str  # "<=", "=", ">="
    rhs: Fraction

    def __post_init__(self):
        if self.sense not in ("<=", "=", ">="):
            raise BadParameters(f"unknown relation {self.sense!r}")


def relation(coeffs: Sequence, sense: str, rhs) -> Relation:
    return Relation(tuple(Fraction(x) for x in coeffs), sense, Fraction(rhs))


def lp_feasible(constraints: Sequence[Relation | tuple], n_vars: int | None = None,
                bounds: Sequence[tuple] | None = None) -> tuple[Fraction, ...] | None:
    """Return a point satisfying every relation, or None if there is none.

    ``constraints`` holds Relation objects or ``(coeffs, sense, rhs)`` triples.
    ``bounds`` gives ``(lo, hi)`` per variable, either side may be None; the
    default is ``x >= 0``.
    """
    rels = [c if isinstance(c, Relation) else relation(*c) for c in constraints]
    if n_vars is None:
        n_vars = len(rels[0].coeffs) if rels else len(bounds or ())
    if bounds is None:
        bounds = [(0, None)] * n_vars
    bounds = [(None if lo is None else Fraction(lo), None if hi is None else Fraction(hi))
              for lo, hi in bounds]

    # substitute x = lo + y (y >= 0), or x = y+ - y- for free variables,
    # or x = hi - y when only an upper bound exists
    cols: list[list[tuple[int, int]]] = []  # per original var: [(new col, sign)]
    shift = []
    k = 0
    for lo, hi in bounds:
        if lo is not None:
            cols.append([(k, 1)])
            shift.append(lo)
            k += 1
        elif hi is not None:
            cols.append([(k, -1)])
            shift.append(hi)
            k += 1
        else:
            cols.append([(k, 1), (k + 1, -1)])
            shift.append(Fraction(0))
            k += 2
    n_new = k

    rows: list[tuple[list[Fraction], str, Fraction]] = []
    for rel in rels:
        if len(rel.coeffs) != n_vars:
            raise BadParameters("relation length does not match the number of variables")
        coeffs = [Fraction(0)] * n_new
        rhs = rel.rhs
        for j, a in enumerate(rel.coeffs):
            if a == 0:
                continue
            rhs -= a * shift[j]
            for col, sg in cols[j]:
                coeffs[col] += sg * a
        rows.append((coeffs, rel.sense, rhs))
    for j, (lo, hi) in enumerate(bounds):
        if lo is not None and hi is not None:
            coeffs = [Fraction(0)] * n_new
            coeffs[cols[j][0][0]] = Fraction(1)
            rows.append((coeffs, "<=", hi - lo))

    y = _phase_one(rows, n_new)
    if y is None:
        return None
    x = []
    for j in range(n_vars):
        val = shift[j]
        for col, sg in cols[j]:
            val += sg * y[col]
        x.append(val)
    return tuple(x)


def _phase_one(rows, n):
    """Feasibility of {y >= 0 : rows} via artificial variables and Bland's rule."""
    m = len(rows)
    if m == 0:
        return [Fraction(0)] * n
    # columns: n structural, one slack per inequality, one artificial per row
    n_slack = sum(1 for _, s, _ in rows if s != "=")
    total = n + n_slack + m
    tab = []
    basis = []
    si = n
    for i, (coeffs, sense, rhs) in enumerate(rows):
        row = list(coeffs) + [Fraction(0)] * (n_slack + m) + [rhs]
        if sense == "<=":
            row[si] = Fraction(1)
            si += 1
        elif sense == ">=":
            row[si] = Fraction(-1)
            si += 1
        if rhs < 0:
            row = [-x for x in row]
        row[n + n_slack + i] = Fraction(1)
        tab.append(row)
        basis.append(n + n_slack + i)
    art0 = n + n_slack
    # objective: minimise the sum of artificials; reduced costs = -sum of rows
    obj = [Fraction(0)] * (total + 1)
    for row in tab:
        for j in range(total + 1):
            obj[j] -= row[j]
    for i in range(m):
        obj[art0 + i] = Fraction(0)

    while True:
        enter = next((j for j in range(total) if obj[j] < 0), None)
        if enter is None:
            break
        best = None
        leave = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][total] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:  # unbounded below cannot happen for phase one
            break
        _pivot(tab, obj, leave, enter)
        basis[leave] = enter

    if obj[total] != 0:
        return None
    y = [Fraction(0)] * total
    for i, b in enumerate(basis):
        y[b] = tab[i][total]
    return y[:n]


def _pivot(tab, obj, r, c):
    pr = tab[r]
    pv = pr[c]
    if pv != 1:
        pr = [x / pv for x in pr]
        tab[r] = pr
    width = len(pr)
    nz = [j for j in range(width) if pr[j] != 0]
    for i, row in enumerate(tab):
        if i != r:
            f = row[c]
            if f != 0:
                for j in nz:
                    row[j] -= f * pr[j]
    f = obj[c]
    if f != 0:
        for j in nz:
            obj[j] -= f * pr[j]


# -- double description ----------------------------------------------------------

@dataclass(frozen=True)
class VRepresentation:
    vertices: tuple[tuple[Fraction, ...], ...]
    rays: tuple[tuple[int, ...], ...]

    @property
    def fractional_vertices(self) -> list[tuple[Fraction, ...]]:
        return [v for v in self.vertices if any(x.denominator != 1 for x in v)]

    @property
    def binary_vertices(self) -> list[tuple[Fraction, ...]]:
        return [v for v in self.vertices if all(x in (0, 1) for x in v)]

    def is_integral(self) -> bool:
        return not self.fractional_vertices


def clutter_system(c: Clutter) -> tuple[list[list[int]], list[int]]:
    return c.dense(), [1] * c.m


def double_description(c: Clutter, ray_cap: int = DEFAULT_RAY_CAP) -> VRepresentation:
    """Vertices and extreme rays of Q(A) = {x >= 0 : A x >= 1}."""
    rows, rhs = clutter_system(c)
    return double_description_system(rows, rhs, c.n_cols, ray_cap=ray_cap)


def _norm(v: list[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        if x:
            g = gcd(g, x)
            if g == 1:
                break
    if g > 1:
        v = [x // g for x in v]
    return tuple(v)


def _insertion_order(rows: list[list[int]], rhs: list) -> list[int]:
    def key(i):
        supp = tuple(j for j, a in enumerate(rows[i]) if a)
        return (len(supp), supp, i)
    return sorted(range(len(rows)), key=key)


def double_description_system(rows: Sequence[Sequence], rhs: Sequence, n: int,
                              ray_cap: int = DEFAULT_RAY_CAP) -> VRepresentation:
    """Vertices and extreme rays of {x in R^n : x >= 0, rows . x >= rhs}.

    Works on the homogenised cone {(t, x) : t >= 0, x >= 0, a.x - b t >= 0};
    rays with t > 0 give vertices, rays with t = 0 recession directions.
    Adjacency of rays is decided combinatorially from their zero sets.
    """
    rows = [list(r) for r in rows]
    rhs = list(rhs)
    if any(len(r) != n for r in rows):
        raise BadParameters("row length does not match n")
    if len(rhs) != len(rows):
        raise BadParameters("rhs length does not match the number of rows")
    d = n + 1
    # homogenised integer constraints g . (t, x) >= 0
    cons = []
    for r, b in zip(rows, rhs):
        g = _integer_rows([[-Fraction(b)] + [Fraction(x) for x in r]])[0]
        cons.append(g)

    # start: the orthant, rays e_0..e_n; zero-set bit k <-> (coordinate k) >= 0 tight
    full = (1 << d) - 1
    rays = [tuple(1 if j == k else 0 for j in range(d)) for k in range(d)]
    zeros = [full & ~(1 << k) for k in range(d)]
    bit = d
    for idx in _insertion_order(rows, rhs):
        g = cons[idx]
        vals = [sum(gj * rj for gj, rj in zip(g, r) if gj and rj) for r in rays]
        pos = [k for k, s in enumerate(vals) if s > 0]
        neg = [k for k, s in enumerate(vals) if s < 0]
        zer = [k for k, s in enumerate(vals) if s == 0]
        new_rays = [rays[k] for k in pos] + [rays[k] for k in zer]
        new_zeros = [zeros[k] for k in pos] + [zeros[k] | (1 << bit) for k in zer]
        if neg and pos:
            need = d - 2
            all_z = zeros
            for p in pos:
                zp = zeros[p]
                rp = rays[p]
                sp = vals[p]
                for q in neg:
                    common = zp & zeros[q]
                    if common.bit_count() < need:
                        continue
                    adjacent = True
                    for k, zk in enumerate(all_z):
                        if k != p and k != q and common & zk == common:
                            adjacent = False
                            break
                    if not adjacent:
                        continue
                    sq = -vals[q]
                    rq = rays[q]
                    new_rays.append(_norm([sp * a + sq * b for a, b in zip(rq, rp)]))
                    new_zeros.append(common | (1 << bit))
                    if len(new_rays) > ray_cap:
                        raise ResourceLimit(
                            f"double description exceeded {ray_cap} intermediate rays")
        rays, zeros = new_rays, new_zeros
        bit += 1

    vertices = []
    rec = []
    for r in rays:
        t = r[0]
        if t > 0:
            vertices.append(tuple(Fraction(x, t) for x in r[1:]))
        else:
            rec.append(tuple(r[1:]))
    vertices = sorted(set(vertices))
    rec = sorted(set(rec), reverse=True)
    return VRepresentation(tuple(vertices), tuple(rec))
