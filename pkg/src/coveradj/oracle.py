"""Ground-truth adjacency for the integer hull Q*(A) and the relaxation Q(A).

``hull_adjacent`` decides adjacency in Q*(A) by one exact feasibility LP over the
binary vertices; ``relaxation_adjacent`` and ``build_adjacency_structure`` use the
rank of the constraints tight at both endpoints.  ``add_inequality`` updates a
vertex list after cutting Q(A) with a new nonnegative inequality, using only the
old vertices and edges.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .blocker import minimal_transversals
from .core import BinaryPoint, Clutter, as_point
from .errors import BadParameters, DependentInequality, NotAVertex
from .exactla import (DEFAULT_RAY_CAP, Relation, VRepresentation, double_description_system,
                      lp_feasible, rank)


def hull_adjacent(c: Clutter, v, v_prime, blocker: Sequence[BinaryPoint] | None = None) -> bool:
    """Adjacency of two binary vertices in the integer hull Q*(A)."""
    n = c.n_cols
    v = as_point(n, v)
    w = as_point(n, v_prime)
    if blocker is None:
        blocker = minimal_transversals(c)
    verts = {p.support for p in blocker}
    for name, p in (("v", v), ("v'", w)):
        if p.support not in verts:
            raise NotAVertex(f"{name} = {p} is not a vertex of the integer hull")
    if v == w:
        raise NotAVertex("the two vertices must be distinct")
    union = v.support | w.support
    # a vertex with weight in a combination below (v + v')/2 lives inside supp v | supp v'
    others = [p for p in blocker if p.support <= union and p != v and p != w]
    if not others:
        return True
    return _combination_lp(v, w, others, sorted(union)) is None


def _combination_lp(v, w, others, coords):
    """Feasibility of: mu >= 0, t >= 0, sum mu u <= t (v + v')/2, sum mu = t, off-weight = 1.

    Variables are ordered mu_v, mu_v', mu_others..., t.  Returns the solution or None.
    """
    pts = [v, w] + list(others)
    k = len(pts)
    rels = []
    for j in coords:
        coeffs = [Fraction(2 if j in p.support else 0) for p in pts]
        coeffs.append(-Fraction((j in v.support) + (j in w.support)))
        rels.append(Relation(tuple(coeffs), "<=", Fraction(0)))
    rels.append(Relation(tuple([Fraction(1)] * k + [Fraction(-1)]), "=", Fraction(0)))
    rels.append(Relation(tuple([Fraction(0)] * 2 + [Fraction(1)] * (k - 2) + [Fraction(0)]),
                         "=", Fraction(1)))
    return lp_feasible(rels, k + 1)


def convex_combination_certificate(c: Clutter, v, v_prime,
                                   blocker: Sequence[BinaryPoint] | None = None):
    """For a non-adjacent pair, weights lambda over vertices with sum lambda u <= (v+v')/2.

    Returns a list of (vertex, weight) with positive weights, or None if adjacent.
    """
    n = c.n_cols
    v = as_point(n, v)
    w = as_point(n, v_prime)
    if blocker is None:
        blocker = minimal_transversals(c)
    union = v.support | w.support
    others = [p for p in blocker if p.support <= union and p != v and p != w]
    if not others:
        return None
    sol = _combination_lp(v, w, others, sorted(union))
    if sol is None:
        return None
    t = sol[-1]
    pts = [v, w] + others
    return [(p, mu / t) for p, mu in zip(pts, sol[:-1]) if mu]


# -- relaxation skeleton -------------------------------------------------------------

@dataclass(frozen=True)
class AdjacencyStructure:
    """Vertices of {x >= 0 : rows . x >= rhs} with finite and infinite edges.

    ``finite_edges`` holds vertex index pairs (i < j); ``infinite_edges`` holds
    (vertex index, h) meaning {w + gamma e_h : gamma >= 0} is an edge (h 1-based).
    """

    n: int
    rows: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]
    vrep: VRepresentation
    finite_edges: frozenset[tuple[int, int]]
    infinite_edges: frozenset[tuple[int, int]]

    @property
    def vertices(self) -> tuple[tuple[Fraction, ...], ...]:
        return self.vrep.vertices

    def index(self, point) -> int:
        pt = _as_rational(self.n, point)
        try:
            return self.vrep.vertices.index(pt)
        except ValueError:
            raise NotAVertex(f"{_fmt(pt)} is not a vertex") from None

    def neighbours(self, i: int) -> list[int]:
        out = [b if a == i else a for a, b in self.finite_edges if i in (a, b)]
        return sorted(out)

    def tight_rows(self, point) -> list[tuple[Fraction, ...]]:
        return _tight(self, _as_rational(self.n, point))[1]


def _fmt(pt) -> str:
    return "(" + ",".join(str(x) for x in pt) + ")"


def _as_rational(n: int, point) -> tuple[Fraction, ...]:
    if isinstance(point, BinaryPoint):
        return tuple(Fraction(b) for b in point.bits)
    pt = tuple(Fraction(x) for x in point)
    if len(pt) != n:
        raise BadParameters(f"point has length {len(pt)}, expected {n}")
    return pt


def _constraint_rows(s: AdjacencyStructure):
    n = s.n
    unit = [tuple(Fraction(1 if j == i else 0) for j in range(n)) for i in range(n)]
    return list(s.rows) + unit, list(s.rhs) + [Fraction(0)] * n


def _tight(s: AdjacencyStructure, pt) -> tuple[int, list]:
    rows, rhs = _constraint_rows(s)
    mask = 0
    tight = []
    for k, (r, b) in enumerate(zip(rows, rhs)):
        if sum(a * x for a, x in zip(r, pt) if a) == b:
            mask |= 1 << k
            tight.append(r)
    return mask, tight


def _rows_of(mask: int, rows) -> list:
    out = []
    k = 0
    while mask:
        if mask & 1:
            out.append(rows[k])
        mask >>= 1
        k += 1
    return out


def _edge_ranks(args):
    masks, rows, n = args
    return [rank(_rows_of(mk, rows)) == n - 1 for mk in masks]


def _structure(n, rows, rhs, vrep, jobs=1) -> AdjacencyStructure:
    rows = tuple(tuple(Fraction(x) for x in r) for r in rows)
    rhs = tuple(Fraction(b) for b in rhs)
    proto = AdjacencyStructure(n, rows, rhs, vrep, frozenset(), frozenset())
    all_rows, _ = _constraint_rows(proto)
    tight = [_tight(proto, v)[0] for v in vrep.vertices]
    nv = len(vrep.vertices)
    pairs = []
    masks = []
    for i in range(nv):
        for j in range(i + 1, nv):
            common = tight[i] & tight[j]
            if common.bit_count() >= n - 1:
                pairs.append((i, j))
                masks.append(common)
    # infinite edges: constraints tight at w whose coefficient on x_h vanishes
    inf_pairs = []
    for i in range(nv):
        for h in range(1, n + 1):
            mk = 0
            for k in _bits(tight[i]):
                if all_rows[k][h - 1] == 0:
                    mk |= 1 << k
            if mk.bit_count() >= n - 1:
                inf_pairs.append((i, h))
                masks.append(mk)
    unique = sorted(set(masks))
    if jobs > 1 and len(unique) > 64:
        chunk = -(-len(unique) // jobs)
        parts = [unique[a:a + chunk] for a in range(0, len(unique), chunk)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            flags = [f for part in ex.map(_edge_ranks, [(p, all_rows, n) for p in parts]) for f in part]
    else:
        flags = _edge_ranks((unique, all_rows, n))
    is_edge = dict(zip(unique, flags))
    finite = frozenset(p for p, mk in zip(pairs, masks[:len(pairs)]) if is_edge[mk])
    infinite = frozenset(p for p, mk in zip(inf_pairs, masks[len(pairs):]) if is_edge[mk])
    return AdjacencyStructure(n, rows, rhs, vrep, finite, infinite)


def _bits(mask: int):
    k = 0
    while mask:
        if mask & 1:
            yield k
        mask >>= 1
        k += 1


def build_adjacency_structure(c: Clutter, jobs: int = 1,
                              ray_cap: int = DEFAULT_RAY_CAP) -> AdjacencyStructure:
    rows = c.dense()
    return build_structure_for_system(rows, [1] * c.m, c.n_cols, jobs=jobs, ray_cap=ray_cap)


def build_structure_for_system(rows, rhs, n: int, jobs: int = 1,
                               ray_cap: int = DEFAULT_RAY_CAP) -> AdjacencyStructure:
    vrep = double_description_system(rows, rhs, n, ray_cap=ray_cap)
    return _structure(n, rows, rhs, vrep, jobs=jobs)


def relaxation_adjacent(s: AdjacencyStructure, u, w) -> bool:
    """Adjacency in Q(A): the constraints tight at both points have rank n - 1."""
    i = s.index(u)
    j = s.index(w)
    if i == j:
        raise NotAVertex("the two vertices must be distinct")
    rows, _ = _constraint_rows(s)
    common = _tight(s, s.vertices[i])[0] & _tight(s, s.vertices[j])[0]
    return rank(_rows_of(common, rows)) == s.n - 1


# -- adding one inequality ---------------------------------------------------------------

def _dominates(a, b) -> bool:
    return a != b and all(x >= y for x, y in zip(a, b))


def add_inequality(s: AdjacencyStructure, a: Sequence, c0) -> VRepresentation:
    """Vertices of P intersected with {a . x >= c0}, from the vertices and edges of P.

    Candidates are the old vertices that survive, the crossing points of finite
    edges, and the crossing points of infinite edges; any candidate dominating
    another candidate is discarded.
    """
    a = tuple(Fraction(x) for x in a)
    c0 = Fraction(c0)
    if len(a) != s.n:
        raise BadParameters(f"row has length {len(a)}, expected {s.n}")
    if any(x < 0 for x in a) or not c0 > 0:
        raise BadParameters("need a >= 0 and c0 > 0")
    for r, b in zip(s.rows, s.rhs):
        if b > 0 and all(x * b == y * c0 for x, y in zip(a, r)):
            raise DependentInequality("the inequality repeats a defining constraint")

    def val(p):
        return sum(x * y for x, y in zip(a, p) if x)

    verts = s.vertices
    vals = [val(p) for p in verts]
    cands = [p for p, t in zip(verts, vals) if t >= c0]
    for i, j in sorted(s.finite_edges):
        ti, tj = vals[i], vals[j]
        if (ti - c0) * (tj - c0) < 0:
            hi, lo = (i, j) if ti > c0 else (j, i)
            alpha = (c0 - vals[lo]) / (vals[hi] - vals[lo])
            cands.append(tuple(alpha * x + (1 - alpha) * y for x, y in zip(verts[hi], verts[lo])))
    for i, h in sorted(s.infinite_edges):
        if vals[i] < c0 and a[h - 1] != 0:
            beta = (c0 - vals[i]) / a[h - 1]
            p = list(verts[i])
            p[h - 1] += beta
            cands.append(tuple(p))
    cands = sorted(set(cands))
    kept = [p for p in cands if not any(_dominates(p, q) for q in cands)]
    return VRepresentation(tuple(kept), s.vrep.rays)
