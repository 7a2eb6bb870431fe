"""Joint saturation graphs of vertex pairs and the combinatorial adjacency tests.

For two binary vertices v, v' of the set covering polyhedron, the graph lives on
the symmetric difference of their supports; p in supp v - supp v' and p' in
supp v' - supp v are joined when some row meets supp v exactly in {p} and supp v'
exactly in {p'}.  Partite-connectivity of this graph always implies adjacency.
For rows with exactly two ones connectivity is necessary, and for row circular
matrices connectivity, or almost-connectivity together with disjoint supports,
is necessary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from .blocker import is_minimal_transversal, is_transversal
from .core import BinaryMatrix, BinaryPoint, Clutter, as_point, clutterize, is_row_circular
from .errors import (BadIndexSet, InternalInconsistency, NotAVertex, NotRowCircular,
                     WrongRowSizes)


@dataclass(frozen=True)
class Edge:
    left: int
    right: int
    row: int  # 1-based index of the lowest witnessing row


@dataclass(frozen=True)
class SaturationGraph:
    left: tuple[int, ...]
    right: tuple[int, ...]
    edges: tuple[Edge, ...]

    @property
    def nodes(self) -> tuple[int, ...]:
        return tuple(sorted(self.left + self.right))

    def neighbours(self) -> dict[int, list[int]]:
        nb: dict[int, list[int]] = {p: [] for p in self.nodes}
        for e in self.edges:
            nb[e.left].append(e.right)
            nb[e.right].append(e.left)
        for p in nb:
            nb[p].sort()
        return nb

    def degree(self, p: int) -> int:
        return sum(1 for e in self.edges if p in (e.left, e.right))


class ComponentKind(str, Enum):
    PATH = "path"
    CYCLE = "cycle"
    ISOLATED = "node"
    OTHER = "other"


@dataclass(frozen=True)
class Component:
    kind: ComponentKind
    nodes: tuple[int, ...]  # walk order for paths and cycles, sorted otherwise
    n_edges: int

    @property
    def parity(self) -> str | None:
        if self.kind is ComponentKind.PATH:
            return "even" if self.n_edges % 2 == 0 else "odd"
        return None

    def describe(self) -> str:
        seq = ",".join(map(str, self.nodes))
        if self.kind is ComponentKind.PATH:
            return f"{self.parity} path {seq}"
        if self.kind is ComponentKind.CYCLE:
            return f"cycle {seq},{self.nodes[0]}"
        if self.kind is ComponentKind.ISOLATED:
            return f"node {seq}"
        return f"component {seq} ({self.n_edges} edges)"


@dataclass(frozen=True)
class GraphClassification:
    components: tuple[Component, ...]
    connected: bool
    partite_connected: bool
    almost_connected: bool

    @property
    def component_count(self) -> int:
        return len(self.components)


class Status(str, Enum):
    ADJACENT = "Adjacent"
    NOT_ADJACENT = "NotAdjacent"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class NonAdjacencyWitness:
    """Points d, d' with x = v - d + d' and x' = v' - d' + d both in the integer hull."""

    d: BinaryPoint
    d_prime: BinaryPoint
    x: BinaryPoint
    x_prime: tuple[int, ...]


@dataclass(frozen=True)
class AdjacencyVerdict:
    status: Status
    method: str
    witness: NonAdjacencyWitness | None = field(default=None)

    @property
    def adjacent(self) -> bool | None:
        if self.status is Status.UNKNOWN:
            return None
        return self.status is Status.ADJACENT


def _require_vertices(c: Clutter, v, w) -> tuple[BinaryPoint, BinaryPoint]:
    v = as_point(c.n_cols, v)
    w = as_point(c.n_cols, w)
    for name, p in (("v", v), ("v'", w)):
        if not is_minimal_transversal(c, p.support):
            raise NotAVertex(f"{name} = {p} is not a minimal transversal")
    if v == w:
        raise NotAVertex("the two vertices must be distinct")
    return v, w


def _build(c: Clutter, v: BinaryPoint, w: BinaryPoint) -> SaturationGraph:
    sv, sw = v.support, w.support
    left = tuple(sorted(sv - sw))
    right = tuple(sorted(sw - sv))
    vm, wm = v.mask, w.mask
    lm = vm & ~wm
    rm = wm & ~vm
    edges = {}
    for t, mk in enumerate(c.masks, start=1):
        a = mk & vm
        b = mk & wm
        # both intersections singletons, lying in the two partite sets
        if a and b and a & (a - 1) == 0 and b & (b - 1) == 0 and a & lm and b & rm:
            key = (a.bit_length(), b.bit_length())
            if key not in edges:
                edges[key] = Edge(key[0], key[1], t)
    return SaturationGraph(left, right, tuple(sorted(edges.values(), key=lambda e: (e.left, e.right))))


def saturation_graph(c: Clutter, v, v_prime) -> SaturationGraph:
    v, w = _require_vertices(c, v, v_prime)
    return _build(c, v, w)


def _components(g: SaturationGraph) -> list[list[int]]:
    nb = g.neighbours()
    seen = set()
    comps = []
    for p in g.nodes:
        if p in seen:
            continue
        stack = [p]
        seen.add(p)
        comp = []
        while stack:
            q = stack.pop()
            comp.append(q)
            for r in nb[q]:
                if r not in seen:
                    seen.add(r)
                    stack.append(r)
        comps.append(sorted(comp))
    comps.sort(key=lambda cc: cc[0])
    return comps


def _walk(start: int, nb: dict[int, list[int]], size: int) -> list[int]:
    seq = [start]
    prev = None
    cur = start
    while len(seq) < size:
        nxt = [r for r in nb[cur] if r != prev][0]
        seq.append(nxt)
        prev, cur = cur, nxt
    return seq


def classify(g: SaturationGraph) -> GraphClassification:
    nb = g.neighbours()
    comps = []
    for nodes in _components(g):
        ne = sum(len(nb[p]) for p in nodes) // 2
        degs = [len(nb[p]) for p in nodes]
        if len(nodes) == 1:
            comps.append(Component(ComponentKind.ISOLATED, tuple(nodes), 0))
        elif max(degs) <= 2 and ne == len(nodes) - 1:
            ends = [p for p in nodes if len(nb[p]) == 1]
            comps.append(Component(ComponentKind.PATH, tuple(_walk(min(ends), nb, len(nodes))), ne))
        elif all(d == 2 for d in degs) and ne == len(nodes):
            comps.append(Component(ComponentKind.CYCLE, tuple(_walk(nodes[0], nb, len(nodes))), ne))
        else:
            comps.append(Component(ComponentKind.OTHER, tuple(nodes), ne))
    connected = len(comps) == 1
    sets = [set(cc.nodes) for cc in comps]
    partite = any(set(g.left) <= s for s in sets) or any(set(g.right) <= s for s in sets)
    almost = len(comps) == 2 and any(cc.kind is ComponentKind.ISOLATED for cc in comps)
    return GraphClassification(tuple(comps), connected, partite, almost)


def contraction_minor(c: Clutter | BinaryMatrix, i: Iterable[int]) -> tuple[Clutter, dict[int, int]]:
    """Delete the columns in ``i``, drop dominating rows, relabel the rest to 1..n-|i|.

    Returns the minor and the map from old to new column labels.
    """
    drop = set(i)
    n = c.n_cols
    if not drop or drop >= set(range(1, n + 1)):
        raise BadIndexSet("need a nonempty proper subset of the columns")
    if not drop <= set(range(1, n + 1)):
        raise BadIndexSet(f"indices outside 1..{n}")
    keep = [j for j in range(1, n + 1) if j not in drop]
    relabel = {old: new for new, old in enumerate(keep, start=1)}
    rows = tuple(frozenset(relabel[j] for j in r if j in relabel) for r in c.rows)
    return clutterize(BinaryMatrix(len(keep), rows)), relabel


# -- deciders --------------------------------------------------------------------

def adjacency_sufficient(c: Clutter, v, v_prime) -> AdjacencyVerdict:
    g = saturation_graph(c, v, v_prime)
    if classify(g).partite_connected:
        return AdjacencyVerdict(Status.ADJACENT, "sufficient")
    return AdjacencyVerdict(Status.UNKNOWN, "sufficient")


def adjacency_two_ones(c: Clutter, v, v_prime) -> AdjacencyVerdict:
    if any(len(r) != 2 for r in c.rows):
        raise WrongRowSizes("every row must have exactly two ones")
    g = saturation_graph(c, v, v_prime)
    if classify(g).connected:
        return AdjacencyVerdict(Status.ADJACENT, "two-ones")
    return AdjacencyVerdict(Status.NOT_ADJACENT, "two-ones")


def _cyclic_neighbours(p: int, universe: list[int]) -> tuple[int, int]:
    """Predecessor and successor of p in the cyclic order of ``universe``."""
    k = universe.index(p)
    return universe[k - 1], universe[(k + 1) % len(universe)]


def _witness_from_sets(c: Clutter, v: BinaryPoint, w: BinaryPoint,
                       d_set: set[int], dp_set: set[int]) -> NonAdjacencyWitness:
    n = c.n_cols
    x = BinaryPoint(n, (v.support - d_set) | dp_set)
    xp = tuple((1 if j in w.support else 0) - (1 if j in dp_set else 0) + (1 if j in d_set else 0)
               for j in range(1, n + 1))
    return NonAdjacencyWitness(BinaryPoint(n, d_set), BinaryPoint(n, dp_set), x, xp)


def check_witness(c: Clutter, v, v_prime, wit: NonAdjacencyWitness) -> list[str]:
    """Return the list of violated witness conditions (empty when the witness is valid)."""
    n = c.n_cols
    v = as_point(n, v)
    w = as_point(n, v_prime)
    bad = []
    vb, wb = v.bits, w.bits
    d, dp = wit.d.bits, wit.d_prime.bits
    if not all(0 <= a <= b for a, b in zip(d, vb)):
        bad.append("0 <= d <= v")
    if not (all(a >= 0 for a in dp) and any(dp)):
        bad.append("d' >= 0 and d' != 0")
    if sum(a * b for a, b in zip(vb, dp)) != 0:
        bad.append("v . d' = 0")
    x = tuple(a - b + e for a, b, e in zip(vb, d, dp))
    if x != wit.x.bits:
        bad.append("x = v - d + d'")
    xp = tuple(a - b + e for a, b, e in zip(wb, dp, d))
    if xp != tuple(wit.x_prime):
        bad.append("x' = v' - d' + d")
    if any(t not in (0, 1) for t in x) or x == wb:
        bad.append("x binary and x != v'")
    if not is_transversal(c, wit.x.support):
        bad.append("x in the integer hull")
    if any(t < 0 for t in xp) or not all(
            sum(xp[j - 1] for j in r) >= 1 for r in c.rows):
        bad.append("x' in the integer hull")
    return bad


def adjacency_row_circular(c: Clutter, v, v_prime) -> AdjacencyVerdict:
    if not is_row_circular(c):
        raise NotRowCircular("matrix is not row circular in the given column order")
    v, w = _require_vertices(c, v, v_prime)
    g = _build(c, v, w)
    cl = classify(g)
    disjoint = not (v.support & w.support)
    if cl.connected or (cl.almost_connected and disjoint):
        return AdjacencyVerdict(Status.ADJACENT, "row-circular")

    if g.edges:
        # swap the two sides of the edge-bearing component with the smallest node
        comp = min((cc for cc in cl.components if cc.n_edges), key=lambda cc: min(cc.nodes))
        nodes = set(comp.nodes)
        d_set = nodes & v.support
        dp_set = nodes & w.support
    else:
        # exchange one node of supp v - supp v' with a cyclic neighbour in supp v' - supp v
        union = sorted(v.support | w.support)
        p = g.left[0]
        before, after = _cyclic_neighbours(p, union)
        q = after if after in g.right else before
        if q not in g.right:
            raise InternalInconsistency(f"no neighbour of {p} lies in supp v' - supp v")
        d_set, dp_set = {p}, {q}
    wit = _witness_from_sets(c, v, w, d_set, dp_set)
    bad = check_witness(c, v, w, wit)
    if bad:
        raise InternalInconsistency("non-adjacency witness fails: " + "; ".join(bad))
    return AdjacencyVerdict(Status.NOT_ADJACENT, "row-circular", wit)


def project_pair(c: Clutter, v, v_prime) -> tuple[Clutter, BinaryPoint, BinaryPoint]:
    """Restrict a vertex pair to supp v | supp v' via the contraction minor."""
    v = as_point(c.n_cols, v)
    w = as_point(c.n_cols, v_prime)
    outside = set(range(1, c.n_cols + 1)) - (v.support | w.support)
    if not outside:
        return c, v, w
    minor, relabel = contraction_minor(c, outside)
    pv = BinaryPoint(minor.n_cols, {relabel[j] for j in v.support})
    pw = BinaryPoint(minor.n_cols, {relabel[j] for j in w.support})
    return minor, pv, pw
