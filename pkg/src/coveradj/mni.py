"""Minimally nonideal (mni) matrices: cores, the Lehman identity and certification.

Two independent routes are offered.  ``certify_mni`` builds a certificate from
the cores of A and of its blocker, a row matching realising
A1 B1^T = J + (rs - n) I, and a vertex enumeration showing that (1/r)1 is the
only fractional vertex.  ``is_mni_by_definition`` checks non-ideality and the
integrality of every coordinate restriction x_i = 0 and x_i = 1 directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .blocker import blocker_clutter
from .core import BinaryPoint, Clutter, consecutive_ones_circulant
from .errors import BadParameters, ResourceLimit
from .exactla import DEFAULT_RAY_CAP, double_description, double_description_system, rank

MAX_DEFINITION_N = 16


@dataclass(frozen=True)
class Core:
    row_indices: tuple[int, ...]  # 0-based positions in the clutter's row list
    rows: tuple[frozenset[int], ...]
    r: int


@dataclass(frozen=True)
class MniCertificate:
    core_a: Core
    core_b: Core
    permutation: tuple[int, ...]  # core_a row i pairs with core_b row permutation[i]
    fractional_vertex: tuple[Fraction, ...]

    @property
    def r(self) -> int:
        return self.core_a.r

    @property
    def s(self) -> int:
        return self.core_b.r


@dataclass(frozen=True)
class MniReport:
    certificate: MniCertificate | None
    diagnostic: str

    def __bool__(self):
        return self.certificate is not None


def _core_or_reason(c: Clutter) -> tuple[Core | None, str]:
    n = c.n_cols
    if not c.rows:
        return None, "no rows"
    r = min(c.row_sizes)
    idx = tuple(k for k, row in enumerate(c.rows) if len(row) == r)
    if r < 2:
        return None, f"minimum row size {r} < 2"
    if len(idx) != n:
        return None, f"{len(idx)} rows of minimum size {r}, need {n}"
    rows = tuple(c.rows[k] for k in idx)
    for j in range(1, n + 1):
        cs = sum(1 for row in rows if j in row)
        if cs != r:
            return None, f"column {j} of the minimum rows has {cs} ones, need {r}"
    dense = [[1 if j in row else 0 for j in range(1, n + 1)] for row in rows]
    if rank(dense) < n:
        return None, "minimum-size rows are singular"
    return Core(idx, rows, r), ""


def find_core(c: Clutter) -> Core | None:
    return _core_or_reason(c)[0]


def _match(adj: list[list[int]], size: int) -> list[int] | None:
    """Perfect matching by augmenting paths, trying partners in increasing index."""
    owner = [-1] * size

    def augment(i, seen):
        for k in adj[i]:
            if k in seen:
                continue
            seen.add(k)
            if owner[k] < 0 or augment(owner[k], seen):
                owner[k] = i
                return True
        return False

    for i in range(len(adj)):
        if not augment(i, set()):
            return None
    perm = [0] * len(adj)
    for k, i in enumerate(owner):
        perm[i] = k
    return perm


def lehman_identity(a1: Sequence[frozenset[int]], b1: Sequence[frozenset[int]],
                    r: int, s: int, n: int) -> tuple[int, ...] | None:
    """Row pairing with A1 B1^T = J + (rs - n) I, or None when no pairing exists."""
    if len(a1) != n or len(b1) != n:
        return None
    diag = 1 + r * s - n
    dots = [[len(x & y) for y in b1] for x in a1]
    adj = [[k for k in range(n) if dots[i][k] == diag] for i in range(n)]
    perm = _match(adj, n)
    if perm is None:
        return None
    for i in range(n):
        for k in range(n):
            if k != perm[i] and dots[i][k] != 1:
                return None
    return tuple(perm)


def check_mni(c: Clutter, ray_cap: int = DEFAULT_RAY_CAP) -> MniReport:
    """Certificate route; the diagnostic names the first failing condition."""
    vrep = double_description(c, ray_cap=ray_cap)
    frac = vrep.fractional_vertices
    if not frac:
        return MniReport(None, "no fractional vertex")
    core_a, why = _core_or_reason(c)
    if core_a is None:
        return MniReport(None, f"matrix has no core: {why}")
    blk = blocker_clutter(c)
    core_b, why = _core_or_reason(blk)
    if core_b is None:
        return MniReport(None, f"blocker has no core: {why}")
    perm = lehman_identity(core_a.rows, core_b.rows, core_a.r, core_b.r, c.n_cols)
    if perm is None:
        return MniReport(None, f"Lehman identity fails for r={core_a.r}, s={core_b.r}")
    fstar = tuple(Fraction(1, core_a.r) for _ in range(c.n_cols))
    if len(frac) > 1:
        return MniReport(None, f"{len(frac)} fractional vertices, need exactly one")
    if frac[0] != fstar:
        return MniReport(None, f"fractional vertex is not (1/{core_a.r})1")
    return MniReport(MniCertificate(core_a, core_b, perm, fstar), "mni")


def certify_mni(c: Clutter, ray_cap: int = DEFAULT_RAY_CAP) -> MniCertificate | None:
    return check_mni(c, ray_cap=ray_cap).certificate


def _restriction_integral(rows: list[list[int]], n: int, ray_cap: int) -> bool:
    if any(not any(r) for r in rows):
        return True  # an uncoverable row: the restriction is empty
    vrep = double_description_system(rows, [1] * len(rows), n, ray_cap=ray_cap)
    return vrep.is_integral()


def is_mni_by_definition(c: Clutter, ray_cap: int = DEFAULT_RAY_CAP) -> bool:
    n = c.n_cols
    if n > MAX_DEFINITION_N:
        raise ResourceLimit(f"definition check limited to n <= {MAX_DEFINITION_N}")
    if double_description(c, ray_cap=ray_cap).is_integral():
        return False
    dense = c.dense()
    for i in range(n):
        zero = [row[:i] + row[i + 1:] for row in dense]
        if not _restriction_integral(zero, n - 1, ray_cap):
            return False
        one = [row[:i] + row[i + 1:] for row in dense if not row[i]]
        if not _restriction_integral(one, n - 1, ray_cap):
            return False
    return True


# -- families built on C(n, 2) -------------------------------------------------------------

def rotate(support: frozenset[int], h: int, n: int) -> frozenset[int]:
    """Support of the vector rotated h places to the right."""
    return frozenset((i - 1 + h) % n + 1 for i in support)


def cn94_row(n: int, i: int, j: int, l: int) -> BinaryPoint:
    """Characteristic vector of {i, j, l}; appended to C(n, 2) it keeps the matrix mni."""
    if n < 9 or n % 2 == 0:
        raise BadParameters(f"n must be odd and >= 9, got {n}")
    if not 1 <= i < j < l <= n:
        raise BadParameters(f"need 1 <= i < j < l <= n, got ({i}, {j}, {l})")
    if j - i < 3 or (j - i) % 2 == 0:
        raise BadParameters(f"j - i = {j - i} must be odd and >= 3")
    if l - j < 3 or (l - j) % 2 == 0:
        raise BadParameters(f"l - j = {l - j} must be odd and >= 3")
    if i == 1 and l == n:
        raise BadParameters("i = 1 and l = n together are not allowed")
    return BinaryPoint(n, frozenset({i, j, l}))


def cn94_matrix(n: int, i: int, j: int, l: int) -> Clutter:
    return consecutive_ones_circulant(n, 2).with_rows([cn94_row(n, i, j, l).support])


def _check_nu(nu: int) -> int:
    if nu < 3 or nu % 2 == 0:
        raise BadParameters(f"nu must be odd and >= 3 (n = 3 nu odd), got {nu}")
    return 3 * nu


def three_nu_rows(nu: int) -> list[frozenset[int]]:
    n = _check_nu(nu)
    a1 = frozenset(range(1, n + 1, 3))
    return [a1, rotate(a1, 1, n), rotate(a1, 2, n)]


def three_nu_family(nu: int) -> Clutter:
    """C(3 nu, 2) with the three stride-3 rows appended."""
    n = _check_nu(nu)
    return consecutive_ones_circulant(n, 2).with_rows(three_nu_rows(nu))


def stride_rows(n: int, stride: int) -> list[frozenset[int]]:
    """The circulant rows chi({t, t + stride, ...}) for t = 1..stride."""
    if n % stride:
        raise BadParameters("stride must divide n")
    return [frozenset(range(t, n + 1, stride)) for t in range(1, stride + 1)]


def w_and_u_vertices(nu: int) -> tuple[list[BinaryPoint], list[BinaryPoint]]:
    """The vertices w^1..w^3 cut off by the stride-3 rows, and the rotations u^1..u^n."""
    n = _check_nu(nu)
    full = frozenset(range(1, n + 1))
    ws = [BinaryPoint(n, full - a) for a in three_nu_rows(nu)]
    # u^1: the group (0,1,0,1,0,1) followed by nu - 2 groups (0,1,1)
    bits = [0, 1, 0, 1, 0, 1] + [0, 1, 1] * (nu - 2)
    u1 = frozenset(k + 1 for k, b in enumerate(bits) if b)
    us = [BinaryPoint(n, rotate(u1, j, n)) for j in range(n)]
    for p in ws + us:
        if not cyclic_vertex_test(n, p):
            raise AssertionError(f"{p} fails the cyclic vertex pattern")
    return ws, us


def cyclic_vertex_test(n: int, v) -> bool:
    """No two cyclically consecutive zeroes and no three cyclically consecutive ones."""
    if isinstance(v, BinaryPoint):
        bits = v.bits
    else:
        bits = tuple(v)
    if len(bits) != n:
        raise BadParameters(f"vector has length {len(bits)}, expected {n}")
    for k in range(n):
        if bits[k] == 0 and bits[(k + 1) % n] == 0:
            return False
        if bits[k] and bits[(k + 1) % n] and bits[(k + 2) % n]:
            return False
    return True


def blocker_core_rows(c: Clutter) -> list[BinaryPoint]:
    core = find_core(blocker_clutter(c))
    if core is None:
        return []
    return [BinaryPoint(c.n_cols, r) for r in core.rows]

