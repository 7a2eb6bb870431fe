"""Binary matrices, clutters, circular arcs and the matrix families used throughout.

Columns are 1-based everywhere a user can see them.  Internally each support is
also kept as an integer bitmask (bit ``i - 1`` stands for column ``i``) so that
intersection tests are single machine operations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import BadParameters, EmptyRow, MatrixFormatError


def mask_of(support: Iterable[int]) -> int:
    m = 0
    for i in support:
        m |= 1 << (i - 1)
    return m


def support_of(mask: int) -> frozenset[int]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def _check_indices(n: int, support: Iterable[int]) -> None:
    for i in support:
        if not 1 <= i <= n:
            raise BadParameters(f"column index {i} outside 1..{n}")


@dataclass(frozen=True)
class BinaryPoint:
    """A 0/1 vector of length ``n`` stored by its support."""

    n: int
    support: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "support", frozenset(self.support))
        _check_indices(self.n, self.support)

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "BinaryPoint":
        if any(b not in (0, 1) for b in bits):
            raise BadParameters("bits must be 0 or 1")
        return cls(len(bits), frozenset(i + 1 for i, b in enumerate(bits) if b))

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "BinaryPoint":
        return cls(n, support_of(mask))

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple(1 if i in self.support else 0 for i in range(1, self.n + 1))

    @property
    def mask(self) -> int:
        return mask_of(self.support)

    def __len__(self):
        return self.n

    def __str__(self):
        return "{" + ",".join(map(str, sorted(self.support))) + "}"


def as_point(n: int, v) -> BinaryPoint:
    """Accept a BinaryPoint, a 0/1 sequence of length n, or an iterable support."""
    if isinstance(v, BinaryPoint):
        if v.n != n:
            raise BadParameters(f"point has length {v.n}, expected {n}")
        return v
    v = list(v)
    # supports never contain 0 or repeated 1s, so a length-n 0/1 list is a bit vector
    if len(v) == n and n > 1 and set(v) <= {0, 1} and (0 in v or v.count(1) > 1):
        return BinaryPoint.from_bits(v)
    return BinaryPoint(n, frozenset(v))


@dataclass(frozen=True)
class BinaryMatrix:
    """Raw binary matrix as an ordered list of row supports (duplicates allowed)."""

    n_cols: int
    rows: tuple[frozenset[int], ...]

    def __post_init__(self):
        if self.n_cols < 1:
            raise BadParameters("n_cols must be positive")
        rows = tuple(frozenset(r) for r in self.rows)
        for r in rows:
            _check_indices(self.n_cols, r)
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return self.n_cols

    @property
    def m(self) -> int:
        return len(self.rows)

    def dense(self) -> list[list[int]]:
        return [[1 if j in r else 0 for j in range(1, self.n_cols + 1)] for r in self.rows]


@dataclass(frozen=True)
class Clutter:
    """Row supports with no empty row, no duplicate and no dominating row."""

    n_cols: int
    rows: tuple[frozenset[int], ...]
    masks: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n_cols < 1:
            raise BadParameters("n_cols must be positive")
        rows = tuple(frozenset(r) for r in self.rows)
        for r in rows:
            if not r:
                raise EmptyRow("clutter rows must be nonempty")
            _check_indices(self.n_cols, r)
        masks = tuple(mask_of(r) for r in rows)
        for a, ma in enumerate(masks):
            for b, mb in enumerate(masks):
                if a != b and ma & mb == ma:
                    raise BadParameters(f"row {b + 1} contains row {a + 1}; use clutterize()")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "masks", masks)

    @property
    def n(self) -> int:
        return self.n_cols

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def row_sizes(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.rows)

    def dense(self) -> list[list[int]]:
        return [[1 if j in r else 0 for j in range(1, self.n_cols + 1)] for r in self.rows]

    def as_matrix(self) -> BinaryMatrix:
        return BinaryMatrix(self.n_cols, self.rows)

    def support_set(self) -> frozenset[frozenset[int]]:
        return frozenset(self.rows)

    def with_rows(self, extra: Iterable[Iterable[int]]) -> "Clutter":
        """Append rows; raises if the result is not a clutter."""
        return Clutter(self.n_cols, self.rows + tuple(frozenset(r) for r in extra))


def clutterize(m: BinaryMatrix | Clutter) -> Clutter:
    """Drop duplicate rows (keeping the first) and rows that strictly contain another."""
    masks = [mask_of(r) for r in m.rows]
    if any(mk == 0 for mk in masks):
        raise EmptyRow("matrix has an empty row")
    keep = []
    seen = set()
    for a, ma in enumerate(masks):
        if ma in seen:
            continue
        if any(mb != ma and mb & ma == mb for mb in masks):
            continue
        seen.add(ma)
        keep.append(m.rows[a])
    return Clutter(m.n_cols, tuple(keep))


@dataclass(frozen=True)
class AssumptionsReport:
    no_dominating_rows: bool
    row_sizes_ok: bool
    no_constant_columns: bool
    columns_covered: bool

    def __bool__(self):
        return self.ok

    @property
    def ok(self) -> bool:
        return (self.no_dominating_rows and self.row_sizes_ok
                and self.no_constant_columns and self.columns_covered)


def validate_assumptions(c: Clutter | BinaryMatrix) -> AssumptionsReport:
    n = c.n_cols
    masks = [mask_of(r) for r in c.rows]
    no_dom = all(
        not (a != b and (ma & mb == ma))
        for a, ma in enumerate(masks)
        for b, mb in enumerate(masks)
    )
    sizes_ok = all(2 <= len(r) <= n - 1 for r in c.rows)
    full = (1 << n) - 1
    union = 0
    inter = full
    for mk in masks:
        union |= mk
        inter &= mk
    if not masks:
        inter = 0
    covered = union == full
    no_const = covered and inter == 0
    return AssumptionsReport(no_dom, sizes_ok, no_const, covered)


@dataclass(frozen=True)
class CircularArc:
    """Directed arc [start, end] of the cycle 1..n, wrapping past n when start > end."""

    start: int
    end: int
    n: int

    def __post_init__(self):
        if not (1 <= self.start <= self.n and 1 <= self.end <= self.n):
            raise BadParameters(f"arc endpoints must lie in 1..{self.n}")

    def __contains__(self, p: int) -> bool:
        return arc_contains(self, p)

    def elements(self) -> frozenset[int]:
        if self.start <= self.end:
            return frozenset(range(self.start, self.end + 1))
        return frozenset(range(self.start, self.n + 1)) | frozenset(range(1, self.end + 1))

    def __len__(self):
        if self.start <= self.end:
            return self.end - self.start + 1
        return self.n - self.start + 1 + self.end


def arc_contains(a: CircularArc, p: int) -> bool:
    if not 1 <= p <= a.n:
        raise BadParameters(f"index {p} outside 1..{a.n}")
    if a.start <= a.end:
        return a.start <= p <= a.end
    return p >= a.start or p <= a.end


def arc(i: int, j: int, n: int) -> frozenset[int]:
    return CircularArc(i, j, n).elements()


def circulant(c: Sequence[int]) -> BinaryMatrix:
    """Circulant matrix whose row t is c rotated right by t - 1 places."""
    n = len(c)
    if n < 1:
        raise BadParameters("need a nonempty first row")
    base = [i for i, b in enumerate(c) if b]
    rows = []
    for t in range(n):
        rows.append(frozenset((i + t) % n + 1 for i in base))
    return BinaryMatrix(n, tuple(rows))


def consecutive_ones_circulant(n: int, k: int) -> Clutter:
    if k < 2 or k > n - 1:
        raise BadParameters(f"need 2 <= k <= n - 1, got n={n}, k={k}")
    return Clutter(n, tuple(frozenset((t + d - 1) % n + 1 for d in range(k)) for t in range(1, n + 1)))


def degenerate_projective_plane(t: int) -> Clutter:
    if t < 2:
        raise BadParameters(f"need t >= 2, got {t}")
    rows = [frozenset(range(2, t + 2))]
    rows += [frozenset({1, i}) for i in range(2, t + 2)]
    return Clutter(t + 1, tuple(rows))


def is_circular_support(support: Iterable[int], n: int) -> bool:
    """True iff the ones (equivalently the zeroes) are cyclically consecutive."""
    s = set(support)
    if len(s) in (0, n):
        return True
    # count the places where a run of ones starts
    starts = sum(1 for i in s if ((i - 2) % n) + 1 not in s)
    return starts == 1


def is_row_circular(c: Clutter | BinaryMatrix) -> bool:
    return all(is_circular_support(r, c.n_cols) for r in c.rows)


def random_row_circular_clutter(n: int, n_arcs: int, rng: random.Random,
                                max_tries: int = 1000) -> Clutter:
    """Random clutter of circular arcs satisfying the standing assumptions."""
    for _ in range(max_tries):
        rows = []
        for _ in range(n_arcs):
            length = rng.randint(2, n - 1)
            start = rng.randint(1, n)
            rows.append(frozenset((start + d - 1) % n + 1 for d in range(length)))
        c = clutterize(BinaryMatrix(n, tuple(rows)))
        if validate_assumptions(c).ok:
            return c
    raise BadParameters(f"could not draw a valid row circular clutter with n={n}")


# -- text format -------------------------------------------------------------

def format_matrix(c: Clutter | BinaryMatrix, comments: Sequence[str] = ()) -> str:
    lines = [f"# {s}" for s in comments]
    lines.append(f"{len(c.rows)} {c.n_cols}")
    for row in c.dense():
        lines.append(" ".join(map(str, row)))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> BinaryMatrix:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise MatrixFormatError("empty matrix file")
    head = lines[0].split()
    if len(head) != 2:
        raise MatrixFormatError(f"header must be 'm n', got {lines[0]!r}")
    try:
        m, n = int(head[0]), int(head[1])
    except ValueError as exc:
        raise MatrixFormatError(f"bad header {lines[0]!r}") from exc
    body = lines[1:]
    if len(body) != m:
        raise MatrixFormatError(f"header announces {m} rows, found {len(body)}")
    rows = []
    for k, ln in enumerate(body, start=2):
        tokens = ln.split()
        if len(tokens) == 1 and len(tokens[0]) == n:
            tokens = list(tokens[0])
        if len(tokens) != n or any(t not in ("0", "1") for t in tokens):
            raise MatrixFormatError(f"row {k - 1} must hold {n} entries of 0/1: {ln!r}")
        rows.append(frozenset(j + 1 for j, t in enumerate(tokens) if t == "1"))
    return BinaryMatrix(n, tuple(rows))


def read_matrix(path: str) -> BinaryMatrix:
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read())
