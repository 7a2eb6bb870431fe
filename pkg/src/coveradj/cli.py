"""Command line front end.

Exit codes: 0 success, 1 a valid negative answer (NotAdjacent, not mni, failed
self-test), 2 usage or input error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import itertools
import random
import sys
from dataclasses import dataclass, field

from .blocker import blocker_clutter, minimal_transversals
from .core import (BinaryPoint, Clutter, circulant, clutterize, consecutive_ones_circulant,
                   degenerate_projective_plane, format_matrix, is_row_circular, parse_matrix,
                   random_row_circular_clutter)
from .errors import CoverAdjError, InternalInconsistency, ResourceLimit
from .exactla import DEFAULT_RAY_CAP, double_description
from .mni import check_mni, cn94_matrix, is_mni_by_definition, stride_rows, three_nu_family
from .oracle import build_adjacency_structure, hull_adjacent, relaxation_adjacent
from .satgraph import (AdjacencyVerdict, Status, adjacency_row_circular, adjacency_sufficient,
                       adjacency_two_ones, classify, saturation_graph)

OK, NEGATIVE, USAGE, LIMIT = 0, 1, 2, 3


@dataclass
class CommandResult:
    exit_code: int
    stdout: str = ""
    stderr: str = ""


@dataclass
class _Out:
    fmt: str
    lines: list[str] = field(default_factory=list)

    def kv(self, key: str, value) -> None:
        if self.fmt == "records":
            self.lines.append(f"{key}={value}")
        else:
            self.lines.append(f"{key.replace('_', ' ')}: {value}")

    def raw(self, text: str) -> None:
        self.lines.extend(text.rstrip("\n").split("\n"))

    def text(self) -> str:
        return "\n".join(self.lines) + "\n" if self.lines else ""


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


# -- input helpers -----------------------------------------------------------------------

def _load(path: str, stdin) -> Clutter:
    if path == "-":
        text = stdin.read()
        where = "<stdin>"
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise _UsageError(f"{path}: {exc.strerror}") from None
        where = path
    try:
        return clutterize(parse_matrix(text))
    except CoverAdjError as exc:
        raise _UsageError(f"{where}: {exc}") from None


def _support(text: str, n: int) -> BinaryPoint:
    try:
        items = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise _UsageError(f"bad support {text!r}: expected comma-separated column indices") from None
    try:
        return BinaryPoint(n, frozenset(items))
    except CoverAdjError as exc:
        raise _UsageError(f"bad support {text!r}: {exc}") from None


def _fmt_set(s) -> str:
    return "{" + ",".join(map(str, sorted(s))) + "}"


def _fmt_vec(v) -> str:
    return ",".join(str(x) for x in v)


# -- subcommands -------------------------------------------------------------------------

def _family_clutter(args) -> tuple[Clutter, str]:
    p = args.params
    need = {"cnk": 2, "jt": 1, "cn94": 4, "three-nu": 1, "circulant": 1, "stride": 3}[args.kind]
    if len(p) != need:
        raise _UsageError(f"family {args.kind} takes {need} parameter(s), got {len(p)}")
    if args.kind == "circulant":
        bits = p[0].replace(",", "")
        if not bits or any(b not in "01" for b in bits):
            raise _UsageError(f"circulant first row must be a 0/1 string, got {p[0]!r}")
        return clutterize(circulant([int(b) for b in bits])), f"circulant {bits}"
    try:
        ints = [int(x) for x in p]
    except ValueError:
        raise _UsageError(f"family {args.kind} takes integer parameters") from None
    if args.kind == "cnk":
        return consecutive_ones_circulant(*ints), "C({},{})".format(*ints)
    if args.kind == "jt":
        return degenerate_projective_plane(ints[0]), f"J_{ints[0]}"
    if args.kind == "cn94":
        n, i, j, l = ints
        return cn94_matrix(n, i, j, l), f"C({n},2) + {_fmt_set((i, j, l))}"
    if args.kind == "three-nu":
        return three_nu_family(ints[0]), f"C({3 * ints[0]},2) + stride-3 rows"
    n, k, s = ints
    base = consecutive_ones_circulant(n, k)
    return base.with_rows(stride_rows(n, s)), f"C({n},{k}) + stride-{s} rows"


def cmd_family(args, out: _Out, stdin) -> int:
    c, name = _family_clutter(args)
    comments = [f"family={name}"]
    if args.verdict:
        rep = check_mni(c, ray_cap=args.ray_cap)
        if rep.certificate:
            comments.append(f"verdict=mni r={rep.certificate.r} s={rep.certificate.s}")
        else:
            comments.append("verdict=not-mni")
            comments.append(f"diagnostic={rep.diagnostic}")
    out.raw(format_matrix(c, comments))
    return OK


def cmd_blocker(args, out: _Out, stdin) -> int:
    c = _load(args.matrix, stdin)
    out.raw(format_matrix(blocker_clutter(c)))
    return OK


def _verdict_lines(out: _Out, v: AdjacencyVerdict, prefix: str = "") -> None:
    out.kv(prefix + "status", v.status.value)
    out.kv(prefix + "method", v.method)
    w = v.witness
    if w is not None:
        out.kv(prefix + "witness_d", _fmt_set(w.d.support))
        out.kv(prefix + "witness_d_prime", _fmt_set(w.d_prime.support))
        out.kv(prefix + "witness_x", _fmt_set(w.x.support))
        out.kv(prefix + "witness_x_prime", _fmt_set(j + 1 for j, b in enumerate(w.x_prime) if b))


def _hull_verdict(c, v, w, blocker=None) -> AdjacencyVerdict:
    ok = hull_adjacent(c, v, w, blocker)
    return AdjacencyVerdict(Status.ADJACENT if ok else Status.NOT_ADJACENT, "oracle")


def cmd_satgraph(args, out: _Out, stdin) -> int:
    c = _load(args.matrix, stdin)
    v, w = _support(args.v, c.n_cols), _support(args.w, c.n_cols)
    g = saturation_graph(c, v, w)
    cl = classify(g)
    out.kv("left", _fmt_set(g.left))
    out.kv("right", _fmt_set(g.right))
    out.kv("edges", len(g.edges))
    for e in g.edges:
        out.kv("edge", f"{e.left}-{e.right} row={e.row}")
    out.kv("components", cl.component_count)
    for comp in cl.components:
        out.kv("component", comp.describe())
    out.kv("connected", str(cl.connected).lower())
    out.kv("partite_connected", str(cl.partite_connected).lower())
    out.kv("almost_connected", str(cl.almost_connected).lower())
    out.kv("disjoint_supports", str(not (v.support & w.support)).lower())
    _verdict_lines(out, adjacency_sufficient(c, v, w), "sufficient.")
    if all(len(r) == 2 for r in c.rows):
        _verdict_lines(out, adjacency_two_ones(c, v, w), "two_ones.")
    if is_row_circular(c):
        _verdict_lines(out, adjacency_row_circular(c, v, w), "row_circular.")
    _verdict_lines(out, _hull_verdict(c, v, w), "oracle.")
    return OK


def _auto(c, v, w) -> AdjacencyVerdict:
    if all(len(r) == 2 for r in c.rows):
        return adjacency_two_ones(c, v, w)
    if is_row_circular(c):
        return adjacency_row_circular(c, v, w)
    first = adjacency_sufficient(c, v, w)
    if first.status is Status.ADJACENT:
        return first
    return _hull_verdict(c, v, w)


def cmd_adjacent(args, out: _Out, stdin) -> int:
    c = _load(args.matrix, stdin)
    v, w = _support(args.v, c.n_cols), _support(args.w, c.n_cols)
    m = args.method
    if m == "auto":
        verdict = _auto(c, v, w)
    elif m == "suf":
        verdict = adjacency_sufficient(c, v, w)
    elif m == "rowcirc":
        verdict = adjacency_row_circular(c, v, w)
    elif m == "two-ones":
        verdict = adjacency_two_ones(c, v, w)
    elif m == "oracle":
        verdict = _hull_verdict(c, v, w)
    else:
        s = build_adjacency_structure(c, jobs=args.jobs, ray_cap=args.ray_cap)
        ok = relaxation_adjacent(s, v, w)
        verdict = AdjacencyVerdict(Status.ADJACENT if ok else Status.NOT_ADJACENT, "relaxation")
    _verdict_lines(out, verdict)
    return NEGATIVE if verdict.status is Status.NOT_ADJACENT else OK


def cmd_vertices(args, out: _Out, stdin) -> int:
    c = _load(args.matrix, stdin)
    vrep = double_description(c, ray_cap=args.ray_cap)
    out.kv("vertices", len(vrep.vertices))
    out.kv("fractional", len(vrep.fractional_vertices))
    for p in vrep.vertices:
        out.kv("vertex", _fmt_vec(p))
    out.kv("rays", len(vrep.rays))
    for r in vrep.rays:
        out.kv("ray", _fmt_vec(r))
    return OK


def cmd_skeleton(args, out: _Out, stdin) -> int:
    c = _load(args.matrix, stdin)
    s = build_adjacency_structure(c, jobs=args.jobs, ray_cap=args.ray_cap)
    out.kv("vertices", len(s.vertices))
    for i, p in enumerate(s.vertices):
        out.kv("vertex", f"{i} {_fmt_vec(p)}")
    out.kv("finite_edges", len(s.finite_edges))
    for i, j in sorted(s.finite_edges):
        out.kv("edge", f"{i} {j}")
    out.kv("infinite_edges", len(s.infinite_edges))
    for i, h in sorted(s.infinite_edges):
        out.kv("ray_edge", f"{i} e{h}")
    return OK


def cmd_mni_check(args, out: _Out, stdin) -> int:
    c = _load(args.matrix, stdin)
    answers = []
    if args.method in ("certificate", "both"):
        rep = check_mni(c, ray_cap=args.ray_cap)
        answers.append(bool(rep))
        if rep.certificate:
            out.kv("verdict", "mni")
            out.kv("r", rep.certificate.r)
            out.kv("s", rep.certificate.s)
            out.kv("fractional_vertex", _fmt_vec(rep.certificate.fractional_vertex))
            out.kv("core_rows", _fmt_vec(k + 1 for k in rep.certificate.core_a.row_indices))
            out.kv("permutation", _fmt_vec(k + 1 for k in rep.certificate.permutation))
        else:
            out.kv("verdict", "not-mni")
            out.kv("diagnostic", rep.diagnostic)
    if args.method in ("definition", "both"):
        ok = is_mni_by_definition(c, ray_cap=args.ray_cap)
        answers.append(ok)
        out.kv("definition", "mni" if ok else "not-mni")
    if len(set(answers)) > 1:
        out.kv("agreement", "false")
    return OK if all(answers) else NEGATIVE


def cmd_self_test(args, out: _Out, stdin) -> int:
    rng = random.Random(args.seed)
    pairs = disagreements = 0
    for _ in range(args.count):
        n = rng.randint(4, args.max_n)
        c = random_row_circular_clutter(n, rng.randint(2, n), rng)
        blk = minimal_transversals(c)
        for v, w in itertools.combinations(blk, 2):
            pairs += 1
            if adjacency_row_circular(c, v, w).adjacent != hull_adjacent(c, v, w, blk):
                disagreements += 1
    out.kv("seed", args.seed)
    out.kv("clutters", args.count)
    out.kv("pairs", pairs)
    out.kv("disagreements", disagreements)
    out.kv("result", "pass" if disagreements == 0 else "fail")
    return OK if disagreements == 0 else NEGATIVE


# -- parser ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("human", "records"), default="records")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for edge tests")
    common.add_argument("--ray-cap", type=int, default=DEFAULT_RAY_CAP,
                        help="limit on intermediate rays in double description")

    p = _Parser(prog="coveradj", description="Vertex adjacency on set covering polyhedra "
                "and minimally nonideal matrices.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    f = sub.add_parser("family", aliases=["gen"], parents=[common],
                       help="emit a generated matrix")
    f.add_argument("kind", choices=("cnk", "jt", "cn94", "three-nu", "circulant", "stride"))
    f.add_argument("params", nargs="*")
    f.add_argument("--no-verdict", dest="verdict", action="store_false",
                   help="skip the mni verdict comments")
    f.set_defaults(func=cmd_family)

    b = sub.add_parser("blocker", parents=[common], help="minimal transversals as a matrix")
    b.add_argument("matrix", nargs="?", default="-")
    b.set_defaults(func=cmd_blocker)

    for name, func, hlp in (("satgraph", cmd_satgraph, "joint saturation graph report"),
                            ("adjacent", cmd_adjacent, "decide adjacency of two vertices")):
        a = sub.add_parser(name, parents=[common], help=hlp)
        a.add_argument("matrix")
        a.add_argument("v")
        a.add_argument("w", metavar="v_prime")
        if name == "adjacent":
            a.add_argument("--method", default="auto",
                           choices=("auto", "suf", "rowcirc", "two-ones", "oracle", "relaxation"))
        a.set_defaults(func=func)

    for name, func, hlp in (("vertices", cmd_vertices, "vertices and rays of Q(A)"),
                            ("skeleton", cmd_skeleton, "vertices and edges of Q(A)")):
        a = sub.add_parser(name, parents=[common], help=hlp)
        a.add_argument("matrix", nargs="?", default="-")
        a.set_defaults(func=func)

    m = sub.add_parser("mni-check", parents=[common], help="decide whether a matrix is mni")
    m.add_argument("matrix", nargs="?", default="-")
    m.add_argument("--method", choices=("certificate", "definition", "both"), default="certificate")
    m.set_defaults(func=cmd_mni_check)

    s = sub.add_parser("self-test", parents=[common],
                       help="row circular test against the oracle on random clutters")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=10)
    s.add_argument("--max-n", type=int, default=9)
    s.set_defaults(func=cmd_self_test)
    return p


def run(argv: list[str], stdin=None) -> CommandResult:
    stdin = sys.stdin if stdin is None else stdin
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "jobs", 1) < 1:
            raise _UsageError("--jobs must be at least 1")
        out = _Out(args.format)
        code = args.func(args, out, stdin)
        return CommandResult(code, out.text())
    except _UsageError as exc:
        return CommandResult(USAGE, "", f"coveradj: error: {exc}\n")
    except ResourceLimit as exc:
        return CommandResult(LIMIT, "", f"coveradj: resource limit: {exc}\n")
    except InternalInconsistency:
        raise
    except CoverAdjError as exc:
        return CommandResult(USAGE, "", f"coveradj: error: {exc}\n")
    except SystemExit as exc:  # --help
        return CommandResult(int(exc.code or 0))


def main(argv: list[str] | None = None) -> int:
    res = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(res.stdout)
    sys.stderr.write(res.stderr)
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
