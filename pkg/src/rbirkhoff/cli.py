"""Command-line front end: ``rbirkhoff <command> [options]``.

Exit codes: 0 success, 1 input error, 2 budget exceeded, 3 polynomiality
check failed, 4 bijection mismatch.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from fractions import Fraction

from . import birkhoff, ehrhart, exactgeom, gtpatterns, posets, rsk
from .errors import BudgetExceeded, InputError, NoPeriodFound, NotAPolynomial, RBirkhoffError

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_POLY, EXIT_MISMATCH = 0, 1, 2, 3, 4


class BijectionMismatch(RBirkhoffError):
    pass


def fmt(x) -> str:
    return exactgeom.fmt_rat(Fraction(x))


def fmt_matrix(X) -> list[list[str]]:
    return [[fmt(x) for x in row] for row in X]


def parse_int_list(s: str | None) -> list[int] | None:
    if s is None:
        return None
    try:
        return [int(x) for x in s.replace(" ", "").split(",") if x != ""]
    except ValueError as e:
        raise InputError(f"expected a comma-separated list of integers, got {s!r}") from e


def parse_t_range(args) -> list[int]:
    if args.t_range:
        try:
            a, b = args.t_range.split(":")
            ts = list(range(int(a), int(b) + 1))
        except ValueError as e:
            raise InputError(f"--t-range must look like A:B, got {args.t_range!r}") from e
    elif args.t is not None:
        ts = [args.t]
    else:
        ts = [1]
    if any(t < 0 for t in ts):
        raise InputError("t must be nonnegative")
    return ts


def read_matrix(path: str, square: bool = True):
    """Rows on lines, whitespace-separated integers or ``p/q``; '#' starts a comment line."""
    text = sys.stdin.read() if path == "-" else open(path).read()
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        rows.append([exactgeom.as_rat(tok) for tok in line.replace(",", " ").split()])
    if not rows:
        raise InputError("empty matrix")
    if any(len(r) != len(rows[0]) for r in rows):
        raise InputError("ragged matrix")
    if square and len(rows) != len(rows[0]):
        raise InputError("matrix must be square")
    return rows


# ---------------------------------------------------------------- selectors


def _margins(args) -> birkhoff.Margins | None:
    alpha, beta = parse_int_list(args.alpha), parse_int_list(args.beta)
    if alpha is None and beta is None:
        return None
    if alpha is None or beta is None:
        raise InputError("--alpha and --beta go together")
    return birkhoff.Margins(tuple(alpha), tuple(beta))


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise InputError(f"--{name.replace('_', '-')} is required for family {args.family}")


def build_polytope(args) -> exactgeom.HPolytope:
    fam = args.family
    if fam in ("B", "M"):
        margins = _margins(args)
        if margins is None:
            _need(args, "n", "k")
            return birkhoff.build_restricted_birkhoff((args.n, args.k)) if fam == "B" else gtpatterns.build_M(args.n, args.k)
        _need(args, "k")
        build = birkhoff.build_transportation if fam == "B" else gtpatterns.build_M_transportation
        return build(margins, args.k)
    if fam == "GT":
        _need(args, "lam", "mu")
        return gtpatterns.build_GT(parse_int_list(args.lam), parse_int_list(args.mu))
    if fam in ("O", "C"):
        _need(args, "n", "k")
        P = posets.product_of_chains(args.n, args.k)
        return posets.order_polytope(P) if fam == "O" else posets.chain_polytope(P)
    raise InputError(f"unknown family {fam!r}")


def _known_dim(args) -> int | None:
    """Dimension of B/M with unit margins: a point for k = 1, else (n-1)^2."""
    if args.family in ("B", "M") and _margins(args) is None and args.n is not None and args.k is not None:
        return 0 if args.k == 1 else (args.n - 1) ** 2
    if args.family in ("O", "C") and args.n is not None and args.k is not None:
        return args.n * args.k
    return None


def _generic_counter(P: exactgeom.HPolytope, max_nodes: int | None) -> ehrhart.CountFunction:
    def count(t):
        if t == 0:
            exactgeom.vertices(P)  # raises on an empty polytope
            return 1
        return exactgeom.count_lattice_points(exactgeom.dilate(P, t), max_nodes=max_nodes)

    return ehrhart.CountFunction(count, 0, "generic")


def counter_label(f: ehrhart.CountFunction) -> str:
    used = getattr(f, "used", None)
    return ", ".join(sorted(used)) if used else f.label


def make_counter(args) -> ehrhart.CountFunction:
    """Pick the counter for ``t -> #(tP cap Z^N)`` and report its name in ``label``."""
    fam, choice = args.family, args.counter
    margins = _margins(args) if fam in ("B", "M") else None
    dim = _known_dim(args)
    if fam in ("B", "M"):
        _need(args, "k")
        if margins is None:
            _need(args, "n")
            birkhoff.BirkhoffSpec(args.n, args.k)
        spec_b = margins if margins is not None else birkhoff.BirkhoffSpec(args.n, args.k)
        spec_m = margins if margins is not None else (args.n, args.k)
        n = margins.n if margins is not None else args.n

        def direct(t):
            return birkhoff.count_lattice_points_direct(spec_b, t, k=args.k, max_nodes=args.max_nodes)

        def dp(t):
            return gtpatterns.count_M_diagonal_DP(spec_m, t, k=args.k, max_states=args.max_states)

        if choice == "auto":
            # crude a-priori size of the direct search tree
            used: set[str] = set()

            def auto(t):
                est = (t * args.k + 1) ** ((n - 1) ** 2)
                if fam == "B" and (args.max_nodes is None or est <= args.max_nodes):
                    out = ("direct DFS", direct(t))
                else:
                    out = ("diagonal DP", dp(t))
                used.add(out[0])
                return out

            f = ehrhart.CountFunction(lambda t: auto(t)[1], 0, "auto")
            f.auto = auto  # type: ignore[attr-defined]
            f.used = used  # type: ignore[attr-defined]
        elif choice == "direct":
            if fam != "B":
                raise InputError("the direct counter works on family B")
            f = ehrhart.CountFunction(direct, 0, "direct DFS")
        elif choice == "dp":
            f = ehrhart.CountFunction(dp, 0, "diagonal DP")
        else:
            f = _generic_counter(build_polytope(args), args.max_nodes)
    elif fam == "GT" and choice in ("auto", "dp"):
        lam, mu = parse_int_list(args.lam), parse_int_list(args.mu)
        f = ehrhart.CountFunction(lambda t: gtpatterns.kostka([t * x for x in lam], [t * x for x in mu]), 0, "Kostka DP")
    else:
        f = _generic_counter(build_polytope(args), args.max_nodes)
    if dim is None:
        dim = exactgeom.affine_dim(build_polytope(args))
    f.dim = dim
    return f


def _count_with_label(f: ehrhart.CountFunction, t: int) -> tuple[int, str]:
    auto = getattr(f, "auto", None)
    if auto is None:
        return f(t), f.label
    label, value = auto(t)
    f.cache[t] = value
    return value, label


# ---------------------------------------------------------------- commands


def cmd_count(args) -> dict:
    f = make_counter(args)
    rows = []
    for t in parse_t_range(args):
        t0 = time.perf_counter()
        value, label = _count_with_label(f, t)
        rows.append({"t": t, "count": value, "counter": label, "seconds": round(time.perf_counter() - t0, 4)})
    return {"command": "count", "family": args.family, "rows": rows}


def cmd_ehrhart(args) -> dict:
    f = make_counter(args)
    if args.quasi:
        lcm = args.denominator_lcm
        if lcm is None:
            lcm = exactgeom.vertex_denominators(exactgeom.vertices(build_polytope(args)))[1]
        q = ehrhart.quasi_polynomial(f, lcm, args.verify_extra)
        return {
            "command": "ehrhart",
            "family": args.family,
            "counter": counter_label(f),
            "dimension": f.dim,
            "denominator_lcm": lcm,
            "period": q.period,
            "failed_periods": list(q.failed_periods),
            "period_collapse": q.collapsed,
            "constituents": [[fmt(c) for c in cs] for cs in q.constituents],
        }
    fit = ehrhart.ehrhart_polynomial(f, args.verify_extra)
    return {
        "command": "ehrhart",
        "family": args.family,
        "counter": counter_label(f),
        "dimension": f.dim,
        "coefficients": [fmt(c) for c in fit.coeffs],
        "fit_nodes": list(fit.nodes),
        "verified_at": list(fit.verified),
        "value_at_0": fmt(fit.value_at_zero),
        "rows": [{"power": i, "coefficient": fmt(c)} for i, c in enumerate(fit.coeffs)],
    }


def _shape_vertex(args, v):
    if args.family in ("B", "M"):
        n = int(round(len(v) ** 0.5))
        return fmt_matrix(birkhoff.unflatten(v, n))
    if args.family == "GT":
        return [[fmt(x) for x in r] for r in gtpatterns.gt_from_flat(v, _gt_size(len(v))).rows]
    return fmt_matrix(posets.function_to_matrix(posets.product_of_chains(args.n, args.k), v))


def _gt_size(N: int) -> int:
    n = 0
    while n * (n + 1) // 2 < N:
        n += 1
    return n


def cmd_vertices(args) -> dict:
    P = build_polytope(args)
    V = exactgeom.vertices(P)
    verts = [_shape_vertex(args, v) for v in V.vertices]
    return {
        "command": "vertices",
        "family": args.family,
        "count": len(verts),
        "vertices": verts,
        "rows": [{"index": i, "vertex": " ".join(",".join(r) for r in v)} for i, v in enumerate(verts)],
    }


def table1(max_n: int) -> list[dict]:
    rows = []
    for n in range(1, max_n + 1):
        for k in range(1, n + 1):
            P = birkhoff.build_restricted_birkhoff((n, k))
            V = exactgeom.vertices(P)
            if len(V.vertices) == 1:
                rows.append({"n": n, "k": k, "vertices": 1, "facets": "point"})
            else:
                rows.append({"n": n, "k": k, "vertices": len(V.vertices), "facets": exactgeom.facet_count(P, V)})
    return rows


def cmd_facets(args) -> dict:
    if args.table1:
        return {"command": "facets", "table1": True, "rows": table1(args.max_n)}
    P = build_polytope(args)
    V = exactgeom.vertices(P)
    facets = "point" if len(V.vertices) == 1 else exactgeom.facet_count(P, V)
    return {"command": "facets", "family": args.family, "facets": facets, "vertices": len(V.vertices)}


def cmd_rsk(args) -> dict:
    X = read_matrix(args.matrix)
    Y = rsk.rho_inverse(X) if args.inverse else rsk.rho(X)
    return {"command": "rsk", "inverse": bool(args.inverse), "matrix": fmt_matrix(Y), "rows": [{"row": " ".join(r)} for r in fmt_matrix(Y)]}


def verify_bijection(n: int, k: int, t: int, max_nodes: int | None = None) -> dict:
    """Enumerate (1/t)-lattice points of B_n^k and M_n^k independently and compare under rho."""
    if t < 1:
        raise InputError("t must be positive")
    B = exactgeom.lattice_points(exactgeom.dilate(birkhoff.build_restricted_birkhoff((n, k)), t), max_nodes=max_nodes)
    M = exactgeom.lattice_points(exactgeom.dilate(gtpatterns.build_M(n, k), t), max_nodes=max_nodes)
    scale = Fraction(1, t)
    images = {birkhoff.flatten(rsk.rho(birkhoff.unflatten([x * scale for x in X], n))) for X in B}
    targets = {tuple(Fraction(y, t) for y in Y) for Y in M}
    ok = len(images) == len(B) and images == targets
    return {
        "command": "verify-bijection",
        "n": n,
        "k": k,
        "t": t,
        "count_B": len(B),
        "count_M": len(M),
        "injective": len(images) == len(B),
        "missing": len(targets - images),
        "extra": len(images - targets),
        "bijection": ok,
        "summary": f"{len(B)} = {len(M)}, bijection {'OK' if ok else 'FAILED'}" if len(B) == len(M) else f"{len(B)} != {len(M)}, bijection FAILED",
    }


def cmd_verify_bijection(args) -> dict:
    _need(args, "n", "k")
    birkhoff.BirkhoffSpec(args.n, args.k)
    out = verify_bijection(args.n, args.k, args.t if args.t is not None else 1, args.max_nodes)
    if not out["bijection"]:
        raise BijectionMismatch(out["summary"])
    return out


def random_half_birkhoff_point(n: int, rng: random.Random, t: int = 2):
    """A random point of (1/2) B_n^2 with entries in (1/(2t)) Z, as a poset function on [n] x [n]."""
    pts = exactgeom.lattice_points(exactgeom.dilate(birkhoff.build_restricted_birkhoff((n, 2)), t))
    X = rng.choice(pts)
    return tuple(Fraction(x, 2 * t) for x in X)


def cmd_rowmotion(args) -> dict:
    _need(args, "n")
    P = posets.product_of_chains(args.n, args.n)
    if args.input:
        g = posets.matrix_to_function(read_matrix(args.input))
    else:
        g = random_half_birkhoff_point(args.n, random.Random(args.seed))
    if len(g) != P.size:
        raise InputError(f"point must be a {args.n} x {args.n} matrix")
    posets.check_in(P, g, "C")
    step = lambda x: posets.rowmotion_chain(P, x)  # noqa: E731
    if args.steps is not None:
        pts = [g]
        for _ in range(args.steps):
            pts.append(step(pts[-1]))
        length = None
    else:
        pts = posets.orbit(step, g)
        length = len(pts)
    words = [[fmt(w) for w in posets.stanley_thomas_word(P, x)] for x in pts]
    return {
        "command": "rowmotion",
        "n": args.n,
        "orbit_length": length,
        "orbit": [fmt_matrix(posets.function_to_matrix(P, x)) for x in pts],
        "st_words": words,
        "rows": [{"step": i, "st_word": " ".join(w)} for i, w in enumerate(words)],
    }


def cmd_kostka(args) -> dict:
    _need(args, "lam", "mu")
    lam, mu = parse_int_list(args.lam), parse_int_list(args.mu)
    t0 = time.perf_counter()
    value = gtpatterns.kostka(lam, mu)
    return {"command": "kostka", "lambda": lam, "mu": mu, "kostka": value, "seconds": round(time.perf_counter() - t0, 4)}


def cmd_transfer(args) -> dict:
    X = read_matrix(args.matrix, square=False)
    P = posets.product_of_chains(len(X), len(X[0]))
    f = posets.matrix_to_function(X)
    g = posets.transfer_inverse(P, f) if args.inverse else posets.transfer(P, f)
    M = fmt_matrix(posets.function_to_matrix(P, g))
    return {"command": "transfer", "inverse": bool(args.inverse), "matrix": M, "rows": [{"row": " ".join(r)} for r in M]}


# ---------------------------------------------------------------- output


def _text(record: dict) -> str:
    cmd = record.get("command")
    if cmd == "count":
        return "\n".join(f"t={r['t']}: {r['count']}  [{r['counter']}, {r['seconds']}s]" for r in record["rows"])
    if cmd == "ehrhart" and "coefficients" in record:
        return (
            ", ".join(record["coefficients"])
            + f"\n# counter: {record['counter']}; fit t={record['fit_nodes'][0]}..{record['fit_nodes'][-1]}"
            + f"; verified t={record['verified_at']}; L(0) = {record['value_at_0']}"
        )
    if cmd == "ehrhart":
        lines = [f"period {record['period']} (denominator lcm {record['denominator_lcm']}"
                 + (", period collapse)" if record["period_collapse"] else ")")]
        lines += [f"t = {r} mod {record['period']}: " + ", ".join(c) for r, c in enumerate(record["constituents"])]
        return "\n".join(lines)
    if cmd == "vertices":
        blocks = [f"{record['count']} vertices"]
        for v in record["vertices"]:
            blocks.append("\n".join(" ".join(r) for r in v))
        return "\n\n".join(blocks)
    if cmd == "facets" and record.get("table1"):
        return "\n".join(f"n={r['n']} k={r['k']}: facets {r['facets']}, vertices {r['vertices']}" for r in record["rows"])
    if cmd == "facets":
        return f"facets {record['facets']}, vertices {record['vertices']}"
    if cmd in ("rsk", "transfer"):
        return "\n".join(" ".join(r) for r in record["matrix"])
    if cmd == "verify-bijection":
        return record["summary"]
    if cmd == "rowmotion":
        head = f"orbit length {record['orbit_length']}" if record["orbit_length"] else f"{len(record['orbit']) - 1} steps"
        return head + "\n" + "\n".join(f"{i}: " + " ".join(w) for i, w in enumerate(record["st_words"]))
    if cmd == "kostka":
        return str(record["kostka"])
    return json.dumps(record)


def render(record: dict, form: str) -> str:
    if form == "json":
        return json.dumps(record, indent=2)
    if form == "csv":
        rows = record.get("rows")
        if rows is None:
            rows = [{k: v for k, v in record.items() if not isinstance(v, (list, dict))}]
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue().rstrip("\n")
    return _text(record)


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", choices=["B", "M", "GT", "O", "C"], default="B")
    common.add_argument("--n", type=int)
    common.add_argument("--k", type=int, help="chain cap k; for O and C the second chain length")
    common.add_argument("--t", type=int)
    common.add_argument("--t-range", help="A:B, inclusive")
    common.add_argument("--alpha", help="row margins, comma list")
    common.add_argument("--beta", help="column margins, comma list")
    common.add_argument("--lambda", dest="lam", help="shape, comma list")
    common.add_argument("--mu", help="content, comma list")
    common.add_argument("--format", choices=["json", "csv", "text"], default="text")
    common.add_argument("--counter", choices=["auto", "direct", "dp", "generic"], default="auto")
    common.add_argument("--quasi", action="store_true")
    common.add_argument("--denominator-lcm", type=int)
    common.add_argument("--verify-extra", type=int, default=3)
    common.add_argument("--max-nodes", type=int, default=5_000_000)
    common.add_argument("--max-states", type=int)
    common.add_argument("--seed", type=int, default=0)

    ap = argparse.ArgumentParser(prog="rbirkhoff", description="Restricted Birkhoff polytopes, RSK and Ehrhart counts.")
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("count", parents=[common], help="lattice points of tP").set_defaults(func=cmd_count)
    sub.add_parser("ehrhart", parents=[common], help="Ehrhart (quasi-)polynomial").set_defaults(func=cmd_ehrhart)
    sub.add_parser("vertices", parents=[common], help="exact vertex list").set_defaults(func=cmd_vertices)
    p = sub.add_parser("facets", parents=[common], help="facet count")
    p.add_argument("--table1", action="store_true", help="facet/vertex grid of B_n^k for n <= --max-n")
    p.add_argument("--max-n", type=int, default=4)
    p.set_defaults(func=cmd_facets)
    p = sub.add_parser("rsk", parents=[common], help="piecewise-linear RSK of a matrix file ('-' for stdin)")
    p.add_argument("matrix")
    p.add_argument("--inverse", action="store_true")
    p.set_defaults(func=cmd_rsk)
    sub.add_parser("verify-bijection", parents=[common], help="check rho on (1/t)-lattice points").set_defaults(
        func=cmd_verify_bijection
    )
    p = sub.add_parser("rowmotion", parents=[common], help="rowmotion orbit on the chain polytope of [n] x [n]")
    p.add_argument("--input", help="matrix file; default is a random point of (1/2) B_n^2")
    p.add_argument("--steps", type=int)
    p.set_defaults(func=cmd_rowmotion)
    sub.add_parser("kostka", parents=[common], help="Kostka number").set_defaults(func=cmd_kostka)
    p = sub.add_parser("transfer", parents=[common], help="order-to-chain transfer on [n] x [m]")
    p.add_argument("matrix")
    p.add_argument("--inverse", action="store_true")
    p.set_defaults(func=cmd_transfer)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    for cap in ("max_nodes", "max_states"):
        v = getattr(args, cap)
        if v is not None and v <= 0:
            print(f"error: --{cap.replace('_', '-')} must be positive", file=sys.stderr)
            return EXIT_INPUT
    try:
        record = args.func(args)
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (NotAPolynomial, NoPeriodFound) as e:
        print(f"polynomiality check failed: {e}", file=sys.stderr)
        return EXIT_POLY
    except BijectionMismatch as e:
        print(f"bijection mismatch: {e}", file=sys.stderr)
        return EXIT_MISMATCH
    except (InputError, RBirkhoffError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    print(render(record, args.format))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
