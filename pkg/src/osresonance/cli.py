"""Command line front end.

    osresonance flats <arr>
    osresonance resonance <arr> --weights <file>
    osresonance components <arr> [--complete]
    osresonance classify --matrix <file>
    osresonance labelings --graph <file> [--up-to-symmetry]
    osresonance realize --matrix <file> [--limit k] [--up-to automorphism]
    osresonance latin --n <n> --count-blocks <ell> [--squares <file>]
    osresonance bounds --k-for-n <n> | --f <r> <k> | --check <arr> <index>
    osresonance generate <family> [params] [-o file]

``<arr>`` is an arrangement file, or a family name such as ``braid`` or
``monomial:2`` when no file of that name exists.  Exit status is 0 on
success, 1 on a domain or input error and 2 on a usage error.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

from . import formats
from .errors import BadParam, DomainError
from .incidence import Arrangement, generate
from .labelings import LabeledGraph, enumerate_affine_labelings
from .pencils import block_fiber_consistency, equality_case, euler_feasible_k, f_bound
from .qforms import build_Q, matrix_Q
from .realizer import DEFAULT_BUDGET, latin_parametrizations, latin_realization, realize
from .resonance import (
    cocycle_space_q,
    enumerate_all_components,
    enumerate_components,
    support_flats,
)
from .vinberg import Kind, classify_collection


# --- helpers ------------------------------------------------------------------------

def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise DomainError(f"{path}: {exc.strerror}") from None


def _with_path(path, fn, *args):
    try:
        return fn(_read(path), *args)
    except formats.ParseError as exc:
        raise formats.ParseError(f"{path}: {exc}") from None


def load_arrangement(spec: str) -> Arrangement:
    if os.path.exists(spec):
        return _with_path(spec, formats.parse_arrangement, os.path.basename(spec))
    family, *params = spec.split(":")
    try:
        return generate(family, *params)
    except BadParam as exc:
        raise BadParam(f"{spec}: no such file, and not a named family ({exc})") from None


def _fmt_flat(f) -> str:
    return "{" + ",".join(map(str, f)) + "}"


def _fmt_vec(v) -> str:
    return "(" + ", ".join(formats.format_rational(x) for x in v) + ")"


def _jsonable(obj):
    """Fractions become "p/q" strings; tuples become lists."""
    if isinstance(obj, Fraction):
        return formats.format_rational(obj)
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, Kind):
        return obj.value
    return obj


def _emit(args, data, lines):
    if args.json:
        print(json.dumps(_jsonable(data), indent=2))
    else:
        for line in lines:
            print(line)


# --- commands -----------------------------------------------------------------------

def cmd_flats(args):
    arr = load_arrangement(args.arrangement)
    data = {"lines": arr.n, "flats2": arr.flats2, "primes2": arr.primes2}
    out = [f"lines {arr.n}", f"L(2): {len(arr.flats2)} flats"]
    out += ["  " + _fmt_flat(f) for f in arr.flats2]
    out.append(f"L'(2): {len(arr.primes2)} multiple points")
    out += ["  " + _fmt_flat(f) for f in arr.primes2]
    _emit(args, data, out)


def _weight_report(arr, a):
    x = support_flats(arr, a)
    basis = cocycle_space_q(arr, a)
    if x is None:
        verdict, flats, blocks = "empty", (), ()
    else:
        inside = set(x.ground)
        flats = x.flats
        if any(a[j - 1] for j in arr.labels if j not in inside):
            verdict, blocks = "off-support", ()
        else:
            bm = build_Q(x)
            cc = classify_collection(bm)
            verdict = cc.verdict
            blocks = tuple((blk, c.kind) for blk, c in cc.classes)
    return {"weight": a, "X": flats, "verdict": verdict,
            "blocks": [{"lines": b, "kind": k} for b, k in blocks],
            "h1_dim": len(basis) - 1, "cocycle_basis": basis}


def cmd_resonance(args):
    arr = load_arrangement(args.arrangement)
    weights = _with_path(args.weights, formats.parse_weights, arr.n)
    reports = [_weight_report(arr, a) for a in weights]
    out = []
    for k, r in enumerate(reports, start=1):
        out.append(f"weight {k}: {_fmt_vec(r['weight'])}")
        out.append("  X(a): " + (" ".join(map(_fmt_flat, r["X"])) or "none"))
        out.append(f"  verdict: {r['verdict']}")
        for b in r["blocks"]:
            out.append(f"    block {_fmt_flat(b['lines'])}: {b['kind'].value}")
        out.append(f"  dim H1: {r['h1_dim']}")
    _emit(args, reports, out)


def _components(arr, args):
    if args.complete:
        return enumerate_all_components(arr, seed=args.seed)
    return enumerate_components(arr, seed=args.seed, threads=args.threads)


def _component_data(c):
    return {"flats": c.flats.flats, "support": c.support, "blocks": c.blocks,
            "affine_blocks": c.affine_blocks, "dim": c.dim, "local": c.is_local,
            "basis": c.basis}


def cmd_components(args):
    arr = load_arrangement(args.arrangement)
    comps = _components(arr, args)
    data = [_component_data(c) for c in comps]
    out = [f"{len(comps)} components"]
    for k, c in enumerate(comps, start=1):
        kind = "local" if c.is_local else "non-local"
        out.append(f"component {k}: dim {c.dim}, {kind}, {len(c.affine_blocks)} affine blocks")
        out.append("  flats: " + " ".join(map(_fmt_flat, c.flats.flats)))
        out.append("  blocks: " + " ".join(map(_fmt_flat, c.blocks)))
        for v in c.basis:
            out.append("  basis " + _fmt_vec(v))
    _emit(args, data, out)


def cmd_classify(args):
    q = _with_path(args.matrix, formats.parse_matrix)
    cc = classify_collection(matrix_Q(q))
    blocks = []
    out = []
    for blk, c in cc.classes:
        entry = {"lines": blk, "kind": c.kind}
        if c.kind is Kind.AFFINE:
            entry["null_vector"] = c.null_vector
            cert = "null vector " + _fmt_vec(c.null_vector)
        elif c.kind is Kind.INDEFINITE:
            entry["negative_vector"] = c.negative_vector
            cert = "negative vector " + _fmt_vec(c.negative_vector)
        else:
            entry["minors"] = c.minors
            cert = "minors " + _fmt_vec(c.minors)
        blocks.append(entry)
        out.append(f"block {_fmt_flat(blk)}: {c.kind.value} ({cert})")
    out.append(f"verdict: {cc.verdict}")
    if cc.affine:
        out.append(f"affine blocks: {len(cc.affine_blocks)}")
    _emit(args, {"blocks": blocks, "verdict": cc.verdict,
                 "affine_blocks": cc.affine_blocks}, out)


def cmd_labelings(args):
    n, edges = _with_path(args.graph, formats.parse_graph)
    g = LabeledGraph(n, tuple(edges))
    found = enumerate_affine_labelings(g, up_to_symmetry=args.up_to_symmetry)
    out = [f"{len(found)} labelings"] + [" ".join(map(str, m)) for m in found]
    _emit(args, found, out)


def cmd_realize(args):
    q = _with_path(args.matrix, formats.parse_matrix)
    reals = realize(q, limit=args.limit, budget=args.budget, up_to=args.up_to)
    data = [{"rows": r.j, "padding_rows": len(r.padding_rows)} for r in reals]
    if not reals:
        out = ["no realizations"]
    else:
        out = [f"{len(reals)} realizations"]
        for k, r in enumerate(reals, start=1):
            out.append(f"realization {k}: {len(r.j)} rows, {len(r.padding_rows)} padding")
            out += ["  " + " ".join(map(str, row)) for row in r.j]
    _emit(args, data, out)


def cmd_latin(args):
    if args.squares:
        n, squares = _with_path(args.squares, formats.parse_latin)
        if n != args.n:
            raise formats.ParseError(f"{args.squares}: file has n = {n}, expected {args.n}")
        arrays = formats.squares_to_arrays(n, squares)
        if len(arrays) + 1 != args.count_blocks:
            raise formats.ParseError(
                f"{args.squares}: {len(squares)} squares give {len(arrays) + 1} blocks, "
                f"expected {args.count_blocks}")
        real = latin_realization(n, args.count_blocks, arrays)
    else:
        real = latin_realization(args.n, args.count_blocks)
    data = {"n": args.n, "blocks": args.count_blocks, "rows": real.j}
    out = [f"n {args.n}, {args.count_blocks} blocks, {len(real.j)} rows"]
    out += [" ".join(map(str, row)) for row in real.j]
    if args.count:
        total = len(latin_parametrizations(args.n, args.count_blocks))
        data["systems"] = total
        out.append(f"normalized systems: {total}")
    _emit(args, data, out)


def _fbound_data(fb):
    lo_hi = fb.root_interval()
    return {"r": fb.r, "k": fb.k, "coefficients": (fb.a, fb.b, fb.c),
            "root_interval": lo_hi, "max_d": fb.max_d, "excluded": fb.excluded,
            "line_bound": fb.line_bound}


def cmd_bounds(args):
    if args.k_for_n is not None:
        n = args.k_for_n
        k = euler_feasible_k(n, printed=args.printed)
        eq = equality_case(n, printed=args.printed)
        _emit(args, {"n": n, "k_max": k, "equality": eq},
              [f"n {n}: k <= {k if k is not None else 'unbounded'}", f"equality at k = n + 1: {eq}"])
    elif args.f is not None:
        r, k = args.f
        fb = f_bound(r, k)
        data = _fbound_data(fb)
        out = [f"E2 - E1 = {_fmt_vec((fb.a, fb.b, fb.c))} in (d^2, d, 1)"]
        if data["root_interval"] is None:
            out.append("root: none")
        else:
            lo, hi = data["root_interval"]
            out.append(f"root in [{formats.format_rational(lo)}, {formats.format_rational(hi)}]"
                       f" (~{float((lo + hi) / 2):.7f})")
        out.append(f"max d: {fb.max_d if fb.max_d is not None else 'unbounded'}")
        if fb.excluded:
            out.append("excluded d: " + " ".join(map(str, fb.excluded)))
        if fb.line_bound is not None:
            out.append(f"line bound: {fb.line_bound}")
        _emit(args, data, out)
    else:
        spec, index = args.check
        arr = load_arrangement(spec)
        comps = _components(arr, args)
        try:
            idx = int(index)
        except ValueError:
            raise formats.ParseError(f"component index {index!r} is not an integer") from None
        if not 1 <= idx <= len(comps):
            raise DomainError(f"component index {idx} outside 1..{len(comps)}")
        rep = block_fiber_consistency(arr, comps[idx - 1])
        data = {"blocks": rep.blocks, "block_sizes": rep.block_sizes,
                "points_per_line": rep.points_per_line, "euler_k": rep.euler_k,
                "euler_ok": rep.euler_ok, "euler_tight": rep.euler_tight,
                "d": rep.d, "f_ok": rep.f_ok, "consistent": rep.consistent,
                "f": _fbound_data(rep.f)}
        out = [f"blocks: {' '.join(map(_fmt_flat, rep.blocks))}",
               f"points per line: {rep.points_per_line}",
               f"euler k bound: {rep.euler_k} (ok {rep.euler_ok}, tight {rep.euler_tight})",
               f"f bound at d = {rep.d}: {'ok' if rep.f_ok else 'violated'}",
               f"consistent: {rep.consistent}"]
        _emit(args, data, out)


def cmd_generate(args):
    arr = generate(args.family, *args.params)
    text = formats.write_arrangement(arr)
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise DomainError(f"{args.output}: {exc.strerror}") from None
    else:
        sys.stdout.write(text)


# --- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print JSON instead of text")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node budget")
    common.add_argument("--threads", type=int, default=1, help="worker threads for searches")

    p = argparse.ArgumentParser(prog="osresonance", description="Resonance of line arrangements.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("flats", parents=[common], help="print L(2) and L'(2)")
    s.add_argument("arrangement")
    s.set_defaults(func=cmd_flats)

    s = sub.add_parser("resonance", parents=[common], help="X(a), verdict and dim H1 per weight")
    s.add_argument("arrangement")
    s.add_argument("--weights", required=True)
    s.set_defaults(func=cmd_resonance)

    s = sub.add_parser("components", parents=[common], help="list resonance components")
    s.add_argument("arrangement")
    s.add_argument("--complete", action="store_true", help="include subarrangement components")
    s.set_defaults(func=cmd_components)

    s = sub.add_parser("classify", parents=[common], help="block types of a matrix")
    s.add_argument("--matrix", required=True)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("labelings", parents=[common], help="affine labelings of a graph")
    s.add_argument("--graph", required=True)
    s.add_argument("--up-to-symmetry", action="store_true")
    s.set_defaults(func=cmd_labelings)

    s = sub.add_parser("realize", parents=[common], help="0-1 realizations of a matrix")
    s.add_argument("--matrix", required=True)
    s.add_argument("--limit", type=int)
    s.add_argument("--up-to", choices=("rows", "automorphism"), default="rows")
    s.set_defaults(func=cmd_realize)

    s = sub.add_parser("latin", parents=[common], help="realization from permutation systems")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--count-blocks", type=int, required=True)
    s.add_argument("--squares", help="file of Latin squares, first rows the identity")
    s.add_argument("--count", action="store_true", help="also count normalized systems")
    s.set_defaults(func=cmd_latin)

    s = sub.add_parser("bounds", parents=[common], help="Euler characteristic bounds")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--k-for-n", type=int, metavar="N")
    g.add_argument("--f", type=int, nargs=2, metavar=("R", "K"))
    g.add_argument("--check", nargs=2, metavar=("ARR", "INDEX"))
    s.add_argument("--printed", action="store_true", help="use the n(n+1)/2 fibre term")
    s.add_argument("--complete", action="store_true", help="index into the complete component list")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("generate", parents=[common], help="write a named arrangement")
    s.add_argument("family")
    s.add_argument("params", nargs="*")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_generate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
