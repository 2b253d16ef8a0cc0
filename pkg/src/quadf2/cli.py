"""Command-line front end: ``quadf2 <verb> ...``.

Exit codes: 0 success, 1 a verification case failed, 2 usage or parse
error, 3 an enumeration bound was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Callable, Sequence

from . import suites
from .cospancat import (
    Cospan,
    compose_cospans,
    epsilon,
    epsilon_lift,
    parse_cospan,
    sigma,
    sigma_lift,
)
from .f2core import BitMatrix, Subspace, vec_from_str, vec_to_str
from .isofunc import iso_table
from .limits import DEFAULT_APEX_BOUND, DEFAULT_BOUND, EnumerationLimitError, check_bound
from .qmorph import enumerate_homs, orthogonal_group
from .quadform import QuadSpace, decompose, iso_class, parse_descriptor, parse_space
from .spancat import SpanMorphism, compose_spans

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_BOUND = 0, 1, 2, 3


class UsageError(Exception):
    pass


# -- input parsing -----------------------------------------------------------------


def _lines(arg: str) -> list[str]:
    text = sys.stdin.read() if arg == "-" else Path(arg).read_text()
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]


def load_space(arg: str) -> QuadSpace:
    """An inline descriptor such as ``H0+x1`` or a path to a space file."""
    try:
        if arg != "-" and not Path(arg).exists():
            return parse_descriptor(arg)
        return parse_space(iter(_lines(arg)))
    except (ValueError, StopIteration) as e:
        raise UsageError(f"cannot read space {arg!r}: {e}") from None


def _parse_span(lines: list[str]) -> SpanMorphism:
    # V block, W block, then one relation vector per line written as v|w
    it = iter(lines)
    V, W = parse_space(it), parse_space(it)
    gens = []
    for ln in it:
        v, _, w = ln.partition("|")
        gens.append(vec_from_str(v) | (vec_from_str(w) << V.dim))
    return SpanMorphism(V, W, Subspace.span(gens, V.dim + W.dim))


def load_span(arg: str) -> SpanMorphism:
    try:
        return _parse_span(_lines(arg))
    except (ValueError, StopIteration, OSError) as e:
        raise UsageError(f"cannot read span {arg!r}: {e}") from None


def load_cospan(arg: str) -> Cospan:
    try:
        return parse_cospan(_lines(arg))
    except (ValueError, StopIteration, OSError) as e:
        raise UsageError(f"cannot read cospan {arg!r}: {e}") from None


def span_to_text(s: SpanMorphism) -> str:
    parts = [s.dom.to_text(), s.cod.to_text()]
    parts += [f"{vec_to_str(v, s.dom.dim)}|{vec_to_str(w, s.cod.dim)}" for v, w in map(s.split, s.rel.basis)]
    return "\n".join(p for p in parts if p)


# -- output ------------------------------------------------------------------------


class Out:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def text(self, s: str) -> None:
        if self.fmt == "text":
            print(s, file=self.stream)

    def record(self, rec: dict) -> None:
        if self.fmt == "json-lines":
            print(json.dumps(rec, sort_keys=True), file=self.stream)


# -- verbs -------------------------------------------------------------------------


def cmd_classify(args, out: Out) -> int:
    for arg in args.spaces:
        s = load_space(arg)
        check_bound("classify", s.dim, max(args.bound, 64))
        c = iso_class(s)
        d = decompose(s)
        out.text(f"{arg}: {c} (dim {c.dim}, radical {c.rad_dim})")
        out.record(
            {
                "input": arg,
                "class": str(c),
                "dim": c.dim,
                "rad_dim": c.rad_dim,
                "rad_type": c.rad_type,
                "arf": c.nondeg_class,
                "nondeg_basis": [vec_to_str(v, s.dim) for v in d.nondeg_basis],
                "rad_basis": [vec_to_str(v, s.dim) for v in d.rad_basis],
            }
        )
    return EXIT_OK


def _map_strings(cols: Sequence[int], n: int) -> list[str]:
    return [vec_to_str(c, n) for c in cols]


def cmd_enum_homs(args, out: Out) -> int:
    V, W = load_space(args.dom), load_space(args.cod)
    homs = enumerate_homs(V, W, args.bound)
    out.text(f"|Hom({iso_class(V)}, {iso_class(W)})| = {len(homs)}")
    for i, f in enumerate(homs):
        out.text(f"  {i}: " + " ".join(_map_strings(f.images, W.dim)))
        out.record({"index": i, "images": _map_strings(f.images, W.dim)})
    return EXIT_OK


def cmd_orth_group(args, out: Out) -> int:
    V = load_space(args.space)
    group = orthogonal_group(V, args.bound)
    out.text(f"|O({iso_class(V)})| = {len(group)}")
    out.record({"space": str(iso_class(V)), "order": len(group)})
    if args.elements:
        for i, g in enumerate(group):
            out.text(f"  {i}: " + " ".join(_map_strings(g.images, V.dim)))
            out.record({"index": i, "images": _map_strings(g.images, V.dim)})
    return EXIT_OK


def cmd_compose_span(args, out: Out) -> int:
    s1, s2 = load_span(args.first), load_span(args.second)
    for s in (s1, s2):
        check_bound("compose-span", s.rel.ambient_dim, args.bound)
    if s1.cod != s2.dom:
        raise UsageError("spans are not composable")
    s = compose_spans(s1, s2)
    out.text(span_to_text(s))
    out.record({"rank": s.rank, "relation": [vec_to_str(r, s.rel.ambient_dim) for r in s.rel.basis]})
    return EXIT_OK


def _emit_cospan(t: Cospan, out: Out) -> None:
    out.text(t.to_text())
    out.record(
        {
            "apex": str(iso_class(t.apex)),
            "apex_dim": t.apex.dim,
            "left": _map_strings(t.left.images, t.apex.dim),
            "right": _map_strings(t.right.images, t.apex.dim),
            "epsilon": epsilon(t).to_strings(),
            "sigma_rank": sigma(t).rank,
        }
    )


def cmd_compose_cospan(args, out: Out) -> int:
    t1, t2 = load_cospan(args.first), load_cospan(args.second)
    if t1.cod != t2.dom:
        raise UsageError("cospans are not composable")
    for t in (t1, t2):
        check_bound("compose-cospan", t.apex.dim, args.apex_bound)
    _emit_cospan(compose_cospans(t1, t2), out)
    return EXIT_OK


def cmd_epsilon_lift(args, out: Out) -> int:
    V, W = load_space(args.dom), load_space(args.cod)
    rows = args.matrix.split(",") if args.matrix else []
    try:
        f = BitMatrix.from_strings(rows, V.dim) if rows else BitMatrix.zero(W.dim, V.dim)
    except ValueError as e:
        raise UsageError(f"bad matrix: {e}") from None
    if f.shape != (W.dim, V.dim):
        raise UsageError(f"matrix must be {W.dim}x{V.dim}, got {f.shape[0]}x{f.shape[1]}")
    check_bound("epsilon-lift", V.dim + W.dim, args.bound)
    _emit_cospan(epsilon_lift(f, V, W), out)
    return EXIT_OK


def cmd_sigma_lift(args, out: Out) -> int:
    s = load_span(args.span)
    check_bound("sigma-lift", s.rel.ambient_dim, args.bound)
    _emit_cospan(sigma_lift(s), out)
    return EXIT_OK


def cmd_iso_table(args, out: Out) -> int:
    names = args.spaces or ["0", "x0", "x1", "H0", "H1"]
    objs = [(n, load_space(n)) for n in names]
    for _, s in objs:
        check_bound("iso-table", 2 * s.dim, args.bound)
    table = iso_table(objs, args.bound)
    out.text(table.to_text())
    for rec in table.records():
        out.record(rec)
    return EXIT_OK


def _run_one(name: str, seed: int) -> list[dict]:
    return [c.record() for c in suites.run_suite(suites.suite(name), seed)]


def cmd_verify(args, out: Out) -> int:
    if args.list:
        for s in suites.SUITES:
            out.text(f"{s.criterion:>2}  {s.name:<15} {s.theorem}")
            out.record({"criterion": s.criterion, "suite": s.name, "theorem": s.theorem})
        return EXIT_OK
    chosen = list(suites.SUITES)
    if args.suite:
        try:
            chosen = [suites.suite(n) for n in args.suite]
        except KeyError as e:
            raise UsageError(f"unknown suite {e.args[0]!r}; see verify --list") from None
    names = [s.name for s in chosen]
    start = time.perf_counter()
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_run_one, names, [args.seed] * len(names)))
    else:
        results = [_run_one(n, args.seed) for n in names]
    failed = 0
    for s, recs in zip(chosen, results):
        bad = [r for r in recs if r["status"] != "pass"]
        failed += bool(bad)
        status = "PASS" if not bad else "FAIL"
        out.text(f"[{status}] {s.criterion:>2} {s.name}: {len(recs) - len(bad)}/{len(recs)} cases ({s.theorem})")
        for r in bad:
            out.text(f"    violation of {s.theorem}: {r['case']}: expected {r['expected']!r}, got {r['actual']!r}")
        for r in recs:
            out.record(r)
    if args.timing:
        out.text(f"elapsed {time.perf_counter() - start:.1f}s")
    return EXIT_VIOLATION if failed else EXIT_OK


# -- argument parsing ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", type=int, default=DEFAULT_BOUND, help="enumeration bound on ambient dimension (default %(default)s)")
    common.add_argument("--apex-bound", type=int, default=DEFAULT_APEX_BOUND, help="bound on cospan apex dimension (default %(default)s)")
    common.add_argument("--format", choices=("text", "json-lines"), default="text")
    common.add_argument("--seed", type=int, default=suites.DEFAULT_SEED)

    p = argparse.ArgumentParser(prog="quadf2", description="Quadratic spaces over GF(2): spans, cospans and isotropic functors.")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name: str, fn: Callable, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(fn=fn)
        return sp

    sp = verb("classify", cmd_classify, "isometry class of one or more spaces")
    sp.add_argument("spaces", nargs="+", help="descriptor like H0+x1 or a space file")
    sp = verb("enum-homs", cmd_enum_homs, "list form-preserving injections V -> W")
    sp.add_argument("dom")
    sp.add_argument("cod")
    sp = verb("orth-group", cmd_orth_group, "order (and elements) of O(V)")
    sp.add_argument("space")
    sp.add_argument("--elements", action="store_true")
    sp = verb("compose-span", cmd_compose_span, "compose two span files (second after first)")
    sp.add_argument("first")
    sp.add_argument("second")
    sp = verb("compose-cospan", cmd_compose_cospan, "compose two cospan files (second after first)")
    sp.add_argument("first")
    sp.add_argument("second")
    sp = verb("epsilon-lift", cmd_epsilon_lift, "a cospan whose epsilon is a given linear map")
    sp.add_argument("dom")
    sp.add_argument("cod")
    sp.add_argument("--matrix", help="rows of the cod x dom matrix, comma separated, e.g. 10,01")
    sp = verb("sigma-lift", cmd_sigma_lift, "a cospan whose sigma is a given span")
    sp.add_argument("span")
    sp = verb("iso-table", cmd_iso_table, "dimensions of Q_V, iso_V, K_V and Hom(iso_V, iso_W)")
    sp.add_argument("spaces", nargs="*")
    sp = verb("verify", cmd_verify, "run the verification suites")
    sp.add_argument("--list", action="store_true", help="list suites and exit")
    sp.add_argument("--suite", action="append", help="run only this suite (repeatable)")
    sp.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    sp.add_argument("--timing", action="store_true")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    out = Out(args.format)
    try:
        return args.fn(args, out)
    except EnumerationLimitError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BOUND
    except (UsageError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
