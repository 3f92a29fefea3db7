"""Command-line front end: ``celcs <subcommand> ...``.

Exit codes: 0 success (or verification passed), 1 counterexample found,
2 usage, parse or capacity error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Iterable, Iterator

from celcs import counting, descent, harness
from celcs.cube import (
    Cube,
    Mask,
    kerror_decomposition,
    kerror_decomposition_partial,
    lc_mask,
    parse_cube,
    standard_decomposition,
)
from celcs.errors import CelcsError, SequenceFormatError
from celcs.seqcore import (
    Seq,
    add,
    lc_poly_oracle,
    linear_complexity,
    parse_sequence,
    phi,
    weight,
)
from celcs.spectrum import celcs, error_witness, first_descent_k, kerror_lc

__all__ = ["main", "run", "build_parser", "parse_level"]


class UsageError(CelcsError):
    pass


# ---------------------------------------------------------------- argument helpers


def parse_level(text: str, n: int) -> Mask | None:
    """``-L`` value: a bare integer is a complexity, anything with a comma or
    braces is an exponent set.  Complexity 0 gives ``None`` (no mask)."""
    t = text.strip()
    if "," in t or t.startswith("{"):
        return Mask.parse(t, n)
    try:
        lc = int(t)
    except ValueError:
        raise SequenceFormatError(f"-L expects an integer or a mask like 0,1,3, got {text!r}") from None
    if lc == 0:
        return None
    try:
        return lc_mask(n, lc)
    except ValueError as exc:
        raise SequenceFormatError(str(exc)) from None


def _need_mask(text: str, n: int) -> Mask:
    m = parse_level(text, n)
    if m is None:
        raise SequenceFormatError("complexity 0 has no mask")
    return m


def _expand(items: Iterable[str]) -> Iterator[str]:
    for item in items:
        if item.startswith("@"):
            path = Path(item[1:])
            try:
                lines = path.read_text(encoding="utf-8").splitlines()
            except OSError as exc:
                raise UsageError(f"cannot read {path}: {exc.strerror}") from None
            for line in lines:
                line = line.strip()
                if line and not line.startswith("#"):
                    yield line
        else:
            yield item


def _sequences(args) -> Iterator[Seq]:
    for text in _expand(args.sequences):
        yield parse_sequence(text, args.n)


class _Out:
    def __init__(self, fmt: str) -> None:
        self.fmt = fmt

    def emit(self, text: str, data) -> None:
        if self.fmt == "json":
            print(json.dumps(data, sort_keys=True))
        else:
            print(text)


# ---------------------------------------------------------------- subcommands


def _cmd_lc(args, out: _Out) -> int:
    for s in _sequences(args):
        lc = lc_poly_oracle(s) if args.oracle else linear_complexity(s)
        out.emit(str(lc), {"sequence": str(s), "L": lc, "method": "oracle" if args.oracle else "games-chan"})
    return 0


def _cmd_klc(args, out: _Out) -> int:
    for s in _sequences(args):
        v = kerror_lc(s, args.k, method=args.method, budget=args.budget)
        out.emit(str(v), {"sequence": str(s), "k": args.k, "L_k": v})
    return 0


def _cmd_celcs(args, out: _Out) -> int:
    for s in _sequences(args):
        spec = celcs(s, method=args.method, budget=args.budget)
        out.emit(str(spec), {"sequence": str(s), **spec.to_json()})
    return 0


def _cmd_witness(args, out: _Out) -> int:
    for s in _sequences(args):
        e = error_witness(s, args.k, method=args.method, budget=args.budget)
        lc = linear_complexity(s ^ e)
        out.emit(str(e), {"sequence": str(s), "k": args.k, "error": str(e),
                          "support": list(e.support()), "L": lc})
    return 0


def _cmd_decompose(args, out: _Out) -> int:
    for s in _sequences(args):
        if args.standard:
            d = standard_decomposition(s)
        elif args.partial is not None:
            d = kerror_decomposition_partial(s, args.partial, method=args.method, budget=args.budget)
        else:
            d = kerror_decomposition(s, method=args.method, budget=args.budget)
        lines = [
            f"{c.to_sequence()}  L={c.lc()}  {c}" for c in d.cubes
        ]
        if d.remainder is not None:
            lines.append(f"{d.remainder}  L={linear_complexity(d.remainder)}  remainder")
        if args.kerror or args.partial is not None:
            lines.append("cumulative weights: " + " ".join(map(str, d.cumulative_weights())))
        out.emit("\n".join(lines) if lines else "(empty)", d.to_json())
    return 0


def _cmd_cube_lc(args, out: _Out) -> int:
    for text in _expand(args.cubes):
        if text.lstrip().startswith("{"):
            c = Cube.from_json(json.loads(text))
        else:
            if args.n is None:
                raise UsageError("-n is required for the text cube form")
            c = parse_cube(text, args.n)
        out.emit(str(c.lc()), {**c.to_json(), "L": c.lc(), "sequence": str(c.to_sequence())})
    return 0


def _cmd_mask(args, out: _Out) -> int:
    m = _need_mask(args.L, args.n)
    if args.intersect is not None:
        m = m & _need_mask(args.intersect, args.n)
    if args.union is not None:
        m = m | _need_mask(args.union, args.n)
    if args.above is not None:
        m = m.restrict_above(args.above)
    data = m.to_json()
    text = str(m)
    if not m.is_empty():
        data.update({"weight": m.weight, "min": m.min_index(), "max": m.max_index()})
        text += f"  weight={m.weight} min={m.min_index()} max={m.max_index()}"
    else:
        data["weight"] = 0
        text += "  weight=0"
    out.emit(text, data)
    return 0


def _cmd_k2(args, out: _Out) -> int:
    s0, s1 = (_need_mask(t, args.n) for t in args.masks)
    v = descent.k2_second_descent(s0, s1)
    out.emit(str(v), {"k2": v, "S0": list(s0.indices), "S1": list(s1.indices)})
    return 0


def _cmd_k3(args, out: _Out) -> int:
    s0, s1, s2 = (_need_mask(t, args.n) for t in args.masks)
    flags = descent.k3_flags(s0, s1, s2)
    v = descent.k3_third_descent(s0, s1, s2)
    out.emit(
        f"{v}  branch={flags.branch.name}",
        {"k3": v, "branch": flags.branch.name,
         "conditions": {"i": flags.unshared_s1, "ii": flags.s0_s2_inside_s1,
                        "iii": flags.top_unshared_above}},
    )
    return 0


def _cmd_prop31(args, out: _Out) -> int:
    si = _need_mask(args.mask, args.n)
    v = descent.prop31_next_k(si, args.k)
    out.emit(str(v), {"next_k": v, "Si": list(si.indices), "ki": args.k})
    return 0


def _cmd_count(args, out: _Out) -> int:
    if args.rueppel:
        lc = int(args.L)
        res = counting.rueppel_count(args.n, lc)
        out.emit(str(res), {"n": args.n, "L": lc, **res.to_json()})
        return 0
    if args.i is None or args.j is None:
        raise UsageError("count needs -i and -j")
    target = parse_level(args.L, args.n)
    if args.t43:
        q = counting.CountQuery(args.n, args.i, args.j, target)
        res = counting.count_t43(q)
    else:
        if args.i0 is None:
            raise UsageError("--t53 needs --i0")
        q = counting.CountQuery(args.n, args.i, args.j, target, args.i0)
        res = counting.count_t53(q)
    out.emit(str(res), {**q.to_json(), **res.to_json()})
    return 0


def _cmd_predicate(args, out: _Out) -> int:
    if args.t41 or args.t51:
        lc = int(args.L)
        kind = "3err" if args.t41 else "4err"
        if args.t51 and args.i0 is None:
            raise UsageError("--t51 needs --i0")
        v = counting.second_descent_possible(kind, args.n, lc, args.i0)
    else:
        if args.i is None or args.j is None:
            raise UsageError("this predicate needs -i and -j")
        kind = "3err" if args.t42 else "4err"
        if args.t52 and args.i0 is None:
            raise UsageError("--t52 needs --i0")
        v = counting.is_allowed_final(kind, args.n, args.i, args.j, parse_level(args.L, args.n), args.i0)
    out.emit(str(v).lower(), {"result": v})
    return 0


def _cmd_verify(args, out: _Out) -> int:
    if args.samples is None:
        report = harness.verify_exhaustive(args.theorem, args.n, cap=args.cap, workers=args.workers)
    else:
        params = {"i": args.i, "j": args.j, "i0": args.i0}
        if args.L is not None:
            params["L"] = int(args.L)
        report = harness.verify_sampled(
            args.theorem, args.n, args.samples, args.seed,
            constructed=args.constructed, params=params, workers=args.workers,
        )
    if args.format == "json":
        print(report.to_json(elapsed=not args.no_elapsed))
    else:
        print(report.summary())
        for f in report.failures[:20]:
            print(f"  counterexample: {f}")
    return 0 if report.passed else 1


def _cmd_histogram(args, out: _Out) -> int:
    hist = harness.lc_histogram(args.n, cap=args.cap)
    if args.csv:
        sys.stdout.write(harness.histogram_csv(hist))
    elif args.format == "json":
        print(json.dumps({"n": args.n, "histogram": {str(k): v for k, v in hist.items()}}, sort_keys=True))
    else:
        for lc, c in hist.items():
            print(f"{lc}\t{c}")
    return 0


def _cmd_weight(args, out: _Out) -> int:
    for s in _sequences(args):
        out.emit(str(weight(s)), {"sequence": str(s), "weight": weight(s)})
    return 0


def _cmd_phi(args, out: _Out) -> int:
    for s in _sequences(args):
        f = phi(s)
        out.emit(str(f), {"sequence": str(s), "phi": str(f)})
    return 0


def _cmd_add(args, out: _Out) -> int:
    a = parse_sequence(args.a, args.n)
    b = parse_sequence(args.b, args.n)
    c = add(a, b)
    out.emit(str(c), {"sum": str(c)})
    return 0


def _cmd_first_descent(args, out: _Out) -> int:
    for s in _sequences(args):
        k = first_descent_k(s)
        out.emit(str(k), {"sequence": str(s), "k": k})
    return 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--budget", type=int, default=None,
                        help="brute-force evaluation budget (default: CELCS_BUDGET or 1e9)")

    p = argparse.ArgumentParser(
        prog="celcs",
        description="k-error linear complexity tools for binary sequences of period 2^n.",
        epilog="exit status: 0 ok, 1 counterexample found, 2 usage or capacity error",
    )
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def seq_cmd(name, func, help_, **kw):
        sp = sub.add_parser(name, parents=[common], help=help_, **kw)
        sp.add_argument("sequences", nargs="+", metavar="SEQ",
                        help="binary or 0x-hex period, or @file with one per line")
        sp.add_argument("-n", type=int, default=None, help="expected period exponent")
        sp.set_defaults(func=func)
        return sp

    def method(sp):
        sp.add_argument("--method", choices=("auto", "table", "brute"), default="auto")

    sp = seq_cmd("lc", _cmd_lc, "linear complexity")
    sp.add_argument("--oracle", action="store_true", help="use the polynomial valuation oracle")
    sp = seq_cmd("klc", _cmd_klc, "k-error linear complexity")
    sp.add_argument("-k", type=int, required=True)
    method(sp)
    method(seq_cmd("celcs", _cmd_celcs, "critical points of the k-error spectrum"))
    sp = seq_cmd("witness", _cmd_witness, "least, lexicographically first error reaching L_k")
    sp.add_argument("-k", type=int, required=True)
    method(sp)
    sp = seq_cmd("decompose", _cmd_decompose, "standard or k-error cube decomposition")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--standard", action="store_true")
    g.add_argument("--kerror", action="store_true")
    g.add_argument("--partial", type=int, metavar="M", help="k-error cubes up to level M plus remainder")
    method(sp)
    seq_cmd("weight", _cmd_weight, "Hamming weight of one period")
    seq_cmd("phi", _cmd_phi, "fold a period onto its first half")
    seq_cmd("first-descent", _cmd_first_descent, "first descent point from the closed form")

    sp = sub.add_parser("add", parents=[common], help="elementwise sum of two periods")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("-n", type=int, default=None)
    sp.set_defaults(func=_cmd_add)

    sp = sub.add_parser("cube-lc", parents=[common], help="complexity of a cube")
    sp.add_argument("cubes", nargs="+", metavar="CUBE",
                    help='"base=1; edges=2^1:5,2^2:1", a JSON object, or @file')
    sp.add_argument("-n", type=int, default=None)
    sp.set_defaults(func=_cmd_cube_lc)

    sp = sub.add_parser("mask", parents=[common], help="exponent mask of 2^n - L and its algebra")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-L", required=True, help="complexity or mask like 0,1,3")
    sp.add_argument("--intersect", metavar="L2")
    sp.add_argument("--union", metavar="L2")
    sp.add_argument("--above", type=int, metavar="I", help="keep exponents greater than I")
    sp.set_defaults(func=_cmd_mask)

    sp = sub.add_parser("k2", parents=[common], help="second descent point from two masks")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("masks", nargs=2, metavar="LEVEL", help="L value or mask, for L^(0) then L^(1)")
    sp.set_defaults(func=_cmd_k2)

    sp = sub.add_parser("k3", parents=[common], help="third descent point from three masks")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("masks", nargs=3, metavar="LEVEL")
    sp.set_defaults(func=_cmd_k3)

    sp = sub.add_parser("prop31", parents=[common], help="next descent when S_i contains all earlier masks")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("mask", metavar="LEVEL")
    sp.add_argument("-k", type=int, required=True, help="current descent point k_i")
    sp.set_defaults(func=_cmd_prop31)

    sp = sub.add_parser("count", parents=[common], help="closed-form sequence counts")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--t43", action="store_true", help="full complexity, drops at k=1 and k=3")
    g.add_argument("--t53", action="store_true", help="L = 2^n - 2^i0, drops at k=2 and k=4")
    g.add_argument("--rueppel", action="store_true", help="sequences of complexity L")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-i", type=int)
    sp.add_argument("-j", type=int)
    sp.add_argument("--i0", type=int)
    sp.add_argument("-L", required=True, help="target complexity or mask (0 for the zero level)")
    sp.set_defaults(func=_cmd_count)

    sp = sub.add_parser("predicate", parents=[common], help="structural predicates on descents")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--t41", action="store_true", help="can L_3 < L_1 (given L_1)")
    g.add_argument("--t42", action="store_true", help="is L admissible as L_3 (given i, j)")
    g.add_argument("--t51", action="store_true", help="can L_4 < L_2 < L (given L_2, i0)")
    g.add_argument("--t52", action="store_true", help="is L admissible as L_4 (given i0, i, j)")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-i", type=int)
    sp.add_argument("-j", type=int)
    sp.add_argument("--i0", type=int)
    sp.add_argument("-L", required=True)
    sp.set_defaults(func=_cmd_predicate)

    sp = sub.add_parser("verify", parents=[common], help="check a theorem exhaustively or by sampling")
    sp.add_argument("theorem", metavar="THEOREM", help=", ".join(harness.THEOREMS))
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--samples", type=int, help="sampled mode with this many uniform draws")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--constructed", type=int, help="size of the constructed stratum")
    sp.add_argument("-i", type=int)
    sp.add_argument("-j", type=int)
    sp.add_argument("--i0", type=int)
    sp.add_argument("-L", help="target complexity for the S+E stratum")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--cap", type=int, default=harness.DEFAULT_CAP)
    sp.add_argument("--no-elapsed", action="store_true", help="omit timing from JSON")
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("histogram", parents=[common], help="census of linear complexity")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--csv", action="store_true")
    sp.add_argument("--cap", type=int, default=harness.DEFAULT_CAP)
    sp.set_defaults(func=_cmd_histogram)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, _Out(args.format))
    except (CelcsError, ValueError) as exc:
        print(f"celcs {args.command}: error: {exc}", file=sys.stderr)
        return 2


def main(argv: list[str] | None = None) -> int:
    try:
        sys.stdout.reconfigure(line_buffering=True)
    except (AttributeError, ValueError):
        pass
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
