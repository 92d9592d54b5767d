"""Command-line interface: ``schubvan <command> ...``.

Exit codes: 0 ok, 1 self-test failure, 2 bad input, 3 overflow, 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import selftest
from .errors import DimensionMismatch, MalformedInput, SchubvanError, TooLarge
from .ff import MERSENNE_61
from .lift import det_lifted, phi_size, write_polysys
from .perm import Permutation, parse_permutation
from .purbhoo import emit_hnp_system, vanish_randomized
from .schubert import (
    expand_product,
    fast_filters,
    pipe_dreams,
    schubert_coefficient,
    schubert_dd,
)

EXIT_OK, EXIT_SELFTEST, EXIT_INPUT, EXIT_OVERFLOW, EXIT_IO = 0, 1, 2, 3, 4
EXACT_MAX_N = 6
AUTO_EXACT_MAX_N = 4


def _perms(*texts: str) -> list[Permutation]:
    return [parse_permutation(t) for t in texts]


def _degree(*perms: Permutation) -> int:
    return max(p.trimmed().n for p in perms)


def cmd_poly(args) -> int:
    (w,) = _perms(args.w)
    print(schubert_dd(w).format())
    return EXIT_OK


def cmd_pipedreams(args) -> int:
    (w,) = _perms(args.w)
    dreams = pipe_dreams(w)
    print(len(dreams))
    if args.show:
        for k, d in enumerate(dreams, start=1):
            print(f"# {k}: {d.weight.format()}")
            print(d.render())
    return EXIT_OK


def cmd_coeff(args) -> int:
    u, v, w = _perms(args.u, args.v, args.w)
    print(schubert_coefficient(u, v, w))
    return EXIT_OK


def cmd_expand(args) -> int:
    u, v = _perms(args.u, args.v)
    for line in expand_product(u, v).lines(at_least=max(u.n, v.n)):
        print(line)
    return EXIT_OK


def _exact_line(u, v, w) -> str:
    c = schubert_coefficient(u, v, w)
    return f"decision={'ZERO' if c == 0 else 'NONZERO'} method=exact coefficient={c}"


def cmd_vanish(args) -> int:
    u, v, w = _perms(args.u, args.v, args.w)
    n = _degree(u, v, w)
    method = args.method
    if method == "exact":
        if n > EXACT_MAX_N:
            raise TooLarge(f"exact method is limited to n <= {EXACT_MAX_N}")
        print(_exact_line(u, v, w))
        return EXIT_OK
    if method == "auto":
        report = fast_filters(u, v, w)
        if report.implies_vanishing:
            print(f"decision=ZERO method=filter {report.summary()}")
            return EXIT_OK
        if n <= AUTO_EXACT_MAX_N:
            print(_exact_line(u, v, w))
            return EXIT_OK
    verdict = vanish_randomized(u, v, w, samples=args.samples, prime=args.prime, seed=args.seed)
    print(verdict.record())
    if verdict.witness:
        wit = verdict.witness
        print(f"witness prime={wit.prime} seed={wit.seed} sample={wit.sample} det={wit.det}")
    return EXIT_OK


def _emit(system, path: str | None) -> None:
    text = write_polysys(system)
    stats = (
        f"phi={phi_size(system)} variables={len(system.variables)} "
        f"parameters={len(system.parameters)} equations={len(system.equations)}"
    )
    if path:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(text)
        print(stats)
    else:
        sys.stdout.write(text)
        print(stats, file=sys.stderr)


def cmd_lift_det(args) -> int:
    if args.n < 1:
        raise MalformedInput("n must be >= 1")
    _emit(det_lifted(args.n).system, args.output)
    return EXIT_OK


def cmd_emit_hnp(args) -> int:
    u, v, w = _perms(args.u, args.v, args.w)
    _emit(emit_hnp_system(u, v, w, scalings=args.scalings), args.output)
    return EXIT_OK


def cmd_selftest(args) -> int:
    opts = selftest.Options(seed=args.seed, flip_sinks=args.inject_sink_flip)
    ok = selftest.run(args.level, opts, sys.stdout)
    return EXIT_OK if ok else EXIT_SELFTEST


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schubvan",
        description="Schubert polynomials, structure constants and randomized vanishing tests.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", help="print the Schubert polynomial S_w")
    p.add_argument("w")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("pipedreams", help="count (and optionally draw) the pipe dreams of w")
    p.add_argument("w")
    p.add_argument("--show", action="store_true", help="draw each pipe dream")
    p.set_defaults(func=cmd_pipedreams)

    p = sub.add_parser("coeff", help="Schubert structure constant c^w_{u,v}")
    for name in ("u", "v", "w"):
        p.add_argument(name)
    p.set_defaults(func=cmd_coeff)

    p = sub.add_parser("expand", help="expand S_u * S_v in the Schubert basis")
    p.add_argument("u")
    p.add_argument("v")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("vanish", help="decide whether c^w_{u,v} = 0")
    for name in ("u", "v", "w"):
        p.add_argument(name)
    p.add_argument("--method", choices=["auto", "purbhoo", "exact"], default="auto")
    p.add_argument("--samples", type=int, default=3, help="random evaluations (default 3)")
    p.add_argument("--prime", type=int, default=MERSENNE_61, help="field size (default 2^61-1)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_vanish)

    p = sub.add_parser("lift-det", help="write the lifted formulation of det X = z")
    p.add_argument("n", type=int)
    p.add_argument("-o", "--output", help="POLYSYS file (default: standard output)")
    p.set_defaults(func=cmd_lift_det)

    p = sub.add_parser("emit-hnp", help="write the polynomial system for a vanishing query")
    for name in ("u", "v", "w"):
        p.add_argument(name)
    p.add_argument("-o", "--output", help="POLYSYS file (default: standard output)")
    p.add_argument("--scalings", choices=["unit", "keep"], default="unit")
    p.set_defaults(func=cmd_emit_hnp)

    p = sub.add_parser("selftest", help="run the built-in invariant suites")
    p.add_argument("--level", choices=["quick", "full"], default="quick")
    p.add_argument("--seed", type=int, default=0)
    # mutation check of the harness itself: swap the sink rule of the clow graph
    p.add_argument("--inject-sink-flip", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (MalformedInput, DimensionMismatch, TooLarge, SchubvanError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OverflowError, MemoryError, RecursionError) as exc:
        print(f"overflow: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
