"""Command-line interface: ``python -m src.atomfib.cli <command> ...``."""

import argparse
import logging
import sys
from typing import List, Optional

import pandas as pd

from .bench import bench
from .completion import AtomicFiberSet, extended_atomic_fibers, restrict_to_order
from .config import (
    BENCH_SUITES,
    EXIT_BUDGET,
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_PARSE,
    configure_logging,
)
from .convexfiber import convex_atomic_filter, vertices
from .domains import LatticeContext, MonoidContext, RhsContext
from .errors import AtomfibError, BudgetExceeded, CoverTooLarge, ParseError
from .fiber import FiberEngine
from .intlin import IntMat
from .matrixio import format_fiber_set, parse_matrix, parse_vector, to_json
from .minkowski import decompose
from .oracle import oracle_atomic
from .projectlift import ProjectAndLift

logger = logging.getLogger(__name__)

EXIT_ERROR = 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Print JSON instead of text.")
    common.add_argument("--budget", type=int, default=None, help="Cap on processed completion candidates.")
    common.add_argument("--log-level", default=None, help="Logging level (default: ATOMFIB_LOG_LEVEL or WARNING).")

    with_matrix = argparse.ArgumentParser(add_help=False, parents=[common])
    with_matrix.add_argument("matrix", help="Matrix file: 'd n' header, then d rows of n integers.")
    domain = with_matrix.add_mutually_exclusive_group()
    domain.add_argument("--rhs-lattice", metavar="FILE", help="Lattice basis, one generator per row ('t d' header).")
    domain.add_argument("--rhs-monoid", metavar="FILE", help="Monoid generators, one per row ('t d' header).")
    with_matrix.add_argument(
        "--monoid-refine",
        choices=("cover", "hilbert"),
        default=None,
        help="Preorder refinement for monoid rhs domains (default: ATOMFIB_MONOID_REFINE or hilbert).",
    )

    parser = argparse.ArgumentParser(prog="atomfib", description="Atomic fibers of integer matrices.")
    sub = parser.add_subparsers(dest="command", required=True)

    atomic = sub.add_parser("atomic", parents=[with_matrix], help="Atomic fibers by project-and-lift.")
    atomic.add_argument("--trace", action="store_true", help="Print per-step sizes of the lifting phases.")
    sub.add_parser("extended", parents=[with_matrix], help="Extended atomic fibers by completion.")
    partial = sub.add_parser("partial", parents=[with_matrix], help="Partially extended atomic fibers.")
    partial.add_argument("--order", type=int, required=True, help="Order k of the fibers (0..n).")
    dec = sub.add_parser("decompose", parents=[with_matrix], help="Split one fiber into atomic ones.")
    dec.add_argument("--rhs", required=True, help="Right-hand side, e.g. 8,7.")
    dec.add_argument("--order", type=int, default=None, help="Order k (default n).")
    sub.add_parser("convex", parents=[with_matrix], help="Atomic fibers whose convex hulls are atomic.")
    ben = sub.add_parser("bench", parents=[common], help="Reproduce the published atomic-fiber counts.")
    ben.add_argument("suite", choices=BENCH_SUITES)
    ben.add_argument("--long", action="store_true", help="Include instances that run for hours or days.")
    orc = sub.add_parser("oracle", parents=[common], help="Brute-force atomic fibers in a rhs box.")
    orc.add_argument("matrix")
    orc.add_argument("--box", type=int, default=None, help="Box bound B for b in [0, B]^d.")
    return parser


def load_context(args: argparse.Namespace, matrix: IntMat) -> RhsContext:
    if getattr(args, "rhs_monoid", None):
        gens = parse_matrix(args.rhs_monoid)
        return MonoidContext(matrix, IntMat.from_columns(gens.rows, matrix.d))
    if getattr(args, "rhs_lattice", None):
        gens = parse_matrix(args.rhs_lattice)
        return LatticeContext(matrix, IntMat.from_columns(gens.rows, matrix.d))
    return LatticeContext.column_lattice(matrix)


def _lifter(args: argparse.Namespace, engine: FiberEngine, context: RhsContext) -> ProjectAndLift:
    return ProjectAndLift(engine, context, args.budget, refinement=args.monoid_refine)


def _emit(args: argparse.Namespace, data: dict, text: str) -> None:
    print(to_json(data) if args.json else text)


def _print_fibers(args: argparse.Namespace, fibers: AtomicFiberSet) -> None:
    data = fibers.to_dict()
    _emit(args, data, format_fiber_set(data))


def cmd_atomic(args: argparse.Namespace) -> int:
    matrix = parse_matrix(args.matrix)
    engine = FiberEngine(matrix)
    runner = _lifter(args, engine, load_context(args, matrix))
    if args.trace:
        logging.getLogger("src.atomfib.projectlift").setLevel(logging.INFO)
    fibers = runner.run()
    _print_fibers(args, fibers)
    if args.trace:
        print(pd.DataFrame(runner.trace_rows()).to_string(index=False), file=sys.stderr)
    return EXIT_OK


def cmd_extended(args: argparse.Namespace) -> int:
    matrix = parse_matrix(args.matrix)
    fibers = extended_atomic_fibers(FiberEngine(matrix), load_context(args, matrix), budget=args.budget)
    _print_fibers(args, restrict_to_order(fibers, 0))
    return EXIT_OK


def cmd_partial(args: argparse.Namespace) -> int:
    matrix = parse_matrix(args.matrix)
    fibers = extended_atomic_fibers(FiberEngine(matrix), load_context(args, matrix), budget=args.budget)
    _print_fibers(args, restrict_to_order(fibers, args.order))
    return EXIT_OK


def cmd_decompose(args: argparse.Namespace) -> int:
    matrix = parse_matrix(args.matrix)
    b = parse_vector(args.rhs)
    engine = FiberEngine(matrix)
    context = load_context(args, matrix)
    k = matrix.n if args.order is None else args.order
    if k == matrix.n:
        atoms = _lifter(args, engine, context).run()
    else:
        atoms = restrict_to_order(extended_atomic_fibers(engine, context, budget=args.budget), k)
    result = decompose(engine, b, atoms.rhs, k, context)
    data = result.to_dict()
    lines = [f"{_fmt(a['rhs'])} x {a['mult']}" for a in data["atoms"]]
    lines.append(f"residual {_fmt(data['residual'])}" + ("  (incomplete)" if data["incomplete"] else ""))
    _emit(args, data, "\n".join(lines))
    return EXIT_OK


def cmd_convex(args: argparse.Namespace) -> int:
    matrix = parse_matrix(args.matrix)
    engine = FiberEngine(matrix)
    atoms = _lifter(args, engine, load_context(args, matrix)).run()
    kept = convex_atomic_filter(engine, atoms.rhs)
    data = [{"rhs": list(b), "vertices": [list(v) for v in vertices(engine, b).vertices]} for b in kept]
    text = "\n".join(f"{_fmt(d['rhs'])}  " + " ".join(_fmt(v) for v in d["vertices"]) for d in data)
    _emit(args, {"count": len(data), "fibers": data}, text)
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    report = bench(args.suite, long=args.long, budget=args.budget)
    print(report.to_json(orient="records") if args.json else report.to_string(index=False))
    return EXIT_OK if report["match"].all() else EXIT_MISMATCH


def cmd_oracle(args: argparse.Namespace) -> int:
    matrix = parse_matrix(args.matrix)
    rhs = oracle_atomic(matrix, args.box)
    _emit(args, {"count": len(rhs), "rhs": [list(b) for b in rhs]}, "\n".join(_fmt(b) for b in rhs))
    return EXIT_OK


def _fmt(v) -> str:
    return "(" + ",".join(str(a) for a in v) + ")"


COMMANDS = {
    "atomic": cmd_atomic,
    "extended": cmd_extended,
    "partial": cmd_partial,
    "decompose": cmd_decompose,
    "convex": cmd_convex,
    "bench": cmd_bench,
    "oracle": cmd_oracle,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    if args.budget is not None and args.budget <= 0:
        print("error: --budget must be positive", file=sys.stderr)
        return EXIT_PARSE
    try:
        return COMMANDS[args.command](args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (BudgetExceeded, CoverTooLarge) as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (AtomfibError, ValueError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
