"""Command-line front end.

Usage::

    python3 -m sqcolor GRAPH (--lists PATH | --uniform K | --random K [SEED])
                       [--solver {auto,8,7,6,oracle}] [--verify] [--trace PATH]

``GRAPH`` is an edge-list file or ``@name`` for a built-in fixture.  The
colouring is printed as ``label = colour`` lines.  Exit status: 0 success,
1 malformed input, 2 a solver precondition fails (or the oracle finds no
colouring), 3 internal case failure.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from .coloring import format_coloring, read_lists, uniform_lists, verify_square_coloring
from .density import mad_exact
from .discharging import solve6, solve7
from .errors import InternalCaseFailure, PreconditionViolated
from .graph import GraphError, components, girth, induced_subgraph, is_petersen, read_edge_list, square
from .testkit import exact_list_color, gen_named, random_lists
from .theorem1 import solve8
from .trace import Trace

__all__ = ["main", "build_parser", "load_graph", "load_lists", "select_solver"]

EXIT_OK, EXIT_INPUT, EXIT_PRECONDITION, EXIT_INTERNAL = 0, 1, 2, 3


def build_parser():
    p = argparse.ArgumentParser(prog="python3 -m sqcolor", description="List-colour the square of a subcubic graph.")
    p.add_argument("graph", help="edge-list file, or @fixture (e.g. @mcgee, @cycle(7))")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--lists", metavar="PATH", help="list file with 'label: c1 c2 ...' lines")
    src.add_argument("--uniform", type=int, metavar="K", help="every list is {1..K} (default K = 8)")
    src.add_argument(
        "--random", type=int, nargs="+", metavar=("K", "SEED"), help="uniform K-subsets of {1..3K}"
    )
    p.add_argument("--solver", choices=["auto", "8", "7", "6", "oracle"], default="auto")
    p.add_argument("--verify", action="store_true", help="re-check the output colouring")
    p.add_argument("--trace", metavar="PATH", help="write the decision trace here")
    p.add_argument("--seed", type=int, default=0, help="seed for --random when SEED is omitted")
    return p


def load_graph(spec: str):
    """Graph and labels from a file path or ``@fixture``."""
    if spec.startswith("@"):
        g = gen_named(spec)
        return g, [str(v) for v in range(g.n)]
    with open(spec) as fh:
        return read_edge_list(fh.read())


def load_lists(args, labels):
    n = len(labels)
    if args.lists is not None:
        with open(args.lists) as fh:
            return read_lists(fh.read(), labels)
    if args.random is None:
        return uniform_lists(n, 8 if args.uniform is None else args.uniform)
    if len(args.random) > 2:
        raise GraphError("--random takes K and an optional SEED")
    k = args.random[0]
    seed = args.random[1] if len(args.random) == 2 else args.seed
    return random_lists(n, k, 3 * k, random.Random(seed))


def _facts(g, lists):
    return {
        "girth": girth(g),
        "mad": mad_exact(g) if g.n else Fraction(0),
        "min list": min((len(s) for s in lists), default=0),
        "petersen": any(is_petersen(induced_subgraph(g, c)[0]) for c in components(g)),
        "subcubic": g.is_subcubic(),
    }


def select_solver(g, lists):
    """Strongest solver whose preconditions hold, trying 6, then 7, then 8.

    Returns ``(choice, facts)`` with ``choice`` ``None`` if none applies.
    """
    f = _facts(g, lists)
    k = f["min list"]
    if not f["subcubic"]:
        return None, f
    if k >= 6 and f["girth"] >= 7 and f["mad"] < Fraction(18, 7):
        return "6", f
    if k >= 7 and f["mad"] < Fraction(14, 5):
        return "7", f
    if k >= 8 and not f["petersen"]:
        return "8", f
    return None, f


def _describe(f):
    gi = f["girth"]
    return f"girth = {gi if gi != float('inf') else 'inf'}, mad = {f['mad']}, min list = {f['min list']}"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out, err = sys.stdout, sys.stderr
    try:
        g, labels = load_graph(args.graph)
        lists = load_lists(args, labels)
    except (OSError, GraphError, KeyError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT

    trace = Trace(labels)
    solver = args.solver
    try:
        if solver == "auto":
            solver, facts = select_solver(g, lists)
            if solver is None:
                print(f"no solver applies: {_describe(facts)}", file=err)
                return EXIT_PRECONDITION
            print(f"auto: solver {solver} ({_describe(facts)})", file=err)
        if solver == "oracle":
            col = exact_list_color(square(g), lists)
            if col is None:
                print("Unsat: no proper list coloring exists", file=err)
                return EXIT_PRECONDITION
        else:
            col = {"8": solve8, "7": solve7, "6": solve6}[solver](g, lists, trace)
    except PreconditionViolated as exc:
        print(f"precondition failed: {exc}", file=err)
        return EXIT_PRECONDITION
    except InternalCaseFailure as exc:
        print(f"internal case failure: {exc}", file=err)
        _write_trace(args.trace, trace)
        return EXIT_INTERNAL
    _write_trace(args.trace, trace)

    if args.verify:
        bad = verify_square_coloring(g, lists, col)
        if bad is not None:
            print(f"verification failed: {bad.message}", file=err)
            return EXIT_INTERNAL
        print(f"verified: {g.n} vertices", file=err)
    out.write(format_coloring(col, labels))
    return EXIT_OK


def _write_trace(path, trace):
    if path:
        with open(path, "w") as fh:
            fh.write(trace.dump())


if __name__ == "__main__":
    sys.exit(main())
