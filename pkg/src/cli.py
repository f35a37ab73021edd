"""
Command-line entry point: `python -m src.cli <command> ...`

    compute    Gram matrix of a dataset, written as CSV
    check-psd  smallest eigenvalue of a Gram CSV; exit 1 if not PSD
    serve      run the HTTP API

Exit codes: 0 success, 1 PSD violation or oracle mismatch, 2 bad input or
configuration.
"""
from typing import List, Optional
import argparse
import logging
import math
import sys

from pydantic import ValidationError

from .config import settings
from .core.gram import NormalizeMode, check_gram_ids, is_psd, min_eigenvalue, normalize_gram, read_gram, write_gram
from .core.oracles import brute_force_sm, brute_force_subgraph_kernel
from .core.parser import parse_dataset
from .core.product_graph import build_wpg
from .exceptions import GraphKernelError, InputError
from .schemas import KernelConfig, KernelName
from .tasks import build_setup, compute_gram, compute_pair

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT_ERROR = 2


def _kernel_config(args: argparse.Namespace) -> KernelConfig:
    return KernelConfig(
        kernel=args.kernel,
        max_size=args.max_size,
        vertex_kernel=args.vertex_kernel,
        edge_kernel=args.edge_kernel,
        d_weight=args.d_weight,
        weights=args.weights,
        normalize=getattr(args, "normalize", NormalizeMode.NONE.value),
    )


def cmd_compute(args: argparse.Namespace) -> int:
    config = _kernel_config(args)
    dataset = parse_dataset(args.dataset)
    check_gram_ids(dataset.ids)
    gram = compute_gram(dataset, config, threads=args.threads, progress=args.progress)
    gram = normalize_gram(gram, config.normalize)
    write_gram(gram, args.out)
    print(f"Wrote {gram.size}x{gram.size} {config.kernel.value} Gram matrix to {args.out}")
    return EXIT_OK


def cmd_check_psd(args: argparse.Namespace) -> int:
    gram = read_gram(args.gram)
    value = min_eigenvalue(gram)
    ok = is_psd(gram, tol=args.tol)
    print(f"min eigenvalue: {value:.17g}")
    print("PSD: yes" if ok else "PSD: NO")
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("src.main:app", host=args.host, port=args.port)
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    """Engine vs brute force on one pair of the dataset."""
    config = _kernel_config(args)
    dataset = parse_dataset(args.dataset)
    graphs = {g.graph_id: g for g in dataset.graphs}
    if not graphs:
        raise InputError(f"dataset {args.dataset} is empty")
    first = dataset.graphs[0].graph_id
    try:
        g1, g2 = graphs[args.g1 or first], graphs[args.g2 or args.g1 or first]
    except KeyError as e:
        raise InputError(f"graph id {e} not found in {args.dataset}") from None

    setup = build_setup(config)
    if args.dump_wpg:
        build_wpg(g1, g2, setup.kv, setup.ke).write_edge_list(args.dump_wpg)
        print(f"Wrote product graph edges to {args.dump_wpg}")

    engine = compute_pair(g1, g2, setup)
    if config.kernel is KernelName.SUBGRAPH:
        expected = brute_force_subgraph_kernel(g1, g2, config.weights or [1.0] * config.max_size, config.max_size)
    else:
        opts = setup.options
        expected = brute_force_sm(g1, g2, setup.kv, setup.ke, opts.weight, opts.max_size, opts.connected_only)

    print(f"pair: {g1.graph_id} {g2.graph_id}")
    print(f"engine: {engine.total:.17g}")
    print(f"oracle: {expected:.17g}")
    print(f"cliques visited: {engine.cliques_visited}")
    agree = math.isclose(engine.total, expected, rel_tol=1e-9, abs_tol=1e-9)
    return EXIT_OK if agree else EXIT_VIOLATION


def _add_kernel_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--dataset", required=True, help="Dataset file (graph/v/e/point/end blocks)")
    parser.add_argument("--kernel", required=True, choices=[k.value for k in KernelName])
    parser.add_argument("--max-size", type=int, default=3, help="Largest matching size k")
    parser.add_argument("--vertex-kernel", default="dirac", help="e.g. dirac, brownian:c=3, product(dirac,rbf:sigma=1)")
    parser.add_argument("--edge-kernel", default="dirac", help="e.g. dirac, triangular:c=0.25")
    parser.add_argument("--d-weight", type=float, default=1.0, help="Weight of common non-adjacency")
    parser.add_argument("--weights", default="uniform", help="'uniform' or w1,...,wK")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graph-kernels", description="Subgraph matching kernels on attributed graphs")
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="{compute,check-psd,serve}")

    compute = subparsers.add_parser("compute", help="Compute a Gram matrix")
    _add_kernel_arguments(compute)
    compute.add_argument("--normalize", default="none", choices=[m.value for m in NormalizeMode])
    compute.add_argument("--out", required=True, help="Output CSV path")
    compute.add_argument("--threads", type=int, default=None, help=f"Worker processes (default GK_THREADS={settings.THREADS})")
    compute.add_argument("--progress", action="store_true", help="Show a progress bar")
    compute.set_defaults(func=cmd_compute)

    check = subparsers.add_parser("check-psd", help="Check a Gram CSV for positive semidefiniteness")
    check.add_argument("--gram", required=True)
    check.add_argument("--tol", type=float, default=1e-8, help="Relative to the largest diagonal entry")
    check.set_defaults(func=cmd_check_psd)

    serve = subparsers.add_parser("serve", help="Run the HTTP API")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(func=cmd_serve)

    oracle = subparsers.add_parser("oracle")
    _add_kernel_arguments(oracle)
    oracle.add_argument("--g1", default=None, help="Graph id (default: first graph)")
    oracle.add_argument("--g2", default=None, help="Graph id (default: same as --g1)")
    oracle.add_argument("--dump-wpg", default=None, metavar="FILE", help="Write the product graph edge list")
    oracle.set_defaults(func=cmd_oracle)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=settings.LOG_LEVEL, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphKernelError, ValidationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
