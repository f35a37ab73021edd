"""
Worker-side tasks: one kernel value per graph pair, and the Gram matrix
over a dataset with the pairs spread over a process pool.
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple
import logging
import time

import numpy as np
from tqdm import tqdm

from .config import settings
from .core.attribute_kernels import DiracKernel, EdgeKernel, VertexKernel, check_symmetry, edge_kernel_adapter
from .core.graph import AttributedGraph
from .core.gram import GramMatrix
from .core.kernel_spec import parse_kernel_spec
from .core.matching import KernelResult, MatchingOptions, check_distance_graphs, pharmacophore_options, sm_kernel
from .core.parser import Dataset
from .core.weights import AutomorphismCorrectedWeight, SizeWeights, UniformWeight
from .exceptions import InputError, PairComputationError
from .schemas import KernelConfig, KernelName

log = logging.getLogger(__name__)

DEFAULT_SPEC = "dirac"


@dataclass(frozen=True)
class KernelSetup:
    """A KernelConfig resolved into kernel objects; picklable."""
    kv: VertexKernel
    ke: EdgeKernel
    options: MatchingOptions
    require_complete: bool = False

    @property
    def max_size(self) -> int:
        return self.options.max_size

    @property
    def size_weights(self) -> Optional[List[float]]:
        return self.options.weight.size_scales(self.max_size)


def _size_weight(config: KernelConfig):
    return SizeWeights(tuple(config.weights)) if config.weights is not None else UniformWeight()


def _warn_ignored(config: KernelConfig) -> None:
    if config.vertex_kernel != DEFAULT_SPEC or config.edge_kernel != DEFAULT_SPEC:
        log.warning(f"The {config.kernel.value} kernel always uses Dirac labels; "
                    f"ignoring vertex kernel '{config.vertex_kernel}' and edge kernel '{config.edge_kernel}'")
    if config.d_weight != 1.0:
        log.warning(f"The {config.kernel.value} kernel weights common non-adjacency 1; ignoring d_weight={config.d_weight}")


def build_setup(config: KernelConfig) -> KernelSetup:
    kernel = config.kernel

    if kernel in (KernelName.SM, KernelName.CSM):
        return KernelSetup(
            kv=VertexKernel(parse_kernel_spec(config.vertex_kernel)),
            ke=edge_kernel_adapter(parse_kernel_spec(config.edge_kernel), config.d_weight),
            options=MatchingOptions(
                max_size=config.max_size,
                connected_only=kernel is KernelName.CSM,
                weight=_size_weight(config),
            ),
        )

    if kernel in (KernelName.CSI, KernelName.SUBGRAPH):
        _warn_ignored(config)
        if kernel is KernelName.CSI:
            weight = _size_weight(config)
        else:
            weight = AutomorphismCorrectedWeight(tuple(config.weights or [1.0] * config.max_size))
        return KernelSetup(
            kv=VertexKernel(DiracKernel()),
            ke=edge_kernel_adapter(DiracKernel()),
            options=MatchingOptions(max_size=config.max_size, weight=weight),
        )

    if config.max_size != 3 or config.weights is not None:
        log.warning("The pharmacophore kernel matches 3 points with weight 6; ignoring max_size and weights")
    return KernelSetup(
        kv=VertexKernel(parse_kernel_spec(config.vertex_kernel)),
        ke=edge_kernel_adapter(parse_kernel_spec(config.edge_kernel)),
        options=pharmacophore_options(),
        require_complete=True,
    )


def compute_pair(g1: AttributedGraph, g2: AttributedGraph, setup: KernelSetup) -> KernelResult:
    try:
        if setup.require_complete:
            check_distance_graphs(g1, g2)
        return sm_kernel(g1, g2, setup.kv, setup.ke, setup.options)
    except Exception as e:
        raise PairComputationError(f"kernel({g1.graph_id}, {g2.graph_id}) failed: {e}") from e


def probe_kernels(graphs: Sequence[AttributedGraph], setup: KernelSetup, probes: int) -> None:
    """Random-probe symmetry check of the base kernels on the dataset's elements."""
    vertices = [g.vertex(v) for g in graphs for v in range(g.vertex_count)]
    edges = [g.edge(i) for g in graphs for i in range(g.edge_count)]
    check_symmetry(setup.kv.base, vertices, probes)
    check_symmetry(setup.ke.label_kernel, edges, probes)


# Per-process state of pool workers, set once by the initializer.
_worker: Dict[str, object] = {}


def _init_worker(graphs: List[AttributedGraph], setup: KernelSetup) -> None:
    _worker["graphs"] = graphs
    _worker["setup"] = setup


def _pair_task(pair: Tuple[int, int]) -> KernelResult:
    i, j = pair
    graphs = _worker["graphs"]
    return compute_pair(graphs[i], graphs[j], _worker["setup"])


def _results(graphs: List[AttributedGraph], setup: KernelSetup, pairs: List[Tuple[int, int]],
             threads: int) -> Iterable[KernelResult]:
    if threads <= 1:
        for i, j in pairs:
            yield compute_pair(graphs[i], graphs[j], setup)
        return
    chunksize = max(1, len(pairs) // (threads * 4))
    with ProcessPoolExecutor(max_workers=threads, initializer=_init_worker, initargs=(graphs, setup)) as pool:
        yield from pool.map(_pair_task, pairs, chunksize=chunksize)


def compute_gram(dataset: Dataset, config: KernelConfig, threads: Optional[int] = None,
                 progress: bool = False) -> GramMatrix:
    """
    Kernel values of every pair of graphs in the dataset, diagonal included.
    Each unordered pair is computed once and mirrored; the result does not
    depend on the number of workers.
    """
    if not len(dataset):
        raise InputError("Cannot compute a Gram matrix over an empty dataset")

    setup = build_setup(config)
    threads = threads if threads is not None else settings.THREADS
    if threads < 1:
        raise InputError(f"threads must be >= 1, got {threads}")

    graphs = list(dataset.graphs)
    if settings.DEBUG_CHECKS:
        probe_kernels(graphs, setup, settings.SYMMETRY_PROBES)

    n, k = len(graphs), setup.max_size
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    size_weights = setup.size_weights
    values = np.zeros((n, n))
    per_size = np.zeros((k, n, n))

    log.info(f"Computing {config.kernel.value} Gram matrix: {n} graphs, {len(pairs)} pairs, k={k}, {threads} worker(s)")
    start_time = time.time()

    with tqdm(total=len(pairs), disable=not progress, desc="Gram pairs", unit="pair") as bar:
        for (i, j), result in zip(pairs, _results(graphs, setup, pairs, threads)):
            values[i, j] = values[j, i] = result.total
            stack = result.per_size if size_weights is not None else result.weighted_per_size
            per_size[:, i, j] = per_size[:, j, i] = stack
            bar.update(1)

    log.info(f"Gram matrix finished in {time.time() - start_time:.2f}s")
    return GramMatrix(ids=dataset.ids, values=values, per_size=per_size, size_weights=size_weights)
