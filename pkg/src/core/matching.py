"""
Subgraph matching kernels by weighted clique enumeration.

Every clique of the weighted product graph is a matching between vertex
subsets of the two factor graphs. Its contribution is lambda(matching)
times the product of its vertex weights and of the weights of its edges,
each unordered clique edge counted once. The empty clique contributes
nothing.
"""
from typing import List, Optional, Sequence, Union
import logging
import math

from pydantic import BaseModel, Field

from ..exceptions import InputError
from .attribute_kernels import DiracKernel, EdgeKernel, ElementKernel, VertexKernel, edge_kernel_adapter
from .graph import AttributedGraph
from .product_graph import WeightedProductGraph, build_wpg
from .weights import AutomorphismCorrectedWeight, UniformWeight, WeightFunction, pharmacophore_weight

log = logging.getLogger(__name__)


class MatchingOptions(BaseModel):
    max_size: int = Field(default=3, ge=1, description="Largest clique (matching) size enumerated.")
    connected_only: bool = Field(default=False, description="Only enumerate cliques spanned by c-edges.")
    weight: WeightFunction = Field(default_factory=UniformWeight)

    class Config:
        arbitrary_types_allowed = True


class KernelResult(BaseModel):
    """
    Kernel value with its breakdown by matching size: `per_size[s - 1]` sums
    the clique weights of size s before the size scale lambda_s (with the
    weight's structural factor applied, if it has one), `weighted_per_size[s - 1]`
    after it. Weights without a size scale leave `per_size` unweighted.
    """
    total: float = 0.0
    per_size: List[float] = Field(default_factory=list)
    weighted_per_size: List[float] = Field(default_factory=list)
    cliques_visited: int = 0


def smkernel(P: WeightedProductGraph, opts: MatchingOptions) -> KernelResult:
    """
    Enumerates the cliques of P up to size `opts.max_size` in ascending
    vertex order. With `connected_only`, a vertex may join a clique only
    through a c-edge to one of its members; the candidates that are
    adjacent to the whole clique but only via d-edges are kept aside until
    a c-neighbour of theirs joins.
    """
    k = opts.max_size
    per_size = [0.0] * k
    weighted = [0.0] * k
    visited = 0

    weight = opts.weight
    size_lambda = weight.size_scales(k)
    structure = weight.bind_structure(P.g1, P.g2) if size_lambda is not None else None
    evaluate = weight.bind(P.g1, P.g2) if size_lambda is None else None

    vertex_weights = P.vertex_weights.tolist()
    edge_weights = P.weights.tolist()
    neighbors = [P.neighbors(v) for v in range(P.vertex_count)]
    c_neighbors = [P.c_neighbors(v) for v in range(P.vertex_count)]

    def extend(clique: List[int], w: float, candidates: List[int], deferred: List[int]) -> None:
        nonlocal visited
        for i, v in enumerate(candidates):
            grown_w = w * vertex_weights[v]
            for u in clique:
                grown_w *= edge_weights[u][v]
            grown = clique + [v]
            size = len(grown)

            visited += 1
            if size_lambda is None:
                per_size[size - 1] += grown_w
                weighted[size - 1] += grown_w * evaluate([P.pairs[x] for x in grown])
            else:
                part = grown_w if structure is None else grown_w * structure([P.pairs[x] for x in grown])
                per_size[size - 1] += part
                weighted[size - 1] += part * size_lambda[size - 1]

            if size == k:
                continue
            later = candidates[i + 1:]
            if not opts.connected_only:
                next_candidates = [u for u in later if u in neighbors[v]]
                next_deferred = []
            elif not clique:
                next_candidates = [u for u in later if u in c_neighbors[v]]
                next_deferred = [u for u in later if u in neighbors[v] and u not in c_neighbors[v]]
            else:
                joined = [u for u in deferred if u in c_neighbors[v]]
                next_candidates = sorted([u for u in later if u in neighbors[v]] + joined)
                next_deferred = [u for u in deferred if u in neighbors[v] and u not in c_neighbors[v]]
            if next_candidates:
                extend(grown, grown_w, next_candidates, next_deferred)

    extend([], 1.0, list(range(P.vertex_count)), [])

    result = KernelResult(total=math.fsum(weighted), per_size=per_size, weighted_per_size=weighted, cliques_visited=visited)
    log.debug(f"smkernel({P.g1.graph_id}, {P.g2.graph_id}, k={k}, connected={opts.connected_only}): "
              f"{visited} cliques, total={result.total}")
    return result


def sm_kernel(g1: AttributedGraph, g2: AttributedGraph, kv: VertexKernel, ke: EdgeKernel, opts: MatchingOptions) -> KernelResult:
    return smkernel(build_wpg(g1, g2, kv, ke), opts)


def csi_kernel(g1: AttributedGraph, g2: AttributedGraph, weight: Optional[WeightFunction] = None,
               k: int = 3, connected_only: bool = False) -> KernelResult:
    """
    Common subgraph isomorphism kernel: Dirac kernels on vertex and edge
    labels, common non-adjacency weighted 1.
    """
    opts = MatchingOptions(max_size=k, connected_only=connected_only, weight=weight or UniformWeight())
    return sm_kernel(g1, g2, VertexKernel(DiracKernel()), edge_kernel_adapter(DiracKernel()), opts)


def subgraph_kernel(g1: AttributedGraph, g2: AttributedGraph, lambda_s: Sequence[float], k: int) -> float:
    """
    Counts pairs of isomorphic induced subgraphs of size 1..k, weighted by
    lambda_s, via the CSI kernel with automorphism-corrected weights.
    """
    return csi_kernel(g1, g2, AutomorphismCorrectedWeight(tuple(lambda_s)), k).total


def pharmacophore_options() -> MatchingOptions:
    return MatchingOptions(max_size=3, weight=pharmacophore_weight())


def check_distance_graphs(*graphs: AttributedGraph) -> None:
    for g in graphs:
        if not g.is_complete():
            raise InputError(f"pharmacophore kernel needs complete distance graphs; '{g.graph_id}' is not complete")


def pharmacophore_kernel(g1: AttributedGraph, g2: AttributedGraph,
                         k_feat: Union[ElementKernel, VertexKernel], k_dist: ElementKernel) -> float:
    """
    Pharmacophore kernel on complete distance graphs: size-3 matchings only,
    each weighted 6.
    """
    check_distance_graphs(g1, g2)
    kv = k_feat if isinstance(k_feat, VertexKernel) else VertexKernel(k_feat)
    return sm_kernel(g1, g2, kv, edge_kernel_adapter(k_dist), pharmacophore_options()).total


def clique_count_bound(n1: int, n2: int, k: int) -> int:
    """C(k) = sum_{i=0..k} i! * binom(n1, i) * binom(n2, i), empty clique included."""
    return sum(math.factorial(i) * math.comb(n1, i) * math.comb(n2, i) for i in range(k + 1))
