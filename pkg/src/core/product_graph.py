from enum import Enum
from pathlib import Path
from typing import FrozenSet, List, Optional, Sequence, Tuple, Union
import logging

import numpy as np

from ..exceptions import ConfigurationError, InputError
from .attribute_kernels import EdgeKernel, VertexKernel
from .graph import AttributedGraph

log = logging.getLogger(__name__)


class EdgeClass(str, Enum):
    C = "C"  # common adjacency
    D = "D"  # common non-adjacency


class WeightedProductGraph:
    """
    Product graph of two attributed graphs. Vertex i stands for the vertex
    pair `pairs[i]` and carries weight `vertex_weights[i]`; `weights` is the
    dense symmetric matrix of edge weights (0 = no edge) and `c_mask` marks
    the c-edges among them. Immutable once built.
    """

    def __init__(self, g1: AttributedGraph, g2: AttributedGraph, pairs: Sequence[Tuple[int, int]],
                 vertex_weights: np.ndarray, weights: np.ndarray, c_mask: np.ndarray):
        self.g1 = g1
        self.g2 = g2
        self.pairs = tuple(pairs)
        self.vertex_weights = vertex_weights
        self.weights = weights
        self.c_mask = c_mask
        for array in (self.vertex_weights, self.weights, self.c_mask):
            array.setflags(write=False)

        self._neighbors = tuple(frozenset(np.flatnonzero(row > 0).tolist()) for row in weights)
        self._c_neighbors = tuple(frozenset(np.flatnonzero(row).tolist()) for row in c_mask)

    def __repr__(self):
        return f"<WeightedProductGraph(g1='{self.g1.graph_id}', g2='{self.g2.graph_id}', vertices={self.vertex_count}, edges={self.edge_count})>"

    @property
    def vertex_count(self) -> int:
        return len(self.pairs)

    @property
    def edge_count(self) -> int:
        return int(np.count_nonzero(self.weights)) // 2

    @property
    def c_edge_count(self) -> int:
        return int(np.count_nonzero(self.c_mask)) // 2

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.vertex_count:
            raise InputError(f"product vertex {v} out of range (product graph has {self.vertex_count} vertices)")

    def neighbors(self, v: int) -> FrozenSet[int]:
        self._check_vertex(v)
        return self._neighbors[v]

    def c_neighbors(self, v: int) -> FrozenSet[int]:
        self._check_vertex(v)
        return self._c_neighbors[v]

    def edge_class(self, u: int, v: int) -> Optional[EdgeClass]:
        self._check_vertex(u)
        self._check_vertex(v)
        if self.weights[u, v] <= 0:
            return None
        return EdgeClass.C if self.c_mask[u, v] else EdgeClass.D

    def dump_edges(self) -> List[str]:
        """One line per edge: `u v weight class`, u < v, in index order."""
        lines = []
        for u, v in zip(*np.nonzero(np.triu(self.weights))):
            cls = EdgeClass.C if self.c_mask[u, v] else EdgeClass.D
            lines.append(f"{u} {v} {self.weights[u, v]:.17g} {cls.value}")
        return lines

    def write_edge_list(self, path: Union[str, Path]) -> None:
        path = Path(path)
        path.write_text("".join(line + "\n" for line in self.dump_edges()), encoding="utf-8")
        log.info(f"Wrote {self.edge_count} product-graph edges to {path}")


def build_wpg(g1: AttributedGraph, g2: AttributedGraph, kv: VertexKernel, ke: EdgeKernel) -> WeightedProductGraph:
    """
    Vertices are the pairs with kv > 0, edges the pairs of product vertices
    with distinct coordinates and ke > 0. Edges are c-edges when both
    underlying pairs are edges and d-edges when neither is.
    """
    pairs, vertex_weights = [], []
    for v1 in range(g1.vertex_count):
        for v2 in range(g2.vertex_count):
            w = kv(g1, v1, g2, v2)
            if w > 0:
                pairs.append((v1, v2))
                vertex_weights.append(w)

    n = len(pairs)
    weights = np.zeros((n, n))
    c_mask = np.zeros((n, n), dtype=bool)
    for i in range(n):
        u1, u2 = pairs[i]
        for j in range(i + 1, n):
            v1, v2 = pairs[j]
            if u1 == v1 or u2 == v2:
                continue
            w = ke(g1, (u1, v1), g2, (u2, v2))
            if not w > 0:
                continue
            in_g1 = g1.has_edge(u1, v1)
            if in_g1 != g2.has_edge(u2, v2):
                raise ConfigurationError(
                    f"edge kernel {ke.name} returned {w} for an edge/non-edge pair "
                    f"({u1}, {v1}) of '{g1.graph_id}' vs ({u2}, {v2}) of '{g2.graph_id}'"
                )
            weights[i, j] = weights[j, i] = w
            if in_g1:
                c_mask[i, j] = c_mask[j, i] = True

    product = WeightedProductGraph(g1, g2, pairs, np.asarray(vertex_weights, dtype=float), weights, c_mask)
    log.debug(f"Built {product!r}")
    return product


def c_neighbors(P: WeightedProductGraph, v: int) -> FrozenSet[int]:
    return P.c_neighbors(v)
