from typing import Dict, List, NamedTuple, Optional, Sequence, Set, Tuple
import logging

import networkx as nx
import numpy as np
from pydantic import BaseModel, Field, PrivateAttr, model_validator

from ..exceptions import InputError

log = logging.getLogger(__name__)

# Ordered list of distinct vertex indices of one graph.
VertexSubset = Sequence[int]


class Element(NamedTuple):
    """A vertex or an edge as the base kernels see it."""
    label: str
    attrs: Tuple[float, ...] = ()


class AttributedGraph(BaseModel):
    """
    Simple undirected graph with discrete labels and real-valued attribute
    vectors on vertices and edges.

    Vertices are the dense indices 0..n-1. `edge_labels` and `edge_attrs`
    run parallel to `edges`; an empty tuple means "no labels" (every label
    is the empty string) or "no attributes" (every vector is empty). The
    same holds for `vertex_attrs`.
    """
    graph_id: str = ""
    class_label: Optional[str] = None
    vertex_labels: Tuple[str, ...] = ()
    vertex_attrs: Tuple[Tuple[float, ...], ...] = Field(default=(), description="One attribute vector per vertex, or empty.")
    edges: Tuple[Tuple[int, int], ...] = ()
    edge_labels: Tuple[str, ...] = ()
    edge_attrs: Tuple[Tuple[float, ...], ...] = Field(default=(), description="One attribute vector per edge, or empty.")

    _adjacency: np.ndarray = PrivateAttr()
    _edge_index: Dict[Tuple[int, int], int] = PrivateAttr()

    class Config:
        frozen = True

    @model_validator(mode="after")
    def check_structure(self):
        """
        Enforces the simple-graph invariants: endpoints in range, no
        self-loops, no parallel edges, uniform attribute arity.
        """
        n = len(self.vertex_labels)

        if self.vertex_attrs and len(self.vertex_attrs) != n:
            raise ValueError(f"expected {n} vertex attribute vectors, got {len(self.vertex_attrs)}")
        if len({len(a) for a in self.vertex_attrs}) > 1:
            raise ValueError("vertex attribute vectors have inconsistent lengths")

        m = len(self.edges)
        if self.edge_labels and len(self.edge_labels) != m:
            raise ValueError(f"expected {m} edge labels, got {len(self.edge_labels)}")
        if self.edge_attrs and len(self.edge_attrs) != m:
            raise ValueError(f"expected {m} edge attribute vectors, got {len(self.edge_attrs)}")
        if len({len(a) for a in self.edge_attrs}) > 1:
            raise ValueError("edge attribute vectors have inconsistent lengths")

        seen = set()
        for u, v in self.edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add(key)
        return self

    def model_post_init(self, __context) -> None:
        n = len(self.vertex_labels)
        adjacency = np.zeros((n, n), dtype=bool)
        edge_index = {}
        for i, (u, v) in enumerate(self.edges):
            adjacency[u, v] = adjacency[v, u] = True
            edge_index[(u, v)] = i
            edge_index[(v, u)] = i
        adjacency.setflags(write=False)
        self._adjacency = adjacency
        self._edge_index = edge_index

    @property
    def vertex_count(self) -> int:
        return len(self.vertex_labels)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def adjacency(self) -> np.ndarray:
        """Read-only boolean adjacency matrix."""
        return self._adjacency

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.vertex_count:
            raise InputError(f"vertex index {v} out of range for graph '{self.graph_id}' with {self.vertex_count} vertices")

    def neighbors(self, v: int) -> Set[int]:
        self._check_vertex(v)
        return set(np.flatnonzero(self._adjacency[v]).tolist())

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._edge_index

    def edge_index(self, u: int, v: int) -> Optional[int]:
        return self._edge_index.get((u, v))

    def vertex(self, v: int) -> Element:
        attrs = self.vertex_attrs[v] if self.vertex_attrs else ()
        return Element(self.vertex_labels[v], attrs)

    def edge(self, i: int) -> Element:
        label = self.edge_labels[i] if self.edge_labels else ""
        attrs = self.edge_attrs[i] if self.edge_attrs else ()
        return Element(label, attrs)

    def induced_subgraph(self, subset: VertexSubset) -> "AttributedGraph":
        """
        G[S]: vertex i of the result is subset[i]; every edge of G with both
        endpoints in S is kept together with its label and attributes.
        """
        subset = list(subset)
        if len(set(subset)) != len(subset):
            raise InputError(f"vertex subset {subset} contains duplicates")
        for v in subset:
            self._check_vertex(v)

        edges: List[Tuple[int, int]] = []
        edge_labels: List[str] = []
        edge_attrs: List[Tuple[float, ...]] = []
        for i in range(len(subset)):
            for j in range(i + 1, len(subset)):
                e = self.edge_index(subset[i], subset[j])
                if e is None:
                    continue
                edges.append((i, j))
                if self.edge_labels:
                    edge_labels.append(self.edge_labels[e])
                if self.edge_attrs:
                    edge_attrs.append(self.edge_attrs[e])

        return AttributedGraph(
            graph_id=self.graph_id,
            class_label=self.class_label,
            vertex_labels=tuple(self.vertex_labels[v] for v in subset),
            vertex_attrs=tuple(self.vertex_attrs[v] for v in subset) if self.vertex_attrs else (),
            edges=tuple(edges),
            edge_labels=tuple(edge_labels),
            edge_attrs=tuple(edge_attrs),
        )

    def is_connected(self) -> bool:
        """
        True iff every pair of vertices is joined by a path. The empty graph
        counts as connected.
        """
        if self.vertex_count == 0:
            return True
        return nx.is_connected(self.to_networkx())

    def is_complete(self) -> bool:
        n = self.vertex_count
        return self.edge_count == n * (n - 1) // 2

    def to_networkx(self) -> nx.Graph:
        G = nx.Graph(graph_id=self.graph_id, class_label=self.class_label)
        for v in range(self.vertex_count):
            label, attrs = self.vertex(v)
            G.add_node(v, label=label, attrs=attrs)
        for i, (u, v) in enumerate(self.edges):
            label, attrs = self.edge(i)
            G.add_edge(u, v, label=label, attrs=attrs)
        return G

    @classmethod
    def from_networkx(cls, G: nx.Graph, graph_id: Optional[str] = None, class_label: Optional[str] = None) -> "AttributedGraph":
        """
        Builds a graph from a networkx graph. Nodes are indexed in iteration
        order; node/edge attributes `label` and `attrs` are read when present.
        """
        index = {node: i for i, node in enumerate(G.nodes)}
        vertex_labels = tuple(str(data.get("label", "")) for _, data in G.nodes(data=True))
        vertex_attrs = tuple(tuple(float(x) for x in data.get("attrs", ())) for _, data in G.nodes(data=True))
        if not any(vertex_attrs):
            vertex_attrs = ()

        edges, edge_labels, edge_attrs = [], [], []
        for u, v, data in G.edges(data=True):
            edges.append((index[u], index[v]))
            edge_labels.append(str(data.get("label", "")))
            edge_attrs.append(tuple(float(x) for x in data.get("attrs", ())))
        if not any(edge_attrs):
            edge_attrs = []

        return cls(
            graph_id=graph_id if graph_id is not None else str(G.graph.get("graph_id", "")),
            class_label=class_label if class_label is not None else G.graph.get("class_label"),
            vertex_labels=vertex_labels,
            vertex_attrs=vertex_attrs,
            edges=tuple(edges),
            edge_labels=tuple(edge_labels),
            edge_attrs=tuple(edge_attrs),
        )


def neighbors(G: AttributedGraph, v: int) -> Set[int]:
    return G.neighbors(v)


def induced_subgraph(G: AttributedGraph, S: VertexSubset) -> AttributedGraph:
    return G.induced_subgraph(S)


def is_connected(G: AttributedGraph) -> bool:
    return G.is_connected()
