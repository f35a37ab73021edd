"""
Dataset files: line-oriented UTF-8, `#` starts a comment.

    graph <id> [<class>]
    v <index> <label> [<real>...]      vertex, indices consecutive from 0
    e <u> <v> <label> [<real>...]      undirected edge
    point <label> <x> <y> <z>          3D feature point (instead of v/e lines)
    end

Blocks made of `point` lines become complete distance graphs.
"""
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union
import logging
import math

from pydantic import BaseModel, ValidationError, model_validator

from ..exceptions import DatasetParseError, InputError
from .graph import AttributedGraph

log = logging.getLogger(__name__)


class Point(BaseModel):
    """A labelled feature point in 3D space."""
    label: str
    x: Tuple[float, float, float]

    class Config:
        frozen = True


class Dataset(BaseModel):
    """Ordered collection of graphs with unique ids."""
    graphs: List[AttributedGraph] = []

    @model_validator(mode="after")
    def check_unique_ids(self):
        seen = set()
        for g in self.graphs:
            if g.graph_id in seen:
                raise ValueError(f"duplicate graph id '{g.graph_id}'")
            seen.add(g.graph_id)
        return self

    def __len__(self) -> int:
        return len(self.graphs)

    @property
    def ids(self) -> List[str]:
        return [g.graph_id for g in self.graphs]

    @property
    def class_labels(self) -> List[Optional[str]]:
        return [g.class_label for g in self.graphs]


def build_distance_graph(points: Sequence[Point], graph_id: str = "", class_label: Optional[str] = None) -> AttributedGraph:
    """
    Complete graph on the points: vertex labels are the feature labels and
    every edge carries its Euclidean length as its only attribute.
    """
    for i, p in enumerate(points):
        if not all(math.isfinite(c) for c in p.x):
            raise InputError(f"point {i} of '{graph_id}' has a non-finite coordinate {p.x}")

    edges, edge_attrs = [], []
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            edges.append((i, j))
            edge_attrs.append((math.dist(points[i].x, points[j].x),))

    return AttributedGraph(
        graph_id=graph_id,
        class_label=class_label,
        vertex_labels=tuple(p.label for p in points),
        edges=tuple(edges),
        edge_attrs=tuple(edge_attrs),
    )


class _Block:
    """Accumulates the lines of one `graph` block."""

    def __init__(self, graph_id: str, class_label: Optional[str], line_number: int):
        self.graph_id = graph_id
        self.class_label = class_label
        self.line_number = line_number
        self.vertex_labels: List[str] = []
        self.vertex_attrs: List[Tuple[float, ...]] = []
        self.edges: List[Tuple[int, int]] = []
        self.edge_labels: List[str] = []
        self.edge_attrs: List[Tuple[float, ...]] = []
        self.edge_keys: Dict[Tuple[int, int], int] = {}
        self.points: List[Point] = []

    def build(self) -> AttributedGraph:
        if self.points:
            return build_distance_graph(self.points, self.graph_id, self.class_label)
        return AttributedGraph(
            graph_id=self.graph_id,
            class_label=self.class_label,
            vertex_labels=tuple(self.vertex_labels),
            vertex_attrs=tuple(self.vertex_attrs) if any(self.vertex_attrs) else (),
            edges=tuple(self.edges),
            edge_labels=tuple(self.edge_labels),
            edge_attrs=tuple(self.edge_attrs) if any(self.edge_attrs) else (),
        )


def _reals(tokens: Sequence[str], fail) -> Tuple[float, ...]:
    try:
        return tuple(float(t) for t in tokens)
    except ValueError:
        fail(f"expected real numbers, got {' '.join(tokens)}")


def _index(token: str, fail) -> int:
    try:
        return int(token)
    except ValueError:
        fail(f"expected a vertex index, got '{token}'")


def parse_dataset_text(text: str, source: Union[str, Path, None] = None) -> Dataset:
    graphs: List[AttributedGraph] = []
    ids = set()
    block: Optional[_Block] = None

    for line_number, raw in enumerate(text.splitlines(), start=1):
        def fail(message: str):
            raise DatasetParseError(message, source, line_number)

        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        keyword, args = tokens[0], tokens[1:]

        if keyword == "graph":
            if block is not None:
                fail(f"'graph' inside block '{block.graph_id}' (missing 'end')")
            if len(args) not in (1, 2):
                fail("expected 'graph <id> [<class>]'")
            if args[0] in ids:
                fail(f"duplicate graph id '{args[0]}'")
            ids.add(args[0])
            block = _Block(args[0], args[1] if len(args) == 2 else None, line_number)
            continue

        if block is None:
            fail(f"'{keyword}' outside of a graph block")

        if keyword == "end":
            if args:
                fail("'end' takes no arguments")
            try:
                graphs.append(block.build())
            except (ValidationError, InputError) as e:
                fail(f"invalid graph '{block.graph_id}': {e}")
            block = None

        elif keyword == "v":
            if block.points:
                fail("'v' lines cannot be mixed with 'point' lines")
            if len(args) < 2:
                fail("expected 'v <index> <label> [<real>...]'")
            index = _index(args[0], fail)
            if index != len(block.vertex_labels):
                fail(f"vertex index {index} is not consecutive (expected {len(block.vertex_labels)})")
            attrs = _reals(args[2:], fail)
            if block.vertex_attrs and len(attrs) != len(block.vertex_attrs[0]):
                fail(f"vertex has {len(attrs)} attributes, earlier vertices have {len(block.vertex_attrs[0])}")
            block.vertex_labels.append(args[1])
            block.vertex_attrs.append(attrs)

        elif keyword == "e":
            if block.points:
                fail("'e' lines cannot be mixed with 'point' lines")
            if len(args) < 3:
                fail("expected 'e <u> <v> <label> [<real>...]'")
            u, v = _index(args[0], fail), _index(args[1], fail)
            n = len(block.vertex_labels)
            if not (0 <= u < n and 0 <= v < n):
                fail(f"edge ({u}, {v}) refers to a vertex not declared in '{block.graph_id}' ({n} vertices)")
            if u == v:
                fail(f"self-loop on vertex {u}")
            key = (min(u, v), max(u, v))
            if key in block.edge_keys:
                fail(f"duplicate edge ({u}, {v}), first declared on line {block.edge_keys[key]}")
            attrs = _reals(args[3:], fail)
            if block.edge_attrs and len(attrs) != len(block.edge_attrs[0]):
                fail(f"edge has {len(attrs)} attributes, earlier edges have {len(block.edge_attrs[0])}")
            block.edge_keys[key] = line_number
            block.edges.append((u, v))
            block.edge_labels.append(args[2])
            block.edge_attrs.append(attrs)

        elif keyword == "point":
            if block.vertex_labels:
                fail("'point' lines cannot be mixed with 'v'/'e' lines")
            if len(args) != 4:
                fail("expected 'point <label> <x> <y> <z>'")
            coords = _reals(args[1:], fail)
            if not all(math.isfinite(c) for c in coords):
                fail(f"non-finite coordinate in {' '.join(args[1:])}")
            block.points.append(Point(label=args[0], x=coords))

        else:
            fail(f"unknown keyword '{keyword}'")

    if block is not None:
        raise DatasetParseError(f"graph '{block.graph_id}' opened here is never closed with 'end'", source, block.line_number)

    return Dataset(graphs=graphs)


def parse_dataset(path: Union[str, Path]) -> Dataset:
    """
    Reads a dataset file. Every `graph` block becomes one AttributedGraph,
    vertices indexed in declaration order.
    """
    path = Path(path)
    if not path.exists():
        raise InputError(f"Dataset file not found: {path}")

    log.info(f"Parsing dataset {path.name}")
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise InputError(f"Failed to read dataset {path}: {e}") from e

    dataset = parse_dataset_text(text, path)
    log.info(f"Parsed {len(dataset)} graphs from {path.name}")
    return dataset
