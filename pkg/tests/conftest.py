import random
from pathlib import Path
from typing import Optional, Sequence, Tuple

import pytest

from src.core.graph import AttributedGraph
from src.core.parser import Point

TESTS_DIR = Path(__file__).parent


def make_graph(labels: Sequence[str], edges: Sequence[Tuple[int, int]] = (), edge_labels: Sequence[str] = (),
               vertex_attrs=(), edge_attrs=(), graph_id: str = "g", class_label: Optional[str] = None) -> AttributedGraph:
    return AttributedGraph(
        graph_id=graph_id,
        class_label=class_label,
        vertex_labels=tuple(labels),
        vertex_attrs=tuple(tuple(a) for a in vertex_attrs),
        edges=tuple(edges),
        edge_labels=tuple(edge_labels),
        edge_attrs=tuple(tuple(a) for a in edge_attrs),
    )


def complete_graph(n: int, label: str = "a", graph_id: str = "k") -> AttributedGraph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return make_graph([label] * n, edges, graph_id=graph_id)


def random_graph(rng: random.Random, n: int, density: float = 0.5, labels: str = "abc",
                 edge_labels: str = "", attributes: bool = False, graph_id: str = "r") -> AttributedGraph:
    """
    G(n, density) with uniformly drawn vertex labels; with `attributes`,
    every vertex and edge also gets one real attribute.
    """
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    return make_graph(
        [rng.choice(labels) for _ in range(n)],
        edges,
        edge_labels=[rng.choice(edge_labels) for _ in edges] if edge_labels else (),
        vertex_attrs=[(rng.uniform(0, 5),) for _ in range(n)] if attributes else (),
        edge_attrs=[(rng.uniform(0, 1),) for _ in edges] if attributes else (),
        graph_id=graph_id,
    )


def random_points(rng: random.Random, n: int, labels: str = "AB") -> list:
    return [Point(label=rng.choice(labels), x=(rng.uniform(0, 2), rng.uniform(0, 2), rng.uniform(0, 2)))
            for _ in range(n)]


@pytest.fixture
def k3() -> AttributedGraph:
    return complete_graph(3, graph_id="k3")


@pytest.fixture
def p2() -> AttributedGraph:
    return make_graph(["a", "a"], [(0, 1)], graph_id="p2")


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


@pytest.fixture
def dataset_path() -> Path:
    return TESTS_DIR / "test_dataset.txt"


@pytest.fixture
def points_path() -> Path:
    return TESTS_DIR / "test_points.txt"
