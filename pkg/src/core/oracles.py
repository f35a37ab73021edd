"""
Slow reference implementations of the declarative kernel definitions.

Everything here enumerates bijections, permutations or point triples
exhaustively; the size guards are hard errors. The oracles score each
unordered vertex pair of a matching's domain once, the same convention the
clique enumeration in `matching.py` follows, so the two agree exactly on
integer-valued kernels.
"""
from itertools import combinations, permutations
from typing import TYPE_CHECKING, Dict, Iterator, List, Sequence, Tuple
import logging
import math

from ..exceptions import InputError
from .attribute_kernels import EdgeKernel, ElementKernel, VertexKernel
from .graph import AttributedGraph, Element

if TYPE_CHECKING:
    from .parser import Point
    from .weights import WeightFunction

log = logging.getLogger(__name__)

MAX_GRAPH_VERTICES = 8
MAX_POINTS = 7

# Ordered pairs (vertex of G1, vertex of G2), injective in both coordinates.
Bijection = Tuple[Tuple[int, int], ...]


def _guard(count: int, limit: int, what: str) -> None:
    if count > limit:
        raise InputError(f"{what} has {count} elements; brute-force oracles are limited to {limit}")


def enumerate_bijections(n1: int, n2: int, k: int) -> Iterator[Bijection]:
    """All nonempty bijections between vertex subsets of size <= k."""
    for size in range(1, min(k, n1, n2) + 1):
        for domain in combinations(range(n1), size):
            for image in permutations(range(n2), size):
                yield tuple(zip(domain, image))


def brute_force_sm(g1: AttributedGraph, g2: AttributedGraph, kv: VertexKernel, ke: EdgeKernel,
                   weight: "WeightFunction", k: int, connected_only: bool = False) -> float:
    _guard(g1.vertex_count, MAX_GRAPH_VERTICES, f"graph '{g1.graph_id}'")
    _guard(g2.vertex_count, MAX_GRAPH_VERTICES, f"graph '{g2.graph_id}'")

    evaluate = weight.bind(g1, g2)
    connected: Dict[Tuple[int, ...], bool] = {}
    total = 0.0
    for phi in enumerate_bijections(g1.vertex_count, g2.vertex_count, k):
        domain = tuple(v1 for v1, _ in phi)
        if connected_only:
            if domain not in connected:
                connected[domain] = g1.induced_subgraph(domain).is_connected()
            if not connected[domain]:
                continue

        score = 1.0
        for v1, v2 in phi:
            score *= kv(g1, v1, g2, v2)
        for (u1, u2), (v1, v2) in combinations(phi, 2):
            if score == 0.0:
                break
            score *= ke(g1, (u1, v1), g2, (u2, v2))
        if score:
            total += evaluate(phi) * score
    return total


def _preserves_structure(g: AttributedGraph, h: AttributedGraph, mapping: Sequence[int]) -> bool:
    """True iff vertex v of g -> mapping[v] of h preserves labels and edges."""
    for v in range(g.vertex_count):
        if g.vertex_labels[v] != h.vertex_labels[mapping[v]]:
            return False
    for i, (u, v) in enumerate(g.edges):
        j = h.edge_index(mapping[u], mapping[v])
        if j is None or g.edge(i).label != h.edge(j).label:
            return False
    return True


def _isomorphic(g: AttributedGraph, h: AttributedGraph) -> bool:
    if g.vertex_count != h.vertex_count or g.edge_count != h.edge_count:
        return False
    if sorted(g.vertex_labels) != sorted(h.vertex_labels):
        return False
    return any(_preserves_structure(g, h, p) for p in permutations(range(h.vertex_count)))


def automorphism_count(G: AttributedGraph) -> int:
    """
    Number of permutations of V(G) preserving vertex labels, adjacency and
    edge labels. Always >= 1.
    """
    _guard(G.vertex_count, MAX_GRAPH_VERTICES, f"graph '{G.graph_id}'")
    return sum(1 for p in permutations(range(G.vertex_count)) if _preserves_structure(G, G, p))


def brute_force_subgraph_kernel(g1: AttributedGraph, g2: AttributedGraph, lambda_s: Sequence[float], k: int) -> float:
    """
    Sum of lambda_s(|G1'|) over ordered pairs of isomorphic nonempty induced
    subgraphs of size <= k.
    """
    _guard(g1.vertex_count, MAX_GRAPH_VERTICES, f"graph '{g1.graph_id}'")
    _guard(g2.vertex_count, MAX_GRAPH_VERTICES, f"graph '{g2.graph_id}'")

    total = 0.0
    for size in range(1, min(k, len(lambda_s)) + 1):
        lam = lambda_s[size - 1]
        if not lam:
            continue
        others: List[AttributedGraph] = [g2.induced_subgraph(s) for s in combinations(range(g2.vertex_count), size)]
        for subset in combinations(range(g1.vertex_count), size):
            h1 = g1.induced_subgraph(subset)
            total += lam * sum(1 for h2 in others if _isomorphic(h1, h2))
    return total


def brute_force_pharmacophore(m1: Sequence["Point"], m2: Sequence["Point"], k_feat: ElementKernel, k_dist: ElementKernel) -> float:
    """
    Sum over all ordered triples of distinct points p1 of m1 and p2 of m2 of
    prod k_feat(l_i, l'_i) * prod k_dist(|x_i x_i+1|, |x'_i x'_i+1|), i+1 mod 3.
    """
    _guard(len(m1), MAX_POINTS, "point set")
    _guard(len(m2), MAX_POINTS, "point set")

    def sides(points, triple):
        return [math.dist(points[triple[i]].x, points[triple[(i + 1) % 3]].x) for i in range(3)]

    total = 0.0
    for t1 in permutations(range(len(m1)), 3):
        d1 = sides(m1, t1)
        for t2 in permutations(range(len(m2)), 3):
            score = 1.0
            for i in range(3):
                score *= k_feat(Element(m1[t1[i]].label), Element(m2[t2[i]].label))
            if score == 0.0:
                continue
            d2 = sides(m2, t2)
            for i in range(3):
                score *= k_dist(Element("", (d1[i],)), Element("", (d2[i],)))
            total += score
    return total
