"""
Weight functions lambda over matchings.

A matching is the list of vertex pairs (v1, v2) of a clique in the product
graph. Size-based weights set `size_based` so the enumeration can skip
building the matching and scale per-size sums directly. Weights that split
into lambda_s times a structural factor expose both parts, so per-size sums
can be kept apart from lambda_s.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, ClassVar, Dict, List, Optional, Sequence, Tuple
import math

from ..exceptions import ConfigurationError
from .graph import AttributedGraph
from .oracles import automorphism_count

Matching = Sequence[Tuple[int, int]]


class WeightFunction(ABC):
    size_based: ClassVar[bool] = False

    @property
    @abstractmethod
    def name(self) -> str:
        ...

    @abstractmethod
    def bind(self, g1: AttributedGraph, g2: AttributedGraph) -> Callable[[Matching], float]:
        """
        Returns the evaluator for matchings between g1 and g2. Any cache the
        evaluator keeps is private to that graph pair.
        """

    def for_size(self, size: int) -> float:
        raise ConfigurationError(f"weight function {self.name} does not depend on the matching size only")

    def size_scales(self, k: int) -> Optional[List[float]]:
        """
        lambda_1..lambda_k when the weight factors into lambda_s times a
        size-independent part (see `bind_structure`), None otherwise.
        """
        if not self.size_based:
            return None
        return [self.for_size(s) for s in range(1, k + 1)]

    def bind_structure(self, g1: AttributedGraph, g2: AttributedGraph) -> Optional[Callable[[Matching], float]]:
        """The factor left once lambda_s is taken out; None when it is 1."""
        return None


def _check_weights(values: Sequence[float]) -> Tuple[float, ...]:
    values = tuple(float(x) for x in values)
    for x in values:
        if not (x >= 0 and math.isfinite(x)):
            raise ConfigurationError(f"weights must be finite and >= 0, got {x}")
    return values


@dataclass(frozen=True)
class UniformWeight(WeightFunction):
    """lambda = 1 for every matching."""
    size_based: ClassVar[bool] = True

    @property
    def name(self) -> str:
        return "uniform"

    def for_size(self, size: int) -> float:
        return 1.0

    def bind(self, g1, g2):
        return lambda matching: 1.0


@dataclass(frozen=True)
class SizeWeights(WeightFunction):
    """lambda = weights[s - 1] for matchings of size s; 0 beyond the vector."""
    weights: Tuple[float, ...]
    size_based: ClassVar[bool] = True

    def __post_init__(self):
        object.__setattr__(self, "weights", _check_weights(self.weights))

    @property
    def name(self) -> str:
        return "sizes(" + ",".join(f"{w:g}" for w in self.weights) + ")"

    def for_size(self, size: int) -> float:
        return self.weights[size - 1] if 1 <= size <= len(self.weights) else 0.0

    def bind(self, g1, g2):
        return lambda matching: self.for_size(len(matching))


def pharmacophore_weight() -> SizeWeights:
    """6 for matchings of three vertices, 0 otherwise."""
    return SizeWeights((0.0, 0.0, 6.0))


@dataclass(frozen=True)
class AutomorphismCorrectedWeight(WeightFunction):
    """
    lambda(phi) = lambda_s(G) / |Aut(G)| with G = G1[dom(phi)]. Turns the CSI
    kernel into the subgraph kernel with weights lambda_s.
    """
    lambda_s: Tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "lambda_s", _check_weights(self.lambda_s))

    @property
    def name(self) -> str:
        return "automorphism-corrected(" + ",".join(f"{w:g}" for w in self.lambda_s) + ")"

    def _lambda(self, size: int) -> float:
        return self.lambda_s[size - 1] if size <= len(self.lambda_s) else 0.0

    def size_scales(self, k: int) -> List[float]:
        return [self._lambda(s) for s in range(1, k + 1)]

    def bind_structure(self, g1, g2):
        cache: Dict[Tuple[int, ...], float] = {}

        def inverse_automorphisms(matching: Matching) -> float:
            domain = tuple(sorted(v1 for v1, _ in matching))
            if domain not in cache:
                cache[domain] = 1.0 / automorphism_count(g1.induced_subgraph(domain))
            return cache[domain]

        return inverse_automorphisms

    def bind(self, g1, g2):
        structure = self.bind_structure(g1, g2)

        def weight(matching: Matching) -> float:
            lam = self._lambda(len(matching))
            return lam * structure(matching) if lam else 0.0

        return weight
