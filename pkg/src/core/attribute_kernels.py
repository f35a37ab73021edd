"""
Base kernels on vertices and edges.

Every concrete kernel compares two `Element`s (label + attribute vector),
so the same kernel object can serve as a vertex kernel or as the label
kernel of an edge adapter. Kernels are frozen dataclasses: pure, picklable
and safe to share between worker processes.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Sequence, Tuple, Union
import logging
import math
import random

from ..exceptions import ConfigurationError, InputError
from .graph import AttributedGraph, Element

log = logging.getLogger(__name__)


def _require_positive(kernel: str, name: str, value: float) -> None:
    if not (value > 0 and math.isfinite(value)):
        raise ConfigurationError(f"{kernel} kernel requires a finite {name} > 0, got {value}")


def dirac(label_a: str, label_b: str) -> float:
    return 1.0 if label_a == label_b else 0.0


def triangular(d1: float, d2: float, c: float) -> float:
    """k(d1, d2) = 1/c * max(0, c - |d1 - d2|)"""
    _require_positive("triangular", "c", c)
    return max(0.0, c - abs(d1 - d2)) / c


def brownian_bridge(x1: float, x2: float, c: float) -> float:
    """k(x1, x2) = max(0, c - |x1 - x2|), unscaled."""
    _require_positive("brownian", "c", c)
    return max(0.0, c - abs(x1 - x2))


def gaussian_rbf(d1: float, d2: float, sigma: float) -> float:
    _require_positive("rbf", "sigma", sigma)
    return math.exp(-((d1 - d2) ** 2) / (2.0 * sigma ** 2))


class ElementKernel(ABC):
    """
    A symmetric, nonnegative kernel on labelled elements. Gram matrices are
    only guaranteed PSD when it is also positive semidefinite, which is not
    checked for user-supplied kernels.
    """

    @property
    @abstractmethod
    def name(self) -> str:
        ...

    @abstractmethod
    def __call__(self, a: Element, b: Element) -> float:
        ...


def _attribute_pair(kernel: str, attr: int, a: Element, b: Element) -> Tuple[float, float]:
    try:
        return a.attrs[attr], b.attrs[attr]
    except IndexError:
        arity = min(len(a.attrs), len(b.attrs))
        raise InputError(f"{kernel} kernel reads attribute {attr}, but an element only has {arity}") from None


@dataclass(frozen=True)
class DiracKernel(ElementKernel):
    """1 if the discrete labels are equal, else 0."""

    @property
    def name(self) -> str:
        return "dirac"

    def __call__(self, a: Element, b: Element) -> float:
        return dirac(a.label, b.label)


@dataclass(frozen=True)
class TriangularKernel(ElementKernel):
    c: float
    attr: int = 0

    def __post_init__(self):
        _require_positive("triangular", "c", self.c)

    @property
    def name(self) -> str:
        return f"triangular:c={self.c:g}"

    def __call__(self, a: Element, b: Element) -> float:
        return triangular(*_attribute_pair("triangular", self.attr, a, b), self.c)


@dataclass(frozen=True)
class BrownianBridgeKernel(ElementKernel):
    c: float
    attr: int = 0

    def __post_init__(self):
        _require_positive("brownian", "c", self.c)

    @property
    def name(self) -> str:
        return f"brownian:c={self.c:g}"

    def __call__(self, a: Element, b: Element) -> float:
        return brownian_bridge(*_attribute_pair("brownian", self.attr, a, b), self.c)


@dataclass(frozen=True)
class GaussianRBFKernel(ElementKernel):
    sigma: float
    attr: int = 0

    def __post_init__(self):
        _require_positive("rbf", "sigma", self.sigma)

    @property
    def name(self) -> str:
        return f"rbf:sigma={self.sigma:g}"

    def __call__(self, a: Element, b: Element) -> float:
        return gaussian_rbf(*_attribute_pair("rbf", self.attr, a, b), self.sigma)


@dataclass(frozen=True)
class ProductKernel(ElementKernel):
    parts: Tuple[ElementKernel, ...]

    def __post_init__(self):
        if not self.parts:
            raise ConfigurationError("product kernel needs at least one part")

    @property
    def name(self) -> str:
        return "product(" + ",".join(p.name for p in self.parts) + ")"

    def __call__(self, a: Element, b: Element) -> float:
        value = 1.0
        for part in self.parts:
            value *= part(a, b)
            if value == 0.0:
                break
        return value


@dataclass(frozen=True)
class VertexKernel:
    """kappa_V: a base kernel applied to a vertex of G1 and a vertex of G2."""
    base: ElementKernel

    @property
    def name(self) -> str:
        return self.base.name

    def __call__(self, g1: AttributedGraph, v1: int, g2: AttributedGraph, v2: int) -> float:
        return self.base(g1.vertex(v1), g2.vertex(v2))


def product_kernel(parts: Sequence[Union[ElementKernel, VertexKernel]]):
    """
    Product of base kernels. Given vertex kernels it returns a vertex kernel,
    given element kernels an element kernel.
    """
    parts = list(parts)
    if not parts:
        raise ConfigurationError("product kernel needs at least one part")
    if all(isinstance(p, VertexKernel) for p in parts):
        return VertexKernel(ProductKernel(tuple(p.base for p in parts)))
    return ProductKernel(tuple(p.base if isinstance(p, VertexKernel) else p for p in parts))


@dataclass(frozen=True)
class EdgeKernel:
    """
    kappa_E on vertex pairs with c/d-edge semantics: the label kernel when
    both pairs are edges, `d_weight` when neither is, 0 when exactly one is.
    Reversing both pairs gives the same value.
    """
    label_kernel: ElementKernel
    d_weight: float = 1.0

    def __post_init__(self):
        if not (self.d_weight >= 0 and math.isfinite(self.d_weight)):
            raise ConfigurationError(f"d_weight must be finite and >= 0, got {self.d_weight}")

    @property
    def name(self) -> str:
        return f"edges({self.label_kernel.name},d={self.d_weight:g})"

    def __call__(self, g1: AttributedGraph, pair1: Tuple[int, int], g2: AttributedGraph, pair2: Tuple[int, int]) -> float:
        e1 = g1.edge_index(*pair1)
        e2 = g2.edge_index(*pair2)
        if e1 is None and e2 is None:
            return self.d_weight
        if e1 is None or e2 is None:
            return 0.0
        return self.label_kernel(g1.edge(e1), g2.edge(e2))


def edge_kernel_adapter(label_kernel: ElementKernel, d_weight: float = 1.0) -> EdgeKernel:
    return EdgeKernel(label_kernel, d_weight)


def check_symmetry(kernel: ElementKernel, elements: Sequence[Element], probes: int = 100, seed: int = 0) -> None:
    """
    Random-probe check that `kernel` is symmetric, finite and nonnegative
    on `elements`. Raises ConfigurationError on the first violation.
    """
    if not elements:
        return
    rng = random.Random(seed)
    for _ in range(probes):
        a = rng.choice(elements)
        b = rng.choice(elements)
        ab, ba = kernel(a, b), kernel(b, a)
        if not (math.isfinite(ab) and ab >= 0):
            raise ConfigurationError(f"kernel {kernel.name} returned {ab} for {a} and {b}")
        if not math.isclose(ab, ba, rel_tol=1e-12, abs_tol=1e-12):
            raise ConfigurationError(f"kernel {kernel.name} is not symmetric: k(a, b)={ab}, k(b, a)={ba} for a={a}, b={b}")
    log.debug(f"Kernel {kernel.name} passed {probes} symmetry probes")
