from enum import Enum
from typing import List, Optional
import math

from pydantic import BaseModel, Field, field_validator, model_validator

from .core.graph import AttributedGraph
from .core.gram import NormalizeMode
from .core.kernel_spec import parse_kernel_spec


class KernelName(str, Enum):
    SM = "sm"
    CSM = "csm"
    CSI = "csi"
    SUBGRAPH = "subgraph"
    PHARMACOPHORE = "pharmacophore"


class KernelConfig(BaseModel):
    """
    Everything needed to evaluate one kernel on a pair of graphs. Shared by
    the CLI, the worker tasks and the HTTP endpoints.
    """
    kernel: KernelName = KernelName.CSI
    max_size: int = Field(default=3, ge=1)
    vertex_kernel: str = "dirac"
    edge_kernel: str = "dirac"
    d_weight: float = Field(default=1.0, ge=0)
    # None means lambda = 1 for every size.
    weights: Optional[List[float]] = None
    normalize: NormalizeMode = NormalizeMode.NONE

    class Config:
        frozen = True

    @field_validator("weights", mode="before")
    @classmethod
    def parse_weights(cls, value):
        """Accepts `uniform`, `w1,w2,...` or a list."""
        if value is None or isinstance(value, (list, tuple)):
            return value
        text = str(value).strip()
        if text == "uniform":
            return None
        try:
            return [float(w) for w in text.split(",")]
        except ValueError:
            raise ValueError(f"weights must be 'uniform' or comma-separated reals, got '{text}'") from None

    @field_validator("vertex_kernel", "edge_kernel")
    @classmethod
    def check_kernel_spec(cls, value: str) -> str:
        parse_kernel_spec(value)
        return value

    @model_validator(mode="after")
    def check_weights(self):
        if self.weights is None:
            return self
        if len(self.weights) != self.max_size:
            raise ValueError(f"expected {self.max_size} weights (one per size), got {len(self.weights)}")
        for w in self.weights:
            if not (w >= 0 and math.isfinite(w)):
                raise ValueError(f"weights must be finite and >= 0, got {w}")
        return self


class HealthCheck(BaseModel):
    """
    Response model for the health check endpoint.
    """
    api_status: str
    threads: int


class PairRequest(BaseModel):
    g1: AttributedGraph
    g2: AttributedGraph
    config: KernelConfig = Field(default_factory=KernelConfig)


class GramResponse(BaseModel):
    """
    Response model for the dataset upload endpoint.
    """
    ids: List[str]
    values: List[List[float]]
    min_eigenvalue: float
    normalize: NormalizeMode
