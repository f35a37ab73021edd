from enum import Enum
from pathlib import Path
from typing import List, Optional, Union
import logging

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, field_validator, model_validator

from ..exceptions import ConfigurationError, GramFormatError, InputError

log = logging.getLogger(__name__)

HEADER_PREFIX = "# ids:"


class NormalizeMode(str, Enum):
    NONE = "none"
    COSINE = "cosine"
    PER_SIZE = "per-size"


class GramMatrix(BaseModel):
    """
    Symmetric matrix of kernel values over a dataset.

    `per_size[s - 1]` is the size-s part of the kernel; `size_weights`
    holds the lambda applied to each size when the stack was recorded
    before weighting (None: the stack is already weighted).
    """
    ids: List[str]
    values: np.ndarray
    per_size: Optional[np.ndarray] = None
    size_weights: Optional[List[float]] = None

    class Config:
        arbitrary_types_allowed = True

    @field_validator("values", mode="before")
    @classmethod
    def as_matrix(cls, v):
        return np.array(v, dtype=float)

    @field_validator("per_size", mode="before")
    @classmethod
    def as_stack(cls, v):
        return None if v is None else np.array(v, dtype=float)

    @model_validator(mode="after")
    def check_shapes(self):
        n = len(self.ids)
        if self.values.shape != (n, n):
            raise ValueError(f"values must be {n}x{n} to match the ids, got shape {self.values.shape}")
        if self.per_size is not None:
            if self.per_size.ndim != 3 or self.per_size.shape[1:] != (n, n):
                raise ValueError(f"per-size stack must have shape (k, {n}, {n}), got {self.per_size.shape}")
            if self.size_weights is not None and len(self.size_weights) != self.per_size.shape[0]:
                raise ValueError("size_weights must have one entry per size in the stack")
        return self

    @property
    def size(self) -> int:
        return len(self.ids)


def _cosine(K: np.ndarray) -> np.ndarray:
    """k_ij / sqrt(k_ii k_jj), 0 where either diagonal entry is 0."""
    d = np.diag(K)
    denom = np.sqrt(np.outer(d, d))
    out = np.zeros_like(K)
    np.divide(K, denom, out=out, where=denom > 0)
    return out


def normalize_gram(M: GramMatrix, mode: Union[NormalizeMode, str]) -> GramMatrix:
    mode = NormalizeMode(mode)
    if mode is NormalizeMode.NONE:
        return M

    if mode is NormalizeMode.COSINE:
        zero = int(np.count_nonzero(np.diag(M.values) <= 0))
        if zero:
            log.warning(f"{zero} graph(s) have zero self-similarity; their rows normalize to 0")
        return GramMatrix(ids=M.ids, values=_cosine(M.values))

    if M.per_size is None:
        raise ConfigurationError("per-size normalization needs a per-size stack; this kernel does not record one")
    scales = M.size_weights if M.size_weights is not None else [1.0] * M.per_size.shape[0]
    values = np.zeros_like(M.values)
    for scale, K in zip(scales, M.per_size):
        if scale:
            values += scale * _cosine(K)
    return GramMatrix(ids=M.ids, values=values)


def _as_square(M: Union[GramMatrix, ArrayLike]) -> np.ndarray:
    A = M.values if isinstance(M, GramMatrix) else np.asarray(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InputError(f"expected a square matrix, got shape {A.shape}")
    if A.shape[0] == 0:
        raise InputError("matrix is empty")
    return A


def min_eigenvalue(M: Union[GramMatrix, ArrayLike]) -> float:
    """Smallest eigenvalue of the symmetrized matrix."""
    A = _as_square(M)
    return float(np.linalg.eigvalsh((A + A.T) / 2.0)[0])


def is_psd(M: Union[GramMatrix, ArrayLike], tol: float = 1e-8) -> bool:
    """
    min eigenvalue >= -tol * (largest |diagonal entry|), or >= -tol when the
    diagonal is all zero.
    """
    A = _as_square(M)
    scale = float(np.max(np.abs(np.diag(A))))
    return min_eigenvalue(A) >= -tol * (scale if scale > 0 else 1.0)


def check_gram_ids(ids: List[str]) -> None:
    """Ids end up in a comma-separated header: no commas, no surrounding blanks, not empty."""
    for graph_id in ids:
        if "," in graph_id or not graph_id.strip() == graph_id or not graph_id:
            raise GramFormatError(f"graph id '{graph_id}' cannot be written to a Gram file")


def write_gram(M: GramMatrix, path: Union[str, Path]) -> None:
    """
    Line 1 is `# ids: id1,id2,...`, then one comma-separated row per graph,
    17 significant digits per value.
    """
    check_gram_ids(M.ids)
    path = Path(path)
    lines = [f"{HEADER_PREFIX} {','.join(M.ids)}"]
    lines += [",".join(f"{x:.17g}" for x in row) for row in M.values]
    try:
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    except OSError as e:
        raise InputError(f"Failed to write Gram matrix to {path}: {e}") from e
    log.info(f"Wrote {M.size}x{M.size} Gram matrix to {path}")


def read_gram(path: Union[str, Path]) -> GramMatrix:
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except (OSError, UnicodeDecodeError) as e:
        raise InputError(f"Failed to read Gram matrix {path}: {e}") from e

    numbered = [(n, line) for n, line in enumerate(lines, start=1) if line.strip()]
    if not numbered or not numbered[0][1].startswith(HEADER_PREFIX):
        raise GramFormatError(f"{path}: first line must be '{HEADER_PREFIX} id1,id2,...'")
    header = numbered[0][1][len(HEADER_PREFIX):].strip()
    ids = header.split(",") if header else []

    rows = []
    for line_number, line in numbered[1:]:
        try:
            row = [float(cell) for cell in line.split(",")]
        except ValueError:
            raise GramFormatError(f"{path}:{line_number}: non-numeric cell in '{line}'") from None
        if len(row) != len(ids):
            raise GramFormatError(f"{path}:{line_number}: row has {len(row)} values, header lists {len(ids)} ids")
        rows.append(row)
    if len(rows) != len(ids):
        raise GramFormatError(f"{path}: {len(rows)} rows for {len(ids)} ids; the matrix is not square")

    return GramMatrix(ids=ids, values=np.array(rows, dtype=float).reshape(len(ids), len(ids)))
