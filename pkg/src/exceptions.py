from pathlib import Path
from typing import Optional, Union


class GraphKernelError(Exception):
    """Base class for every error raised by the kernel library."""


class InputError(GraphKernelError, ValueError):
    """
    Raised when input data violates a precondition: an index out of range,
    an invalid vertex subset, a graph that is too large for an oracle, etc.
    """


class ConfigurationError(GraphKernelError, ValueError):
    """
    Raised for invalid kernel parameters or option combinations.
    """


class DatasetParseError(InputError):
    """
    Raised by the dataset parser. The message always names the file and
    the offending line.
    """

    def __init__(self, message: str, path: Union[str, Path, None] = None, line_number: Optional[int] = None):
        self.path = str(path) if path is not None else "<string>"
        self.line_number = line_number
        location = self.path if line_number is None else f"{self.path}:{line_number}"
        super().__init__(f"{location}: {message}")


class GramFormatError(InputError):
    """Raised when a Gram matrix file cannot be read back."""


class PairComputationError(GraphKernelError):
    """
    Wraps a failure while computing a single Gram matrix cell.
    The message carries the ids of both graphs.
    """
