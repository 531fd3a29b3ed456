"""Exact computations with orthogonally additive (abstract Uryson) operators on Q^n."""

from .errors import (CapExceeded, DimensionMismatch, MissingValue, NotAnExtension, ParseError,
                     PreconditionError, TailIncompatible, UrysonError)
from .lattice import Element, IndexSet, Partition, fragments, partitions, support
from .operators import UrysonOperator, apply
from .scalar import ScalarMap, TailRule

__all__ = [
    "CapExceeded", "DimensionMismatch", "Element", "IndexSet", "MissingValue", "NotAnExtension",
    "ParseError", "Partition", "PreconditionError", "ScalarMap", "TailIncompatible", "TailRule",
    "UrysonError", "UrysonOperator", "apply", "fragments", "partitions", "support",
]
__version__ = "0.1.0"
