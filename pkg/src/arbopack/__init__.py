"""Packing and augmentation of (mixed hyper)arborescences and hyperbranchings."""
from .errors import InconsistencyError, InputError, ResourceError
from .hypercore import MixedHypergraph, Subpartition

__all__ = ["MixedHypergraph", "Subpartition", "InputError", "ResourceError",
           "InconsistencyError"]
__version__ = "0.1.0"
