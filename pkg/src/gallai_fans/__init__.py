"""Gallai-Ramsey colorings for fans: constructions, detection, Gallai
partitions and exhaustive searches."""

from .coloring import ColoredCompleteGraph, dump, load, parse, serialize
from .detect import Certificate, find_mono_fan, find_rainbow_triangle, verify
from .gallai import GallaiPartition, blow_up, find_gallai_partition, quotient, validate_partition
from .constructions import ConstructionSpec, construct
from .bounds import BoundRow, bound_table
from .search import SearchBudget, SearchOutcome, ramsey2_decide

__version__ = "0.1.0"

__all__ = [
    "BoundRow",
    "Certificate",
    "ColoredCompleteGraph",
    "ConstructionSpec",
    "GallaiPartition",
    "SearchBudget",
    "SearchOutcome",
    "blow_up",
    "bound_table",
    "construct",
    "dump",
    "find_gallai_partition",
    "find_mono_fan",
    "find_rainbow_triangle",
    "load",
    "parse",
    "quotient",
    "ramsey2_decide",
    "serialize",
    "validate_partition",
    "verify",
]
