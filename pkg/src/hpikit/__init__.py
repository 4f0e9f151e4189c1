"""Groundwater heavy-metal pollution toolkit.

Deterministic HPI computation, tie-aware rank statistics, response
transformations, from-scratch regression learners combined by stacking under
nested cross-validation, DBSCAN dominance profiling, and random-forest
spatial interpolation onto masked grids.
"""

__version__ = "0.1.0"

from .data import METALS, SampleTable, SplitSpec, StandardsTable, Standardiser

__all__ = [
    "METALS",
    "SampleTable",
    "SplitSpec",
    "StandardsTable",
    "Standardiser",
    "__version__",
]
