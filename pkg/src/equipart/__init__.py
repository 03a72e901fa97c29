"""Exact mod-2 cohomology computations behind equipartition criteria."""

from .errors import InputError, Limits, ResourceLimitError, current_limits, resource_limits
from .f2poly import F2Poly

__version__ = "0.1.0"

__all__ = [
    "F2Poly",
    "InputError",
    "Limits",
    "ResourceLimitError",
    "current_limits",
    "resource_limits",
]
