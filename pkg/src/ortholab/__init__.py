"""Exact computations with orthogonally additive polynomials on finite Riesz-space models."""

from ortholab.errors import OrthoLabError, RejectedError, ResourceError, ValidationError

__version__ = "0.1.0"

__all__ = [
    "OrthoLabError",
    "RejectedError",
    "ResourceError",
    "ValidationError",
    "__version__",
]
