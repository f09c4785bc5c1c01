"""Exception types shared across the package.

Every error raised on purpose derives from PolyheartError so callers (and the
CLI) can separate expected failure modes from genuine bugs.
"""

from __future__ import annotations


class PolyheartError(Exception):
    """Base class for all package-specific errors."""


class InvalidPolygon(PolyheartError):
    """Vertex list is not a valid counterclockwise convex polygon."""


class OutsideShadow(PolyheartError):
    """Requested chord coordinate lies outside the body's shadow."""


class ToleranceTooSmall(PolyheartError):
    """Requested tolerance is below the geometric noise floor."""


class UnsupportedDimension(PolyheartError):
    """Constant or formula is only tabulated for the supported dimensions."""


class QuadratureUnstable(PolyheartError):
    """Boundary integrand degenerates (support distance below tolerance)."""


class CenterTooCloseToBoundary(PolyheartError):
    """Polar body blows up: base point is within tolerance of the boundary."""


class FrequencyNotOrthogonal(PolyheartError):
    """Directional-derivative frequency must be orthogonal to the direction."""


class DenominatorTooSmall(PolyheartError):
    """Reconstructed chord length too close to zero to divide by."""


class GridTooCoarse(PolyheartError):
    """Grid spacing too large relative to the inradius."""


class NoConvergence(PolyheartError):
    """Iterative solver exhausted its iteration budget."""


class WitnessInvalid(PolyheartError):
    """Folding witness does not describe a valid chord of the body."""


class InconsistentHeart(PolyheartError):
    """Heart construction produced an impossible result (hard failure)."""
