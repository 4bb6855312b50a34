"""Exception hierarchy shared by all gentriq modules."""


class GentriqError(Exception):
    """Base class for all errors raised by this package."""


class FormatError(GentriqError):
    """Malformed input file (.gtq, .wts, .surf)."""


class GluingError(GentriqError):
    """Invalid gluing data: not an involution, fixed point, or same-block pair."""


class ConnectivityError(GentriqError):
    """The glued quiver is not connected."""


class WeightError(GentriqError):
    """Weight data violates the admissibility restrictions."""


class IndeterminateError(GentriqError):
    """A symbolic weight does not carry enough information for the request."""


class NotTriangulationError(GentriqError):
    """Operation requires a plain triangulation quiver (no marked blocks)."""


class StructureError(GentriqError):
    """A marked triangulated surface cannot be translated into a quiver."""
