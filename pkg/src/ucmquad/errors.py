"""Exception hierarchy."""


class QuadratureError(ValueError):
    """Base class for rule-construction failures."""


class DuplicateNodesError(QuadratureError):
    """Two nodes coincide (exactly, or within the zero-test tolerance)."""


class DegreeDetectionError(QuadratureError):
    """Every extension integral tested as zero, which exact arithmetic rules out."""


class ConvergenceError(QuadratureError):
    """An iterative solver hit its iteration cap."""


class ConsistencyError(QuadratureError):
    """A computed rule disagrees with its closed-form description."""
