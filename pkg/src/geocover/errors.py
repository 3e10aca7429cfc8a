"""Exception hierarchy shared by every module."""


class GeoCoverError(Exception):
    """Base class for all errors raised by geocover."""


class InvalidPolygon(GeoCoverError, ValueError):
    pass


class TooFewVertices(InvalidPolygon):
    pass


class SelfIntersecting(InvalidPolygon):
    pass


class DuplicateVertex(InvalidPolygon):
    pass


class ZeroArea(InvalidPolygon):
    pass


class PointOutsidePolygon(GeoCoverError, ValueError):
    pass


class SegmentOutsidePolygon(GeoCoverError, ValueError):
    pass


class NumericalCertificationFailure(GeoCoverError, ArithmeticError):
    """A root or certificate could not be established within tolerance."""


class AllCoverable(GeoCoverError):
    """Signal: the remaining boundary fits in a single disk."""


class OracleTimeout(GeoCoverError):
    """The brute-force optimum exceeds the configured ``k_max``."""


class InstanceError(GeoCoverError, ValueError):
    """Malformed or schema-violating problem instance."""
