"""Exception hierarchy.

Every geometric failure derives from :class:`GeometryError`; the command line
maps these to exit status 2. :class:`ParseError` is the one input-format
failure and maps to exit status 1.
"""


class GeometryError(Exception):
    """Base class for domain errors raised by the kernel."""


class NonCollinear(GeometryError):
    pass


class DegenerateQuadruple(GeometryError):
    pass


class CoincidentPoints(GeometryError):
    pass


class CoincidentLines(GeometryError):
    pass


class DegenerateConic(GeometryError):
    pass


class LineOnConic(GeometryError):
    pass


class WrongConicClass(GeometryError):
    pass


class SingularMatrix(GeometryError):
    pass


class PointNotAdmissible(GeometryError):
    pass


class OnAbsolute(GeometryError):
    """A point lies on the absolute, so it is infinitely distant from all others."""


class DegenerateDual(GeometryError):
    pass


class PointAtInfinity(GeometryError):
    pass


class InvalidLambda(GeometryError):
    pass


class WrongKind(GeometryError):
    pass


class CollinearVertices(GeometryError):
    pass


class PointOnLine(GeometryError):
    pass


class RadiusTooLarge(GeometryError):
    pass


class ProbeOutOfDomain(GeometryError):
    pass


class PointNotOnQuadric(GeometryError):
    pass


class PointNotOnLines(GeometryError):
    pass


class PointNotOnLine(GeometryError):
    pass


class GeneratorTangency(GeometryError):
    pass


class WrongQuadricKind(GeometryError):
    pass


class ParabolicSection(GeometryError):
    pass


class PointNotInterior(GeometryError):
    pass


class NotHyperbolic(GeometryError):
    pass


class BadSchlafli(GeometryError):
    pass


class ParseError(Exception):
    """Malformed scene file or command-line value."""


class UnknownSuite(ParseError):
    """Requested verification suite does not exist."""
