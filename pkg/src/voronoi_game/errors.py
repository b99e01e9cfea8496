"""Exception types shared across the package."""


class VoronoiGameError(Exception):
    """Base class for all errors raised by this package."""


class CoincidentSites(VoronoiGameError):
    """Two sites (or a probe point and a site) are closer than the distinctness tolerance."""


class PointOutsidePolygon(VoronoiGameError):
    """A point required to lie strictly inside a polygon does not."""


class OutsideBoard(VoronoiGameError):
    """A site or probe point lies outside the playing board."""


class NotAGrid(VoronoiGameError):
    """An operation that requires a regular-grid placement got something else."""


class DomainError(VoronoiGameError, ValueError):
    """A scalar argument is outside the domain where a formula is defined."""


class OutOfTurn(VoronoiGameError):
    """A player tried to place a point when it is not their turn."""


class WrongPhase(VoronoiGameError):
    """A session operation was requested in a phase that does not allow it."""
