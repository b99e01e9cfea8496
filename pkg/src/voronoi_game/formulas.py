"""Closed-form scalar functions for the canonical strip configuration.

The canonical frame puts n white sites on the horizontal axis at spacing 2,
inside a board of size 2n x 2r whose corners are (-3, -r) and (2n-3, r). Each
white cell is then a 2 x 2r rectangle of area 4r, and a black point placed at
(x, y) with 0 <= x <= 1, 0 < y <= r inside the cell of the site at the origin
steals area from at most the three nearest cells. All functions below live in
this frame; callers working in board coordinates must transform first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .diagram import Board
from .errors import DomainError
from .geometry import Point

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)


class _WilmaAlways:
    """Marker: no aspect ratio lets the second player win (single-site game)."""

    __slots__ = ()

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return "WilmaAlways"


WILMA_ALWAYS = _WilmaAlways()


@dataclass(frozen=True)
class StripFrame:
    """Canonical strip configuration: n >= 3 collinear sites, half-height r."""

    r: float
    n: int = 3

    def __post_init__(self) -> None:
        if not (self.r > 0.0 and math.isfinite(self.r)):
            raise DomainError("strip half-height r must be positive and finite")
        if self.n < 3:
            raise DomainError("the strip configuration needs n >= 3 sites")

    def board(self) -> Board:
        return Board(2.0 * self.n, 2.0 * self.r, origin=Point(-3.0, -self.r))

    def sites(self) -> list[Point]:
        return [Point(2.0 * i - 2.0, 0.0) for i in range(self.n)]

    @property
    def cell_area(self) -> float:
        return 4.0 * self.r


@dataclass(frozen=True)
class StealBreakdown:
    """Decomposition of the stolen area into center quad plus two side triangles.

    ``r1`` is taken from the host cell, ``r2`` from the right neighbour and
    ``r0`` from the left one. ``out_of_regime`` is set whenever the placement
    leaves the three-cell shape these formulas describe (a negative piece
    height gets clamped to zero; a bisector escaping through the board bottom
    or a triangle reaching past its neighbour cell only raises the flag).
    """

    b1: float
    phi1: float
    phi2: float
    h2: float
    x2: float
    r0: float
    r1: float
    r2: float
    total: float
    out_of_regime: bool


def steal_breakdown(frame: StripFrame, x: float, y: float) -> StealBreakdown:
    """Stolen-area pieces for a point at (x, y) in the canonical frame."""
    if y <= 0.0:
        raise DomainError("steal_breakdown is singular at y <= 0")
    if not (0.0 <= x <= 1.0):
        raise DomainError("x must lie in [0, 1] (host half-cell)")
    if y > frame.r:
        raise DomainError("y must not exceed the strip half-height r")
    r = frame.r
    b1 = y / 2.0 + x * x / (2.0 * y)
    phi1 = math.atan2(x, y)
    phi2 = math.atan2(y, 2.0 - x)
    h1 = r - b1
    h2 = r - b1 + x / y
    h0 = r - b1 - x / y
    x2 = h2 * y / (2.0 - x)
    x0 = h0 * y / (2.0 + x)

    out = False
    if h1 < 0.0:
        r1 = 0.0
        out = True
    else:
        r1 = 2.0 * r - y - x * x / y
    if h2 < 0.0:
        r2 = 0.0
        out = True
    else:
        r2 = (r * y - y * y / 2.0 - x * x / 2.0 + x) ** 2 / (2.0 * y * (2.0 - x))
    if h0 < 0.0:
        r0 = 0.0
        out = True
    else:
        r0 = (r * y - y * y / 2.0 - x * x / 2.0 - x) ** 2 / (2.0 * y * (2.0 + x))
    # Shape violations that the formulas cannot see: the host-cell bisector
    # leaving through the board bottom, or a side triangle overrunning its
    # neighbour cell.
    if h2 > 2.0 * r or h0 > 2.0 * r or x2 > 2.0 or x0 > 2.0:
        out = True
    return StealBreakdown(
        b1=b1,
        phi1=phi1,
        phi2=phi2,
        h2=h2,
        x2=x2,
        r0=r0,
        r1=r1,
        r2=r2,
        total=r0 + r1 + r2,
        out_of_regime=out,
    )


def axis_steal_total(r: float, y: float) -> float:
    """Total stolen area for a point at (0, y): the x = 0 closed form."""
    return r * r * y / 2.0 - r * y * y / 2.0 + y ** 3 / 8.0 + 2.0 * r - y


def winning_interval(r: float) -> tuple[float, float] | None:
    """Open interval of heights y at x = 0 whose steal exceeds the half-cell 2r.

    ``None`` for r <= sqrt(2): no such height exists. The characterization is
    meaningful for r <= sqrt(3); above that the strip ceases to be the
    relevant configuration, but the interval formula is still returned.
    """
    if not (r > 0.0 and math.isfinite(r)):
        raise DomainError("r must be positive and finite")
    if r <= SQRT2:
        return None
    return 0.0, 2.0 * (r - SQRT2)


def y_star(r: float) -> float:
    """Height maximizing the x = 0 stolen area, for r in (sqrt(2), sqrt(3)]."""
    if not (SQRT2 < r <= SQRT3):
        raise DomainError(f"y_star is defined for r in (sqrt(2), sqrt(3)], got {r}")
    return (4.0 * r - 2.0 * math.sqrt(r * r + 6.0)) / 3.0


def critical_ratio(n: int) -> float | _WilmaAlways:
    """Aspect-ratio threshold above which the second player wins.

    sqrt(3)/2 for n = 2 and sqrt(2)/n for n >= 3; for n = 1 the first player
    wins at every aspect ratio, signalled by ``WILMA_ALWAYS``.
    """
    if n < 1:
        raise DomainError("n must be at least 1")
    if n == 1:
        return WILMA_ALWAYS
    if n == 2:
        return SQRT3 / 2.0
    return SQRT2 / n


def fourstones_lower_bound(rho: float) -> float:
    """Guaranteed win fraction against a centered 2x2 grid on a rho x 1 board."""
    if not (0.0 < rho <= 1.0):
        raise DomainError("aspect ratio must lie in (0, 1]")
    return rho * (0.5 + 1.0 / 128.0)
