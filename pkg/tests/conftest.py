"""Shared test helpers: independent hull construction and random geometry."""

from __future__ import annotations

import math

import pytest
from hypothesis import strategies as st

from voronoi_game.geometry import ConvexPolygon, HalfPlane, Point


def convex_hull(points: list[tuple[float, float]]) -> list[tuple[float, float]]:
    """Monotone-chain hull, kept independent of the package's geometry code."""
    pts = sorted(set(points))
    if len(pts) < 3:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def hull_area(hull: list[tuple[float, float]]) -> float:
    total = 0.0
    for i in range(len(hull)):
        x0, y0 = hull[i]
        x1, y1 = hull[(i + 1) % len(hull)]
        total += x0 * y1 - x1 * y0
    return 0.5 * abs(total)


coordinate = st.floats(min_value=-5.0, max_value=5.0, allow_nan=False, allow_infinity=False)


@st.composite
def convex_polygons(draw) -> ConvexPolygon:
    """Random non-degenerate convex polygon built from a point-cloud hull."""
    raw = draw(
        st.lists(st.tuples(coordinate, coordinate), min_size=3, max_size=12, unique=True)
    )
    hull = convex_hull(raw)
    if len(hull) < 3 or hull_area(hull) < 1e-2:
        # too thin for tolerance-sensitive properties; ask hypothesis to retry
        from hypothesis import assume

        assume(False)
    return ConvexPolygon([Point(x, y) for x, y in hull])


@st.composite
def half_planes(draw) -> HalfPlane:
    angle = draw(st.floats(min_value=0.0, max_value=2.0 * math.pi, exclude_max=True))
    through_x = draw(coordinate)
    through_y = draw(coordinate)
    nx, ny = math.cos(angle), math.sin(angle)
    return HalfPlane(nx, ny, nx * through_x + ny * through_y)


@pytest.fixture
def unit_square() -> ConvexPolygon:
    return ConvexPolygon([Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1)])
