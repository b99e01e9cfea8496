"""Planar primitives: points, half-planes, convex polygons, clipping, line splits.

Everything here is a plain double-precision value type. Operations are pure
and never mutate their inputs, so they are safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import CoincidentSites, PointOutsidePolygon

# Vertex dedup / collinearity straightening, in board units. Boards in this
# package are O(1)-sized, so this sits far below any geometric feature.
COLLINEAR_TOL = 1e-9
# A clip result whose area is below this fraction of the input counts as empty.
EMPTY_AREA_FRACTION = 1e-14
# Two sites closer than this are considered coincident.
DISTINCT_TOL = 1e-12


@dataclass(frozen=True, slots=True)
class Point:
    x: float
    y: float

    def __post_init__(self) -> None:
        # coerce numpy scalars and ints so downstream JSON stays plain floats
        if type(self.x) is not float:
            object.__setattr__(self, "x", float(self.x))
        if type(self.y) is not float:
            object.__setattr__(self, "y", float(self.y))
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"point coordinates must be finite, got ({self.x}, {self.y})")

    def distance_to(self, other: "Point") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def __iter__(self):
        yield self.x
        yield self.y


@dataclass(frozen=True, slots=True)
class HalfPlane:
    """The closed half-plane ``{q : q . normal <= offset}`` with a unit normal."""

    nx: float
    ny: float
    offset: float

    def __post_init__(self) -> None:
        norm = math.hypot(self.nx, self.ny)
        if not math.isfinite(norm) or norm < DISTINCT_TOL:
            raise ValueError("half-plane normal must be a nonzero finite vector")
        if abs(norm - 1.0) > 1e-15:
            object.__setattr__(self, "nx", self.nx / norm)
            object.__setattr__(self, "ny", self.ny / norm)
            object.__setattr__(self, "offset", self.offset / norm)

    def signed_distance(self, p: Point) -> float:
        """Negative inside, positive outside, zero on the boundary line."""
        return self.nx * p.x + self.ny * p.y - self.offset

    def contains(self, p: Point, tol: float = 0.0) -> bool:
        return self.signed_distance(p) <= tol

    def complement(self) -> "HalfPlane":
        return HalfPlane(-self.nx, -self.ny, -self.offset)


def bisector_halfplane(keep: Point, other: Point) -> HalfPlane:
    """Half-plane of points at least as close to ``keep`` as to ``other``."""
    dx = other.x - keep.x
    dy = other.y - keep.y
    dist = math.hypot(dx, dy)
    if dist <= DISTINCT_TOL:
        raise CoincidentSites(f"sites {tuple(keep)} and {tuple(other)} coincide")
    nx = dx / dist
    ny = dy / dist
    mx = 0.5 * (keep.x + other.x)
    my = 0.5 * (keep.y + other.y)
    return HalfPlane(nx, ny, nx * mx + ny * my)


def _shoelace(vertices: Sequence[Point]) -> float:
    total = 0.0
    n = len(vertices)
    for i in range(n):
        a = vertices[i]
        b = vertices[(i + 1) % n]
        total += a.x * b.y - b.x * a.y
    return 0.5 * total


class ConvexPolygon:
    """Convex polygon with counterclockwise vertices and a cached shoelace area.

    Construction cleans the input ring: consecutive near-duplicate vertices are
    merged and vertices within ``COLLINEAR_TOL`` of the adjacent edge are
    dropped, so polygons coming out of clipping cascades stay canonical.
    Instances are immutable by convention; treat them as values.
    """

    __slots__ = ("vertices", "area")

    def __init__(self, points: Iterable[Point]):
        verts = self._clean(list(points))
        if len(verts) < 3:
            raise ValueError("a convex polygon needs at least 3 non-collinear vertices")
        signed = _shoelace(verts)
        if signed < 0.0:
            verts.reverse()
            signed = -signed
        self._check_convex(verts)
        self.vertices: tuple[Point, ...] = tuple(verts)
        self.area: float = signed

    @staticmethod
    def _clean(verts: list[Point]) -> list[Point]:
        # merge consecutive duplicates (including the wrap-around pair)
        out: list[Point] = []
        for v in verts:
            if not out or out[-1].distance_to(v) > COLLINEAR_TOL:
                out.append(v)
        while len(out) > 1 and out[0].distance_to(out[-1]) <= COLLINEAR_TOL:
            out.pop()
        # drop vertices sitting on the segment between their neighbours
        changed = True
        while changed and len(out) >= 3:
            changed = False
            for i in range(len(out)):
                a = out[i - 1]
                b = out[i]
                c = out[(i + 1) % len(out)]
                ux, uy = c.x - a.x, c.y - a.y
                seg = math.hypot(ux, uy)
                if seg <= COLLINEAR_TOL:
                    continue
                perp = abs(ux * (b.y - a.y) - uy * (b.x - a.x)) / seg
                if perp <= COLLINEAR_TOL:
                    del out[i]
                    changed = True
                    break
        return out

    @staticmethod
    def _check_convex(verts: list[Point]) -> None:
        n = len(verts)
        scale = max(v.distance_to(w) for v in verts[:1] for w in verts) or 1.0
        for i in range(n):
            a, b, c = verts[i - 1], verts[i], verts[(i + 1) % n]
            cross = (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x)
            if cross < -1e-9 * scale * scale:
                raise ValueError("vertices do not describe a convex polygon")

    @property
    def diameter(self) -> float:
        return max(a.distance_to(b) for a in self.vertices for b in self.vertices)

    def centroid(self) -> Point:
        """Area centroid (the barycenter of the enclosed region)."""
        cx = cy = 0.0
        n = len(self.vertices)
        for i in range(n):
            a = self.vertices[i]
            b = self.vertices[(i + 1) % n]
            w = a.x * b.y - b.x * a.y
            cx += (a.x + b.x) * w
            cy += (a.y + b.y) * w
        f = 1.0 / (6.0 * self.area)
        return Point(cx * f, cy * f)

    def contains_point(self, p: Point, tol: float = 0.0) -> bool:
        n = len(self.vertices)
        for i in range(n):
            a = self.vertices[i]
            b = self.vertices[(i + 1) % n]
            cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x)
            if cross < -tol:
                return False
        return True

    def strictly_contains(self, p: Point) -> bool:
        n = len(self.vertices)
        for i in range(n):
            a = self.vertices[i]
            b = self.vertices[(i + 1) % n]
            cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x)
            if cross <= 0.0:
                return False
        return True

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ConvexPolygon) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        return f"ConvexPolygon({list(tuple(v) for v in self.vertices)!r})"


def area(poly: ConvexPolygon) -> float:
    """Shoelace area of the polygon (always non-negative)."""
    return poly.area


def clip(poly: ConvexPolygon, hp: HalfPlane) -> Optional[ConvexPolygon]:
    """Intersect a convex polygon with a half-plane.

    Returns ``None`` when the intersection is empty (area below
    ``EMPTY_AREA_FRACTION`` of the input), so clipping cascades can continue
    without special-casing exceptions.
    """
    verts = poly.vertices
    dists = [hp.signed_distance(v) for v in verts]
    if all(d <= 0.0 for d in dists):
        return poly
    if all(d >= 0.0 for d in dists):
        return None
    out: list[Point] = []
    n = len(verts)
    for i in range(n):
        a, da = verts[i], dists[i]
        b, db = verts[(i + 1) % n], dists[(i + 1) % n]
        if da <= 0.0:
            out.append(a)
        if (da < 0.0 < db) or (db < 0.0 < da):
            t = da / (da - db)
            out.append(Point(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)))
    if len(out) < 3:
        return None
    try:
        result = ConvexPolygon(out)
    except ValueError:
        return None
    if result.area < EMPTY_AREA_FRACTION * poly.area:
        return None
    return result


def split_areas(poly: ConvexPolygon, through: Point, angle: float) -> tuple[float, float]:
    """Areas of ``poly`` on each side of the line through ``through`` at ``angle``.

    The line is directed along ``(cos angle, sin angle)``; the first component
    of the result is the area to its left, the second to its right. Raises
    :class:`PointOutsidePolygon` unless ``through`` lies strictly inside.
    """
    if not poly.strictly_contains(through):
        raise PointOutsidePolygon(f"split point {tuple(through)} is not strictly inside")
    nx = math.sin(angle)
    ny = -math.cos(angle)
    hp_left = HalfPlane(nx, ny, nx * through.x + ny * through.y)
    left_poly = clip(poly, hp_left)
    right_poly = clip(poly, hp_left.complement())
    left = left_poly.area if left_poly is not None else 0.0
    right = right_poly.area if right_poly is not None else 0.0
    return left, right


def is_point_symmetric(poly: ConvexPolygon, tol: float = 1e-9) -> tuple[bool, Point]:
    """Test 180-degree rotational symmetry of the vertex set about the centroid.

    Returns ``(symmetric, centroid)`` where symmetry means the vertex set maps
    to itself under rotation by pi about the centroid, up to a Hausdorff
    distance of ``tol * diameter``.
    """
    c = poly.centroid()
    verts = poly.vertices
    reflected = [Point(2.0 * c.x - v.x, 2.0 * c.y - v.y) for v in verts]
    limit = tol * poly.diameter

    def one_sided(src: Sequence[Point], dst: Sequence[Point]) -> float:
        return max(min(s.distance_to(d) for d in dst) for s in src)

    hausdorff = max(one_sided(reflected, verts), one_sided(verts, reflected))
    return hausdorff <= limit, c
