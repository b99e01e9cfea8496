"""Clipped Voronoi diagrams of labeled sites on a rectangular board.

Cells are built per site as the intersection of the board with the bisector
half-planes against every other site (O(n^2) overall). That is deliberately
simple: site counts here are desk-scale and robustness beats asymptotics.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import CoincidentSites, OutsideBoard
from .geometry import (
    ConvexPolygon,
    Point,
    bisector_halfplane,
    clip,
    is_point_symmetric,
    split_areas,
)

SITE_DISTINCT_TOL = 1e-9


class Owner(str, enum.Enum):
    WHITE = "white"
    BLACK = "black"


@dataclass(frozen=True)
class Board:
    """Axis-aligned rectangular playing board."""

    width: float
    height: float
    origin: Point = Point(0.0, 0.0)

    def __post_init__(self) -> None:
        if not (self.width > 0.0 and self.height > 0.0):
            raise ValueError("board sides must be positive")
        if not (math.isfinite(self.width) and math.isfinite(self.height)):
            raise ValueError("board sides must be finite")

    @property
    def aspect_ratio(self) -> float:
        """Short side over long side, in (0, 1]."""
        return min(self.width, self.height) / max(self.width, self.height)

    @property
    def area(self) -> float:
        return self.width * self.height

    @property
    def short_side(self) -> float:
        return min(self.width, self.height)

    @property
    def diameter(self) -> float:
        return math.hypot(self.width, self.height)

    @property
    def center(self) -> Point:
        return Point(self.origin.x + 0.5 * self.width, self.origin.y + 0.5 * self.height)

    def as_polygon(self) -> ConvexPolygon:
        ox, oy = self.origin.x, self.origin.y
        return ConvexPolygon(
            [
                Point(ox, oy),
                Point(ox + self.width, oy),
                Point(ox + self.width, oy + self.height),
                Point(ox, oy + self.height),
            ]
        )

    def strictly_contains(self, p: Point) -> bool:
        return (
            self.origin.x < p.x < self.origin.x + self.width
            and self.origin.y < p.y < self.origin.y + self.height
        )

    def contains(self, p: Point) -> bool:
        return (
            self.origin.x <= p.x <= self.origin.x + self.width
            and self.origin.y <= p.y <= self.origin.y + self.height
        )


@dataclass(frozen=True)
class SiteSet:
    """White and black site lists; validation happens against a board."""

    white: tuple[Point, ...]
    black: tuple[Point, ...] = ()

    def __init__(self, white: Sequence[Point], black: Sequence[Point] = ()):
        object.__setattr__(self, "white", tuple(white))
        object.__setattr__(self, "black", tuple(black))

    def all_sites(self) -> tuple[Point, ...]:
        return self.white + self.black

    def validate(self, board: Board) -> None:
        if len(self.white) < 1:
            raise ValueError("at least one white site is required")
        sites = self.all_sites()
        for s in sites:
            if not board.strictly_contains(s):
                raise OutsideBoard(f"site {tuple(s)} is not strictly inside the board")
        for i in range(len(sites)):
            for j in range(i + 1, len(sites)):
                if sites[i].distance_to(sites[j]) < SITE_DISTINCT_TOL:
                    raise CoincidentSites(
                        f"sites {tuple(sites[i])} and {tuple(sites[j])} coincide"
                    )


@dataclass(frozen=True)
class VoronoiCell:
    site: Point
    owner: Owner
    region: ConvexPolygon

    @property
    def area(self) -> float:
        return self.region.area


def voronoi(sites: SiteSet, board: Board) -> list[VoronoiCell]:
    """Clipped Voronoi diagram, one cell per site in input order (white first)."""
    sites.validate(board)
    board_poly = board.as_polygon()
    all_sites = sites.all_sites()
    n_white = len(sites.white)
    cells: list[VoronoiCell] = []
    for i, s in enumerate(all_sites):
        region: Optional[ConvexPolygon] = board_poly
        for j, t in enumerate(all_sites):
            if i == j:
                continue
            region = clip(region, bisector_halfplane(s, t))
            if region is None:
                break
        if region is None:
            raise CoincidentSites(f"cell of site {tuple(s)} degenerated to zero area")
        owner = Owner.WHITE if i < n_white else Owner.BLACK
        cells.append(VoronoiCell(site=s, owner=owner, region=region))
    return cells


def tally(cells: Sequence[VoronoiCell]) -> tuple[float, float]:
    """Total cell area per owner: ``(white_area, black_area)``."""
    white = sum((c.area for c in cells if c.owner is Owner.WHITE), 0.0)
    black = sum((c.area for c in cells if c.owner is Owner.BLACK), 0.0)
    return white, black


def grid_points(board: Board, rows: int, cols: int) -> list[Point]:
    """Centers of a ``rows x cols`` partition of the board, row-major bottom-up."""
    if rows < 1 or cols < 1:
        raise ValueError("grid needs at least one row and one column")
    cw = board.width / cols
    ch = board.height / rows
    return [
        Point(board.origin.x + (j + 0.5) * cw, board.origin.y + (i + 0.5) * ch)
        for i in range(rows)
        for j in range(cols)
    ]


def _bounding_box(cells: Sequence[VoronoiCell]) -> tuple[float, float, float, float]:
    xs = [v.x for c in cells for v in c.region.vertices]
    ys = [v.y for c in cells for v in c.region.vertices]
    return min(xs), min(ys), max(xs), max(ys)


def _axis_aligned_rect(cell: VoronoiCell, tol: float) -> Optional[tuple[float, float]]:
    """Return (width, height) if the cell region is an axis-aligned rectangle."""
    verts = cell.region.vertices
    if len(verts) != 4:
        return None
    for i in range(4):
        a = verts[i]
        b = verts[(i + 1) % 4]
        if abs(a.x - b.x) > tol and abs(a.y - b.y) > tol:
            return None
    xs = [v.x for v in verts]
    ys = [v.y for v in verts]
    return max(xs) - min(xs), max(ys) - min(ys)


def is_regular_grid(
    cells: Sequence[VoronoiCell], tol: Optional[float] = None
) -> tuple[bool, int, int]:
    """Decide whether a (white-only) diagram is a regular grid.

    True iff all cells are congruent axis-aligned rectangles and every site is
    the center of its own cell, within ``tol`` (default ``1e-6`` of the longer
    board side). On success the inferred shape ``(rows, cols)`` is returned,
    otherwise ``(False, 0, 0)``.
    """
    if not cells:
        return False, 0, 0
    min_x, min_y, max_x, max_y = _bounding_box(cells)
    bw = max_x - min_x
    bh = max_y - min_y
    if tol is None:
        tol = 1e-6 * max(bw, bh)
    dims: list[tuple[float, float]] = []
    for cell in cells:
        rect = _axis_aligned_rect(cell, tol)
        if rect is None:
            return False, 0, 0
        w, h = rect
        verts = cell.region.vertices
        cx = (min(v.x for v in verts) + max(v.x for v in verts)) / 2.0
        cy = (min(v.y for v in verts) + max(v.y for v in verts)) / 2.0
        if abs(cell.site.x - cx) > tol or abs(cell.site.y - cy) > tol:
            return False, 0, 0
        dims.append((w, h))
    w0, h0 = dims[0]
    if any(abs(w - w0) > tol or abs(h - h0) > tol for w, h in dims):
        return False, 0, 0
    cols = round(bw / w0)
    rows = round(bh / h0)
    if rows < 1 or cols < 1 or rows * cols != len(cells):
        return False, 0, 0
    if abs(cols * w0 - bw) > tol * max(cols, 1) or abs(rows * h0 - bh) > tol * max(rows, 1):
        return False, 0, 0
    return True, rows, cols


@dataclass(frozen=True)
class ExploitReport:
    """A cell where the white player can be punished, and how.

    ``angle`` is the direction of the split line through the cell's site that
    maximizes the one-sided area; ``delta`` is the guaranteed excess of the
    larger side over half the cell; ``push`` is the unit normal of that line
    pointing into the larger side (where the punishing point should go).
    """

    cell_index: int
    cell: VoronoiCell
    angle: float
    delta: float
    push: Point


def _split_imbalance(cell: VoronoiCell, angle: float) -> float:
    left, right = split_areas(cell.region, cell.site, angle)
    return left - right


def _search_best_angle(cell: VoronoiCell, coarse: int = 64) -> tuple[float, float]:
    """Maximize |left - right| of the site split over angles in [0, pi).

    Coarse scan followed by golden-section refinement inside the bracketing
    interval; returns ``(angle, imbalance)`` with the signed imbalance at the
    returned angle.
    """
    best_i = 0
    best_val = -1.0
    values = []
    for i in range(coarse):
        phi = math.pi * i / coarse
        v = abs(_split_imbalance(cell, phi))
        values.append(v)
        if v > best_val:
            best_val = v
            best_i = i
    lo = math.pi * (best_i - 1) / coarse
    hi = math.pi * (best_i + 1) / coarse
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc = abs(_split_imbalance(cell, c))
    fd = abs(_split_imbalance(cell, d))
    for _ in range(60):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = abs(_split_imbalance(cell, c))
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = abs(_split_imbalance(cell, d))
        if b - a < 1e-12:
            break
    phi_star = 0.5 * (a + b)
    return phi_star % math.pi, _split_imbalance(cell, phi_star)


def find_asymmetric_exploit(
    cells: Sequence[VoronoiCell], board: Board, tol: Optional[float] = None
) -> Optional[ExploitReport]:
    """Locate the most exploitable cell of a white-only diagram.

    Returns ``None`` exactly when the diagram is a regular grid. Otherwise
    some cell is not point symmetric or its site is off-center, and the report
    carries the best split found around that site (``delta > 0`` of board area
    is guaranteed to exist by convexity).
    """
    if tol is None:
        tol = 1e-6 * max(board.width, board.height)
    ok, _, _ = is_regular_grid(cells, tol)
    if ok:
        return None
    candidates: list[int] = []
    for i, cell in enumerate(cells):
        symmetric, center = is_point_symmetric(cell.region, tol=1e-9)
        centered = cell.site.distance_to(center) <= tol
        if not (symmetric and centered):
            candidates.append(i)
    if not candidates:
        # Tolerance edge: the grid test failed on congruence but every single
        # cell looks symmetric and centered. Search everything.
        candidates = list(range(len(cells)))
    best: Optional[ExploitReport] = None
    for i in candidates:
        cell = cells[i]
        phi, imbalance = _search_best_angle(cell)
        delta = abs(imbalance) / 2.0
        sign = 1.0 if imbalance >= 0.0 else -1.0
        push = Point(-math.sin(phi) * sign, math.cos(phi) * sign)
        if best is None or delta > best.delta:
            best = ExploitReport(cell_index=i, cell=cell, angle=phi, delta=delta, push=push)
    return best


def board_to_json(board: Board) -> dict:
    return {"w": board.width, "h": board.height, "origin": [board.origin.x, board.origin.y]}


def board_from_json(data: dict) -> Board:
    origin = data.get("origin", [0.0, 0.0])
    return Board(float(data["w"]), float(data["h"]), Point(float(origin[0]), float(origin[1])))


def diagram_to_json(cells: Sequence[VoronoiCell], board: Board) -> dict:
    """Serialize a diagram: board, per-cell site/owner/vertices/area, and tally."""
    white, black = tally(cells)
    return {
        "board": board_to_json(board),
        "cells": [
            {
                "site": [c.site.x, c.site.y],
                "owner": c.owner.value,
                "vertices": [[v.x, v.y] for v in c.region.vertices],
                "area": c.area,
            }
            for c in cells
        ],
        "tally": {"white": white, "black": black},
    }
