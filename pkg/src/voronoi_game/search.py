"""Single-point best-response search and the independent sampling oracle.

``steal_area_exact`` is the geometric truth (board clipped by bisector
half-planes); ``steal_area_sampled`` is a stratified Monte Carlo estimate kept
deliberately independent of the clipping code so the two can cross-check each
other. ``best_response_point`` maximizes the exact steal with seeded
multi-start Nelder-Mead; the objective is piecewise-smooth with ridges where
the set of cells being stolen from changes, so a derivative-free method is
the right tool.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .diagram import Board, SiteSet, is_regular_grid, voronoi
from .errors import CoincidentSites, OutsideBoard
from .formulas import SQRT2, SQRT3, y_star
from .geometry import ConvexPolygon, Point, bisector_halfplane, clip

# Probe points never sit closer to the boundary than this (board units);
# boundary placements waste half the disk of influence and break bisector
# construction against near-coincident reflections.
INTERIOR_MARGIN = 1e-9
PROBE_DISTINCT_TOL = 1e-9

DEFAULT_GRID_STARTS = 32
DEFAULT_REFINE_TOP = 16


@dataclass(frozen=True)
class OracleConfig:
    """Sampling parameters for the Monte Carlo oracle."""

    samples: int = 1_000_000
    stratified: bool = True
    seed: int = 0

    def __post_init__(self) -> None:
        if self.samples < 10_000:
            raise ValueError("the oracle needs at least 10^4 samples")


@dataclass(frozen=True)
class StealResult:
    point: Point
    exact_area: float
    sampled_area: float
    cells_stolen_from: tuple[int, ...]
    iterations: int

    def to_json(self) -> dict:
        return {
            "point": [self.point.x, self.point.y],
            "exact_area": self.exact_area,
            "sampled_area": self.sampled_area,
            "cells_stolen_from": list(self.cells_stolen_from),
            "iterations": self.iterations,
        }


def _probe_cell(sites: Sequence[Point], board: Board, p: Point) -> Optional[ConvexPolygon]:
    region: Optional[ConvexPolygon] = board.as_polygon()
    for s in sites:
        region = clip(region, bisector_halfplane(p, s))
        if region is None:
            return None
    return region


def steal_area_exact(sites: Sequence[Point], board: Board, p: Point) -> float:
    """Area of the cell a new point p acquires against the fixed ``sites``."""
    if not board.contains(p):
        raise OutsideBoard(f"probe point {tuple(p)} is outside the board")
    for s in sites:
        if p.distance_to(s) < PROBE_DISTINCT_TOL:
            raise CoincidentSites(f"probe point {tuple(p)} coincides with site {tuple(s)}")
    region = _probe_cell(sites, board, p)
    return region.area if region is not None else 0.0


_ORACLE_CHUNK = 1 << 16


def steal_area_sampled(
    sites: Sequence[Point],
    board: Board,
    p: Point,
    cfg: OracleConfig = OracleConfig(),
) -> float:
    """Monte Carlo estimate of the stolen area, deterministic given the seed.

    Stratified mode jitters one sample inside each cell of a near-square grid
    covering the board (at least ``cfg.samples`` cells), which makes the
    binomial error model a conservative bound. Samples are processed in
    cache-sized chunks; the chunking does not affect the result.
    """
    rng = np.random.default_rng(cfg.seed)
    if cfg.stratified:
        cols = max(1, round(math.sqrt(cfg.samples * board.width / board.height)))
        rows = max(1, math.ceil(cfg.samples / cols))
        n = rows * cols
    else:
        cols = rows = 0
        n = cfg.samples
    u = rng.random(n)
    v = rng.random(n)
    site_coords = [(s.x, s.y) for s in sites]
    won = 0
    for start in range(0, n, _ORACLE_CHUNK):
        stop = min(start + _ORACLE_CHUNK, n)
        cu = u[start:stop]
        cv = v[start:stop]
        if cfg.stratified:
            idx = np.arange(start, stop)
            xs = board.origin.x + ((idx % cols) + cu) * (board.width / cols)
            ys = board.origin.y + ((idx // cols) + cv) * (board.height / rows)
        else:
            xs = board.origin.x + cu * board.width
            ys = board.origin.y + cv * board.height
        dx = xs - p.x
        np.multiply(dx, dx, out=dx)
        dy = ys - p.y
        np.multiply(dy, dy, out=dy)
        d_probe = dx
        d_probe += dy
        d_best = None
        for sx, sy in site_coords:
            ex = xs - sx
            np.multiply(ex, ex, out=ex)
            ey = ys - sy
            np.multiply(ey, ey, out=ey)
            ex += ey
            if d_best is None:
                d_best = ex
            else:
                np.minimum(d_best, ex, out=d_best)
        won += int(np.count_nonzero(d_probe < d_best))
    return won / n * board.area


def _clamp(board: Board, x: float, y: float) -> Point:
    lo_x = board.origin.x + INTERIOR_MARGIN
    hi_x = board.origin.x + board.width - INTERIOR_MARGIN
    lo_y = board.origin.y + INTERIOR_MARGIN
    hi_y = board.origin.y + board.height - INTERIOR_MARGIN
    return Point(min(max(x, lo_x), hi_x), min(max(y, lo_y), hi_y))


def _objective(sites: Sequence[Point], board: Board, p: Point) -> float:
    for s in sites:
        if p.distance_to(s) < PROBE_DISTINCT_TOL:
            return 0.0
    region = _probe_cell(sites, board, p)
    return region.area if region is not None else 0.0


def _nelder_mead_max(
    f: Callable[[Point], float],
    board: Board,
    start: Point,
    step: float,
    diam_tol: float,
    max_iter: int = 250,
) -> tuple[Point, float, int]:
    """Maximize f over the board interior; stops when the simplex shrinks below
    ``diam_tol`` or after ``max_iter`` iterations. Returns (point, value, evals)."""
    pts = [
        _clamp(board, start.x, start.y),
        _clamp(board, start.x + step, start.y),
        _clamp(board, start.x, start.y + step),
    ]
    vals = [f(q) for q in pts]
    evals = 3

    def order() -> None:
        nonlocal pts, vals
        paired = sorted(zip(vals, pts), key=lambda t: (-t[0], t[1].x, t[1].y))
        vals = [v for v, _ in paired]
        pts = [q for _, q in paired]

    for _ in range(max_iter):
        order()
        diam = max(
            pts[0].distance_to(pts[1]),
            pts[0].distance_to(pts[2]),
            pts[1].distance_to(pts[2]),
        )
        if diam < diam_tol:
            break
        cx = 0.5 * (pts[0].x + pts[1].x)
        cy = 0.5 * (pts[0].y + pts[1].y)
        worst = pts[2]
        refl = _clamp(board, cx + (cx - worst.x), cy + (cy - worst.y))
        f_refl = f(refl)
        evals += 1
        if f_refl > vals[0]:
            exp = _clamp(board, cx + 2.0 * (cx - worst.x), cy + 2.0 * (cy - worst.y))
            f_exp = f(exp)
            evals += 1
            if f_exp > f_refl:
                pts[2], vals[2] = exp, f_exp
            else:
                pts[2], vals[2] = refl, f_refl
            continue
        if f_refl > vals[1]:
            pts[2], vals[2] = refl, f_refl
            continue
        contr = _clamp(board, cx + 0.5 * (worst.x - cx), cy + 0.5 * (worst.y - cy))
        f_contr = f(contr)
        evals += 1
        if f_contr > vals[2]:
            pts[2], vals[2] = contr, f_contr
            continue
        # shrink toward the best vertex
        for i in (1, 2):
            pts[i] = _clamp(
                board,
                pts[0].x + 0.5 * (pts[i].x - pts[0].x),
                pts[0].y + 0.5 * (pts[i].y - pts[0].y),
            )
            vals[i] = f(pts[i])
            evals += 2
    order()
    return pts[0], vals[0], evals


def _grid_axis_seeds(sites: Sequence[Point], board: Board) -> list[Point]:
    """Analytic seeds for 1 x n grids: the strip-frame optimum mapped back.

    When the white sites form a single-row (or single-column) grid of n >= 3
    cells whose equivalent strip half-height r lies in (sqrt(2), sqrt(3)], the
    stolen area is maximized directly above/below an interior site at offset
    y_star(r) scaled by the cell size. Used as extra starts only.
    """
    try:
        cells = voronoi(SiteSet(white=tuple(sites)), board)
    except Exception:
        return []
    ok, rows, cols = is_regular_grid(cells)
    if not ok:
        return []
    n = len(sites)
    if n < 3:
        return []
    horizontal = rows == 1 and cols == n
    vertical = cols == 1 and rows == n
    if not (horizontal or vertical):
        return []
    along = board.width if horizontal else board.height
    across = board.height if horizontal else board.width
    cell_len = along / n
    scale = cell_len / 2.0
    r = across / cell_len
    if not (SQRT2 < r <= SQRT3):
        return []
    offset = scale * y_star(r)
    ordered = sorted(range(n), key=lambda i: sites[i].x if horizontal else sites[i].y)
    seeds: list[Point] = []
    for pos in {1, n // 2, n - 2}:
        s = sites[ordered[pos]]
        if horizontal:
            seeds.append(_clamp(board, s.x, s.y + offset))
            seeds.append(_clamp(board, s.x, s.y - offset))
        else:
            seeds.append(_clamp(board, s.x + offset, s.y))
            seeds.append(_clamp(board, s.x - offset, s.y))
    return seeds


def _stolen_from(sites: Sequence[Point], board: Board, p: Point) -> tuple[int, ...]:
    """Indices of sites whose cells lose area to p: their bisector supports an
    edge (at least two vertices) of p's cell."""
    region = _probe_cell(sites, board, p)
    if region is None:
        return ()
    tol = 1e-9 * board.diameter
    stolen = []
    for i, s in enumerate(sites):
        hp = bisector_halfplane(p, s)
        on_line = sum(1 for v in region.vertices if abs(hp.signed_distance(v)) <= tol)
        if on_line >= 2:
            stolen.append(i)
    return tuple(stolen)


def _refine_task(
    args: tuple[tuple[tuple[float, float], ...], Board, tuple[float, float], float, float]
) -> tuple[float, float, float, int]:
    sites_raw, board, start_raw, step, diam_tol = args
    sites = [Point(x, y) for x, y in sites_raw]
    f = lambda q: _objective(sites, board, q)
    pt, val, evals = _nelder_mead_max(f, board, Point(*start_raw), step, diam_tol)
    return pt.x, pt.y, val, evals


def best_response_point(
    sites: Sequence[Point],
    board: Board,
    cfg: OracleConfig = OracleConfig(),
    workers: int = 1,
    grid_starts: int = DEFAULT_GRID_STARTS,
    refine_top: int = DEFAULT_REFINE_TOP,
) -> StealResult:
    """Best single point to add against ``sites``, by seeded multi-start search.

    Starts are one jittered point per cell of a ``grid_starts`` x
    ``grid_starts`` partition of the board plus the analytic grid seeds; the
    ``refine_top`` most promising starts get Nelder-Mead refinement (simplex
    diameter termination at 1e-7 of the board diameter). The result never
    falls below the best raw start or seed value, and serial and parallel
    runs pick the same point (ties break lexicographically).
    """
    if len(sites) < 1:
        raise ValueError("best_response_point needs at least one site")
    rng = np.random.default_rng(cfg.seed)
    jitter = rng.random((grid_starts * grid_starts, 2))
    cw = board.width / grid_starts
    ch = board.height / grid_starts
    starts: list[Point] = []
    k = 0
    for i in range(grid_starts):
        for j in range(grid_starts):
            starts.append(
                _clamp(
                    board,
                    board.origin.x + (j + jitter[k, 0]) * cw,
                    board.origin.y + (i + jitter[k, 1]) * ch,
                )
            )
            k += 1
    seeds = _grid_axis_seeds(sites, board)
    starts.extend(seeds)

    evaluations = 0
    scored: list[tuple[float, Point]] = []
    for q in starts:
        scored.append((_objective(sites, board, q), q))
        evaluations += 1
    scored.sort(key=lambda t: (-t[0], t[1].x, t[1].y))

    diam_tol = 1e-7 * board.diameter
    step = board.diameter / (2.0 * grid_starts)
    top = [q for _, q in scored[: max(1, refine_top)]]
    tasks = [
        (tuple((s.x, s.y) for s in sites), board, (q.x, q.y), step, diam_tol) for q in top
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            refined = list(pool.map(_refine_task, tasks))
    else:
        refined = [_refine_task(t) for t in tasks]

    best_pt, best_val = scored[0][1], scored[0][0]
    for x, y, val, evals in refined:
        evaluations += evals
        cand = Point(x, y)
        if val > best_val or (val == best_val and (cand.x, cand.y) < (best_pt.x, best_pt.y)):
            best_pt, best_val = cand, val

    sampled = steal_area_sampled(sites, board, best_pt, cfg)
    return StealResult(
        point=best_pt,
        exact_area=best_val,
        sampled_area=sampled,
        cells_stolen_from=_stolen_from(sites, board, best_pt),
        iterations=evaluations,
    )
