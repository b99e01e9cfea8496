"""Outcome characterization and constructive strategies for both players.

The first player ("white") survives only with a centered grid; the second
player ("black") punishes anything else via the asymmetric-cell exploit, and
beats grids above the critical aspect ratio via a best-response point backed
by near-site shadow placements that each claim just under half a cell.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .diagram import (
    Board,
    ExploitReport,
    SiteSet,
    VoronoiCell,
    board_to_json,
    find_asymmetric_exploit,
    grid_points,
    is_regular_grid,
    tally,
    voronoi,
)
from .errors import NotAGrid
from .formulas import WILMA_ALWAYS, critical_ratio
from .geometry import Point, split_areas
from .search import best_response_point

TIE_REL_TOL = 1e-9
# Default offset for shadow placements, relative to the board's short side;
# far above geometric tolerance yet small enough that the O(n * eps) claimed
# area loss never flips a desk-scale verdict.
DEFAULT_EPS_FRACTION = 1e-4
MIN_EPS_FRACTION = 1e-12


class Winner(str, enum.Enum):
    WILMA = "wilma"
    BARNEY = "barney"
    TIE = "tie"


@dataclass(frozen=True)
class GameConfig:
    n: int
    board: Board

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be at least 1")

    @property
    def rho(self) -> float:
        return self.board.aspect_ratio


@dataclass(frozen=True)
class StrategyResult:
    points: tuple[Point, ...]
    guaranteed_area: float
    epsilon: float


def predict_winner(cfg: GameConfig) -> Winner:
    """Game outcome under optimal play: black wins strictly above the critical
    ratio (sqrt(3)/2 for n = 2, sqrt(2)/n for n >= 3), white otherwise."""
    threshold = critical_ratio(cfg.n)
    if threshold is WILMA_ALWAYS:
        return Winner.WILMA
    return Winner.BARNEY if cfg.rho > threshold else Winner.WILMA


def wilma_placement(cfg: GameConfig) -> list[Point]:
    """The 1 x n grid along the board's long axis (white's only safe shape)."""
    if cfg.board.width >= cfg.board.height:
        return grid_points(cfg.board, 1, cfg.n)
    return grid_points(cfg.board, cfg.n, 1)


def wilma_short_axis_placement(cfg: GameConfig) -> list[Point]:
    """The n-cell grid across the short axis. A valid grid, but a losing one
    for n = 2 whenever the long-axis grid would have survived; exposed so the
    inferior variant can be exercised directly."""
    if cfg.board.width >= cfg.board.height:
        return grid_points(cfg.board, cfg.n, 1)
    return grid_points(cfg.board, 1, cfg.n)


def play_game(
    W: Sequence[Point], B: Sequence[Point], board: Board
) -> tuple[float, float, Winner]:
    """Final tally and winner for completed placements of both players."""
    cells = voronoi(SiteSet(white=tuple(W), black=tuple(B)), board)
    white, black = tally(cells)
    if abs(white - black) < TIE_REL_TOL * board.area:
        winner = Winner.TIE
    elif white > black:
        winner = Winner.WILMA
    else:
        winner = Winner.BARNEY
    return white, black, winner


def game_record(W: Sequence[Point], B: Sequence[Point], board: Board) -> dict:
    """The shared JSON game record: board, counts, points, tally, winner."""
    white, black, winner = play_game(W, B, board)
    return {
        "board": board_to_json(board),
        "n": len(W),
        "white": [[p.x, p.y] for p in W],
        "black": [[p.x, p.y] for p in B],
        "tally": {"white": white, "black": black},
        "winner": winner.value,
    }


def _boundary_distance(board: Board, p: Point) -> float:
    return min(
        p.x - board.origin.x,
        board.origin.x + board.width - p.x,
        p.y - board.origin.y,
        board.origin.y + board.height - p.y,
    )


def _shadow_point(
    board: Board,
    site: Point,
    direction: Point,
    eps: float,
    others: Sequence[Point],
) -> Point:
    """Place a point at distance ~eps from ``site`` along ``direction``,
    shrinking the offset as needed to stay inside the board and distinct."""
    norm = math.hypot(direction.x, direction.y)
    if norm <= 0.0:
        direction, norm = Point(1.0, 0.0), 1.0
    ux, uy = direction.x / norm, direction.y / norm
    step = min(eps, 0.25 * _boundary_distance(board, site))
    min_gap = min((site.distance_to(o) for o in others), default=math.inf)
    step = min(step, 0.25 * min_gap)
    step = max(step, 1e-9 * board.short_side)
    return Point(site.x + step * ux, site.y + step * uy)


def _largest_side_direction(cell: VoronoiCell) -> Point:
    """Unit normal of the site split (over a few axes) pointing into the
    larger side; any such side holds at least half the cell."""
    best_dir = Point(1.0, 0.0)
    best_side = -1.0
    for k in range(4):
        phi = math.pi * k / 4.0
        left, right = split_areas(cell.region, cell.site, phi)
        nx, ny = -math.sin(phi), math.cos(phi)
        if left >= right and left > best_side:
            best_side, best_dir = left, Point(nx, ny)
        if right > left and right > best_side:
            best_side, best_dir = right, Point(-nx, -ny)
    return best_dir


def _black_tally(W: Sequence[Point], B: Sequence[Point], board: Board) -> float:
    cells = voronoi(SiteSet(white=tuple(W), black=tuple(B)), board)
    return tally(cells)[1]


def barney_strategy(
    W: Sequence[Point], board: Board, eps: Optional[float] = None
) -> StrategyResult:
    """Black's full n-point response to a regular-grid white placement.

    The first point is the numeric best response; each remaining point shadows
    a distinct white site from the far side of the already-stolen region,
    claiming just under half that cell. Raises :class:`NotAGrid` when the
    white diagram is not a centered grid. The offset shrinks automatically
    until the tally clears half the board whenever the characterization says
    black should win.
    """
    W = tuple(W)
    cells = voronoi(SiteSet(white=W), board)
    ok, _, _ = is_regular_grid(cells)
    if not ok:
        raise NotAGrid("white sites do not form a regular grid; exploit the asymmetry instead")
    best = best_response_point(W, board)
    p1 = best.point
    with_probe = voronoi(SiteSet(white=W, black=(p1,)), board)
    losses = [cells[i].area - with_probe[i].area for i in range(len(W))]
    skip = max(range(len(W)), key=lambda i: (losses[i], -i))

    if eps is None:
        eps = DEFAULT_EPS_FRACTION * board.short_side
    floor = MIN_EPS_FRACTION * board.short_side
    should_win = predict_winner(GameConfig(n=len(W), board=board)) is Winner.BARNEY
    half = 0.5 * board.area
    while True:
        points: list[Point] = [p1]
        for i, w in enumerate(W):
            if i == skip:
                continue
            direction = Point(w.x - p1.x, w.y - p1.y)
            points.append(_shadow_point(board, w, direction, eps, [p for p in W if p != w]))
        black = _black_tally(W, points, board)
        if not should_win or black > half or eps <= floor:
            return StrategyResult(points=tuple(points), guaranteed_area=black, epsilon=eps)
        eps /= 2.0


def exploit_strategy(
    W: Sequence[Point],
    board: Board,
    report: Optional[ExploitReport] = None,
    eps: Optional[float] = None,
) -> StrategyResult:
    """Black's n-point punishment of a non-grid white placement.

    One point sits just inside the larger side of the most lopsided split
    through the flagged site (claiming half that cell plus the excess delta);
    every other white site gets shadowed from its own larger side. Total
    claimed area exceeds half the board once the offset is small against
    delta, which the retry loop enforces.
    """
    W = tuple(W)
    cells = voronoi(SiteSet(white=W), board)
    if report is None:
        report = find_asymmetric_exploit(cells, board)
    if report is None:
        raise NotAGrid("white sites form a regular grid; use barney_strategy instead")

    if eps is None:
        eps = DEFAULT_EPS_FRACTION * board.short_side
    n = len(W)
    # keep the O(n * eps * diam) placement losses well under the exploit margin
    if report.delta > 0.0:
        eps = min(eps, report.delta / (8.0 * max(n, 1) * board.diameter))
    floor = MIN_EPS_FRACTION * board.short_side
    half = 0.5 * board.area
    while True:
        points: list[Point] = []
        target = report.cell
        others = [p for p in W if p != target.site]
        points.append(_shadow_point(board, target.site, report.push, eps, others))
        for i, cell in enumerate(cells):
            if i == report.cell_index:
                continue
            direction = _largest_side_direction(cell)
            rest = [p for p in W if p != cell.site]
            points.append(_shadow_point(board, cell.site, direction, eps, rest))
        black = _black_tally(W, points, board)
        if black > half or eps <= floor:
            return StrategyResult(points=tuple(points), guaranteed_area=black, epsilon=eps)
        eps /= 2.0


def barney_response(
    W: Sequence[Point], board: Board, eps: Optional[float] = None
) -> StrategyResult:
    """Black's full response to any white placement: grid play against grids,
    asymmetry punishment against everything else."""
    cells = voronoi(SiteSet(white=tuple(W)), board)
    report = find_asymmetric_exploit(cells, board)
    if report is None:
        return barney_strategy(W, board, eps=eps)
    return exploit_strategy(W, board, report=report, eps=eps)


def fourstones_strategy(board: Board, eps: float = 1e-3) -> StrategyResult:
    """The explicit 4-point response to a centered 2x2 grid.

    In long-axis coordinates (long side L, short side S): the first point at
    (L/2, S/4) claims at least rho * (1/8 + 1/128) of the board, and the three
    offset shadows bring the total above rho * (1/2 + 1/128) minus a few eps.
    """
    L = max(board.width, board.height)
    S = min(board.width, board.height)

    def to_point(u: float, v: float) -> Point:
        if board.width >= board.height:
            return Point(board.origin.x + u, board.origin.y + v)
        return Point(board.origin.x + v, board.origin.y + u)

    a = 4.0 * eps / 3.0
    points = (
        to_point(0.5 * L, 0.25 * S),
        to_point(0.25 * L - a, 0.25 * S),
        to_point(0.25 * L - a, 0.75 * S),
        to_point(0.75 * L + a, 0.75 * S),
    )
    W = grid_points(board, 2, 2)
    black = _black_tally(W, points, board)
    return StrategyResult(points=points, guaranteed_area=black, epsilon=eps)
