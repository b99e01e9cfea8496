"""One-round Voronoi game on rectangular boards.

Exact stolen-area geometry, the closed-form winner characterization,
constructive strategies for both players, a validated best-response
optimizer, and an interactive play service.
"""

from .diagram import (
    Board,
    ExploitReport,
    Owner,
    SiteSet,
    VoronoiCell,
    diagram_to_json,
    find_asymmetric_exploit,
    grid_points,
    is_regular_grid,
    tally,
    voronoi,
)
from .errors import (
    CoincidentSites,
    DomainError,
    NotAGrid,
    OutOfTurn,
    OutsideBoard,
    PointOutsidePolygon,
    VoronoiGameError,
    WrongPhase,
)
from .formulas import (
    WILMA_ALWAYS,
    StealBreakdown,
    StripFrame,
    axis_steal_total,
    critical_ratio,
    fourstones_lower_bound,
    steal_breakdown,
    winning_interval,
    y_star,
)
from .geometry import (
    ConvexPolygon,
    HalfPlane,
    Point,
    area,
    bisector_halfplane,
    clip,
    is_point_symmetric,
    split_areas,
)
from .rules import (
    GameConfig,
    StrategyResult,
    Winner,
    barney_response,
    barney_strategy,
    exploit_strategy,
    fourstones_strategy,
    game_record,
    play_game,
    predict_winner,
    wilma_placement,
    wilma_short_axis_placement,
)
from .search import (
    OracleConfig,
    StealResult,
    best_response_point,
    steal_area_exact,
    steal_area_sampled,
)

__version__ = "0.1.0"

__all__ = [
    "Board",
    "ConvexPolygon",
    "CoincidentSites",
    "DomainError",
    "ExploitReport",
    "GameConfig",
    "HalfPlane",
    "NotAGrid",
    "OracleConfig",
    "OutOfTurn",
    "OutsideBoard",
    "Owner",
    "Point",
    "PointOutsidePolygon",
    "SiteSet",
    "StealBreakdown",
    "StealResult",
    "StrategyResult",
    "StripFrame",
    "VoronoiCell",
    "VoronoiGameError",
    "WILMA_ALWAYS",
    "Winner",
    "WrongPhase",
    "area",
    "axis_steal_total",
    "barney_response",
    "barney_strategy",
    "best_response_point",
    "bisector_halfplane",
    "clip",
    "critical_ratio",
    "diagram_to_json",
    "exploit_strategy",
    "find_asymmetric_exploit",
    "fourstones_lower_bound",
    "fourstones_strategy",
    "game_record",
    "grid_points",
    "is_point_symmetric",
    "is_regular_grid",
    "play_game",
    "predict_winner",
    "split_areas",
    "steal_area_exact",
    "steal_area_sampled",
    "steal_breakdown",
    "tally",
    "voronoi",
    "wilma_placement",
    "wilma_short_axis_placement",
    "winning_interval",
    "y_star",
]
