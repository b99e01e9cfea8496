"""Interactive play service: JSON-over-HTTP sessions for the one-round game.

Sessions live in memory; every mutation is serialized through a per-session
lock and appended to an event list (optionally mirrored to a JSON-lines file),
so replaying the events reproduces the exact same state. The full diagram is
recomputed after each placement: site counts are tiny and correctness beats
speed here.
"""

from __future__ import annotations

import enum
import json
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal, Optional, Sequence

from fastapi import FastAPI, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from .diagram import Board, Owner, SiteSet, VoronoiCell, tally, voronoi
from .errors import (
    CoincidentSites,
    NotAGrid,
    OutOfTurn,
    OutsideBoard,
    VoronoiGameError,
    WrongPhase,
)
from .geometry import Point
from .rules import (
    GameConfig,
    Winner,
    barney_response,
    play_game,
    predict_winner,
    wilma_placement,
)
from .search import OracleConfig, StealResult, best_response_point

PLACED_DISTINCT_TOL = 1e-9


class SessionPhase(str, enum.Enum):
    WILMA_PLACING = "wilma-placing"
    BARNEY_PLACING = "barney-placing"
    FINISHED = "finished"


@dataclass
class GameSession:
    id: str
    config: GameConfig
    phase: SessionPhase = SessionPhase.WILMA_PLACING
    white: list[Point] = field(default_factory=list)
    black: list[Point] = field(default_factory=list)
    events: list[dict] = field(default_factory=list)
    winner: Optional[Winner] = None
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def placed(self) -> list[Point]:
        return self.white + self.black

    def cells(self) -> list[VoronoiCell]:
        if not self.white:
            return []
        return voronoi(SiteSet(white=tuple(self.white), black=tuple(self.black)), self.config.board)

    def tally(self) -> tuple[float, float]:
        cells = self.cells()
        if not cells:
            return 0.0, 0.0
        return tally(cells)


def new_session(config: GameConfig, session_id: Optional[str] = None) -> GameSession:
    session = GameSession(id=session_id or uuid.uuid4().hex, config=config)
    session.events.append(
        {
            "seq": 0,
            "type": "created",
            "n": config.n,
            "board": {
                "w": config.board.width,
                "h": config.board.height,
                "origin": [config.board.origin.x, config.board.origin.y],
            },
        }
    )
    return session


def _validate_placement(session: GameSession, point: Point) -> None:
    if not session.config.board.strictly_contains(point):
        raise OutsideBoard(f"point {tuple(point)} is not strictly inside the board")
    for prior in session.placed():
        if prior.distance_to(point) < PLACED_DISTINCT_TOL:
            raise CoincidentSites(f"point {tuple(point)} is already occupied")


def place_point(session: GameSession, player: Owner, point: Point) -> None:
    """Append a placement for ``player``; advances the phase when a side
    completes its quota and settles the winner after the final point."""
    n = session.config.n
    if session.phase is SessionPhase.FINISHED:
        raise OutOfTurn("the game is already finished")
    if player is Owner.WHITE and session.phase is not SessionPhase.WILMA_PLACING:
        raise OutOfTurn("white has already placed all points")
    if player is Owner.BLACK and session.phase is not SessionPhase.BARNEY_PLACING:
        raise OutOfTurn("black cannot place before white has finished")
    _validate_placement(session, point)
    if player is Owner.WHITE:
        session.white.append(point)
        if len(session.white) == n:
            session.phase = SessionPhase.BARNEY_PLACING
    else:
        session.black.append(point)
        if len(session.black) == n:
            session.phase = SessionPhase.FINISHED
            _, _, session.winner = play_game(session.white, session.black, session.config.board)
    session.events.append(
        {
            "seq": len(session.events),
            "type": "place",
            "player": player.value,
            "x": point.x,
            "y": point.y,
        }
    )


def session_advice(session: GameSession, cfg: OracleConfig) -> StealResult:
    """Best single next point for black against everything on the board."""
    if session.phase is not SessionPhase.BARNEY_PLACING:
        raise WrongPhase("advice is available only while black is placing")
    return best_response_point(session.placed(), session.config.board, cfg=cfg)


def session_autoplay(session: GameSession, player: Owner = Owner.BLACK) -> None:
    """Let the engine place all of one player's points at once.

    Black gets the full response strategy; white gets the long-axis grid."""
    if player is Owner.BLACK:
        if session.phase is not SessionPhase.BARNEY_PLACING:
            raise WrongPhase("black autoplay is available only while black is placing")
        if session.black:
            raise WrongPhase("autoplay requires that black has not placed any point yet")
        strategy = barney_response(session.white, session.config.board)
        for p in strategy.points:
            place_point(session, Owner.BLACK, p)
    else:
        if session.phase is not SessionPhase.WILMA_PLACING:
            raise WrongPhase("white autoplay is available only while white is placing")
        if session.white:
            raise WrongPhase("autoplay requires that white has not placed any point yet")
        for p in wilma_placement(session.config):
            place_point(session, Owner.WHITE, p)


def session_preview(session: GameSession, player: Owner, point: Point) -> tuple[float, float, float]:
    """Dry-run placement: returns (white, black, stolen) without mutating."""
    if session.phase is SessionPhase.FINISHED:
        raise OutOfTurn("the game is already finished")
    if player is Owner.WHITE and session.phase is not SessionPhase.WILMA_PLACING:
        raise OutOfTurn("white has already placed all points")
    if player is Owner.BLACK and session.phase is not SessionPhase.BARNEY_PLACING:
        raise OutOfTurn("black cannot place before white has finished")
    _validate_placement(session, point)
    white = list(session.white)
    black = list(session.black)
    (white if player is Owner.WHITE else black).append(point)
    cells = voronoi(SiteSet(white=tuple(white), black=tuple(black)), session.config.board)
    w, b = tally(cells)
    stolen = cells[len(white) - 1 if player is Owner.WHITE else -1].area
    return w, b, stolen


def replay_events(events: Sequence[dict]) -> GameSession:
    """Rebuild a session from its event log; used for recovery and audits."""
    if not events or events[0].get("type") != "created":
        raise ValueError("event log must start with a 'created' event")
    head = events[0]
    board_data = head["board"]
    origin = board_data.get("origin", [0.0, 0.0])
    board = Board(board_data["w"], board_data["h"], Point(origin[0], origin[1]))
    session = GameSession(id="replay", config=GameConfig(n=head["n"], board=board))
    session.events.append(dict(head))
    for event in events[1:]:
        if event.get("type") != "place":
            raise ValueError(f"unknown event type: {event.get('type')!r}")
        place_point(session, Owner(event["player"]), Point(event["x"], event["y"]))
    return session


def load_event_log(path: str | Path) -> list[dict]:
    with open(path, "r", encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]


class SessionStore:
    """In-memory session registry with optional append-only event-log files."""

    def __init__(self, event_log_dir: Optional[str | Path] = None):
        self._sessions: dict[str, GameSession] = {}
        self._lock = threading.Lock()
        self.event_log_dir = Path(event_log_dir) if event_log_dir else None
        if self.event_log_dir:
            self.event_log_dir.mkdir(parents=True, exist_ok=True)

    def add(self, session: GameSession) -> None:
        with self._lock:
            self._sessions[session.id] = session
        for event in session.events:
            self._persist(session.id, event)

    def get(self, session_id: str) -> GameSession:
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise KeyError(session_id)
        return session

    def _persist(self, session_id: str, event: dict) -> None:
        if not self.event_log_dir:
            return
        with open(self.event_log_dir / f"{session_id}.jsonl", "a", encoding="utf-8") as fh:
            fh.write(json.dumps(event, sort_keys=True) + "\n")


# --- HTTP layer -------------------------------------------------------------


class BoardModel(BaseModel):
    w: float = Field(gt=0.0)
    h: float = Field(gt=0.0)
    origin: tuple[float, float] = (0.0, 0.0)

    def to_board(self) -> Board:
        return Board(self.w, self.h, Point(self.origin[0], self.origin[1]))

    @classmethod
    def from_board(cls, board: Board) -> "BoardModel":
        return cls(w=board.width, h=board.height, origin=(board.origin.x, board.origin.y))


class CreateSessionRequest(BaseModel):
    n: int = Field(ge=1)
    board: BoardModel


class PlacePointRequest(BaseModel):
    player: Literal["white", "black"]
    x: float
    y: float


class TallyModel(BaseModel):
    white: float
    black: float


class CellModel(BaseModel):
    site: list[float]
    owner: str
    vertices: list[list[float]]
    area: float


class SessionStateModel(BaseModel):
    id: str
    n: int
    board: BoardModel
    phase: str
    predicted_winner: str
    white: list[list[float]]
    black: list[list[float]]
    tally: TallyModel
    cells: list[CellModel]
    winner: Optional[str] = None


class AdviceModel(BaseModel):
    point: list[float]
    exact_area: float
    sampled_area: float
    cells_stolen_from: list[int]
    iterations: int


class AutoplayRequest(BaseModel):
    player: Literal["white", "black"] = "black"


class PreviewResponse(BaseModel):
    tally: TallyModel
    steal_area: float


class EventsResponse(BaseModel):
    events: list[dict]


def snapshot(session: GameSession) -> SessionStateModel:
    cells = session.cells()
    white_area, black_area = (tally(cells) if cells else (0.0, 0.0))
    return SessionStateModel(
        id=session.id,
        n=session.config.n,
        board=BoardModel.from_board(session.config.board),
        phase=session.phase.value,
        predicted_winner=predict_winner(session.config).value,
        white=[[p.x, p.y] for p in session.white],
        black=[[p.x, p.y] for p in session.black],
        tally=TallyModel(white=white_area, black=black_area),
        cells=[
            CellModel(
                site=[c.site.x, c.site.y],
                owner=c.owner.value,
                vertices=[[v.x, v.y] for v in c.region.vertices],
                area=c.area,
            )
            for c in cells
        ],
        winner=session.winner.value if session.winner else None,
    )


def create_app(
    event_log_dir: Optional[str | Path] = None,
    advice_config: OracleConfig = OracleConfig(),
    static_dir: Optional[str | Path] = None,
) -> FastAPI:
    store = SessionStore(event_log_dir)
    app = FastAPI(title="voronoi-game", version="0.1.0")
    app.state.store = store
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    if static_dir is not None:
        app.mount("/ui", StaticFiles(directory=static_dir, html=True), name="ui")

    def _get(session_id: str) -> GameSession:
        try:
            return store.get(session_id)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"no session {session_id!r}")

    @app.exception_handler(VoronoiGameError)
    async def _domain_error(request: Request, exc: VoronoiGameError) -> JSONResponse:
        status = 409 if isinstance(exc, (OutOfTurn, WrongPhase, NotAGrid)) else 422
        return JSONResponse(status_code=status, content={"detail": str(exc)})

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError) -> JSONResponse:
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.get("/healthz")
    async def healthz() -> dict:
        return {"status": "ok"}

    @app.post("/sessions", response_model=SessionStateModel, status_code=201)
    def create_session(request: CreateSessionRequest) -> SessionStateModel:
        config = GameConfig(n=request.n, board=request.board.to_board())
        session = new_session(config)
        store.add(session)
        with session.lock:
            return snapshot(session)

    @app.get("/sessions/{session_id}", response_model=SessionStateModel)
    def get_session(session_id: str) -> SessionStateModel:
        session = _get(session_id)
        with session.lock:
            return snapshot(session)

    @app.post("/sessions/{session_id}/points", response_model=SessionStateModel)
    def post_point(session_id: str, request: PlacePointRequest) -> SessionStateModel:
        session = _get(session_id)
        with session.lock:
            place_point(session, Owner(request.player), Point(request.x, request.y))
            store._persist(session.id, session.events[-1])
            return snapshot(session)

    @app.get("/sessions/{session_id}/advice", response_model=AdviceModel)
    def get_advice(session_id: str) -> AdviceModel:
        session = _get(session_id)
        with session.lock:
            result = session_advice(session, advice_config)
        return AdviceModel(**result.to_json())

    @app.post("/sessions/{session_id}/autoplay", response_model=SessionStateModel)
    def post_autoplay(
        session_id: str, request: Optional[AutoplayRequest] = None
    ) -> SessionStateModel:
        session = _get(session_id)
        player = Owner(request.player) if request else Owner.BLACK
        with session.lock:
            before = len(session.events)
            session_autoplay(session, player)
            for event in session.events[before:]:
                store._persist(session.id, event)
            return snapshot(session)

    @app.post("/sessions/{session_id}/preview", response_model=PreviewResponse)
    def post_preview(session_id: str, request: PlacePointRequest) -> PreviewResponse:
        session = _get(session_id)
        with session.lock:
            white, black, stolen = session_preview(
                session, Owner(request.player), Point(request.x, request.y)
            )
        return PreviewResponse(tally=TallyModel(white=white, black=black), steal_area=stolen)

    @app.get("/sessions/{session_id}/events", response_model=EventsResponse)
    def get_events(session_id: str) -> EventsResponse:
        session = _get(session_id)
        with session.lock:
            return EventsResponse(events=[dict(e) for e in session.events])

    return app


app = create_app()
