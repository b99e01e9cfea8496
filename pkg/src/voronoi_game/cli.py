"""Command-line front end: thin argument parsing over the library.

Subcommands: ``winner``, ``best-response``, ``diagram``, ``play``,
``verify-paper``, ``serve``. All numeric text output uses 9 significant
digits; JSON output keeps full float precision so files round-trip.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .diagram import Board, SiteSet, diagram_to_json, voronoi
from .errors import VoronoiGameError
from .formulas import WILMA_ALWAYS, critical_ratio
from .geometry import Point
from .rules import GameConfig, game_record, predict_winner
from .search import OracleConfig, best_response_point
from .verify import ALL_CHECKS, DEFAULT_SEED, render_text, run_all


def _fmt(value: float) -> str:
    return f"{value:.9g}"


def _write_output(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def load_sites_file(path: str) -> tuple[Board, list[Point], list[Point]]:
    """Parse the sites-file schema:
    ``{"board": {"w":..,"h":..}, "white": [[x,y],..], "black": [[x,y],..]}``."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if "board" not in data or "white" not in data:
        raise ValueError("sites file needs 'board' and 'white' entries")
    board_data = data["board"]
    origin = board_data.get("origin", [0.0, 0.0])
    board = Board(
        float(board_data["w"]), float(board_data["h"]), Point(float(origin[0]), float(origin[1]))
    )
    white = [Point(float(x), float(y)) for x, y in data["white"]]
    black = [Point(float(x), float(y)) for x, y in data.get("black", [])]
    return board, white, black


def _parse_board(value: str) -> Board:
    try:
        w, h = value.lower().split("x")
        return Board(float(w), float(h))
    except (ValueError, TypeError) as exc:
        raise ValueError(f"cannot parse board size {value!r}, expected WxH") from exc


def cmd_winner(args: argparse.Namespace) -> int:
    if not (0.0 < args.rho <= 1.0):
        raise ValueError("rho must lie in (0, 1]")
    cfg = GameConfig(n=args.n, board=Board(1.0, args.rho))
    winner = predict_winner(cfg)
    threshold = critical_ratio(args.n)
    if threshold is WILMA_ALWAYS:
        threshold_value = None
        margin = None
    else:
        threshold_value = threshold
        margin = args.rho - threshold
    if args.format == "json":
        payload = {
            "n": args.n,
            "rho": args.rho,
            "winner": winner.value,
            "critical_ratio": threshold_value,
            "margin": margin,
        }
        _write_output(json.dumps(payload, sort_keys=True), args.output)
    else:
        lines = [f"winner: {winner.value}"]
        if threshold_value is None:
            lines.append("critical ratio: none (first player wins at every aspect ratio)")
        else:
            lines.append(f"critical ratio: {_fmt(threshold_value)}")
            lines.append(f"margin: {_fmt(margin)}")
        _write_output("\n".join(lines), args.output)
    return 0


def cmd_best_response(args: argparse.Namespace) -> int:
    board, white, _ = load_sites_file(args.sites)
    if args.board:
        board = _parse_board(args.board)
    cfg = OracleConfig(samples=args.samples, seed=args.seed)
    result = best_response_point(white, board, cfg=cfg, workers=args.workers)
    if args.format == "json":
        _write_output(json.dumps(result.to_json(), sort_keys=True), args.output)
    else:
        lines = [
            f"point: ({_fmt(result.point.x)}, {_fmt(result.point.y)})",
            f"exact area: {_fmt(result.exact_area)}",
            f"sampled area: {_fmt(result.sampled_area)}",
            f"steals from sites: {list(result.cells_stolen_from)}",
            f"iterations: {result.iterations}",
        ]
        _write_output("\n".join(lines), args.output)
    return 0


def cmd_diagram(args: argparse.Namespace) -> int:
    board, white, black = load_sites_file(args.sites)
    cells = voronoi(SiteSet(white=white, black=black), board)
    _write_output(json.dumps(diagram_to_json(cells, board), sort_keys=True), args.output)
    return 0


def cmd_play(args: argparse.Namespace) -> int:
    board, white, black = load_sites_file(args.sites)
    record = game_record(white, black, board)
    if args.format == "json":
        _write_output(json.dumps(record, sort_keys=True), args.output)
    else:
        lines = [
            f"white area: {_fmt(record['tally']['white'])}",
            f"black area: {_fmt(record['tally']['black'])}",
            f"winner: {record['winner']}",
        ]
        _write_output("\n".join(lines), args.output)
    return 0


def cmd_verify_paper(args: argparse.Namespace) -> int:
    report = run_all(seed=args.seed, only=args.check or None)
    if args.format == "json":
        _write_output(json.dumps(report, sort_keys=True), args.output)
    else:
        _write_output(render_text(report), args.output)
    return 0 if report["all_passed"] else 1


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(event_log_dir=args.event_log, static_dir=args.ui)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="voronoi-game",
        description="One-round Voronoi game on rectangular boards: winners, "
        "best responses, strategies, verification, and a play service.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_winner = sub.add_parser("winner", help="predict the winner for (n, rho)")
    p_winner.add_argument("--n", type=int, required=True, help="points per player")
    p_winner.add_argument("--rho", type=float, required=True, help="board aspect ratio in (0, 1]")
    p_winner.add_argument("--format", choices=("text", "json"), default="text")
    p_winner.add_argument("--output", default=None, help="write to file instead of stdout")
    p_winner.set_defaults(func=cmd_winner)

    p_best = sub.add_parser("best-response", help="maximize the single-point steal")
    p_best.add_argument("--sites", required=True, help="sites file (JSON)")
    p_best.add_argument("--board", default=None, help="override board as WxH")
    p_best.add_argument("--samples", type=int, default=1_000_000, help="oracle sample count")
    p_best.add_argument("--seed", type=int, default=0, help="search and oracle seed")
    p_best.add_argument("--workers", type=int, default=1, help="parallel refinement workers")
    p_best.add_argument("--format", choices=("text", "json"), default="text")
    p_best.add_argument("--output", default=None)
    p_best.set_defaults(func=cmd_best_response)

    p_diagram = sub.add_parser("diagram", help="emit the clipped Voronoi diagram as JSON")
    p_diagram.add_argument("--sites", required=True, help="sites file (JSON)")
    p_diagram.add_argument("--output", default=None)
    p_diagram.set_defaults(func=cmd_diagram)

    p_play = sub.add_parser("play", help="score a finished placement (game record)")
    p_play.add_argument("--sites", required=True, help="sites file with white and black")
    p_play.add_argument("--format", choices=("text", "json"), default="text")
    p_play.add_argument("--output", default=None)
    p_play.set_defaults(func=cmd_play)

    p_verify = sub.add_parser(
        "verify-paper", help="run the reproduction suite (exit 0 iff all pass)"
    )
    p_verify.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_verify.add_argument(
        "--check",
        action="append",
        choices=[name for name, _ in ALL_CHECKS],
        help="run only the named check (repeatable)",
    )
    p_verify.add_argument("--format", choices=("text", "json"), default="text")
    p_verify.add_argument("--output", default=None)
    p_verify.set_defaults(func=cmd_verify_paper)

    p_serve = sub.add_parser("serve", help="start the HTTP play service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--event-log", default=None, help="directory for append-only event logs")
    p_serve.add_argument("--ui", default=None, help="directory of web UI files to mount at /ui")
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (VoronoiGameError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
