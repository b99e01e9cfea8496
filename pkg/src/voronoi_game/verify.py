"""Reproduction suite: every published quantity and bound, checked numerically.

Each check returns a :class:`CheckResult` with one row per asserted quantity;
``run_all`` bundles them into a JSON-able report. All randomness is driven by
fixed seeds so two runs of the suite produce byte-identical reports.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .diagram import Board, SiteSet, find_asymmetric_exploit, grid_points, voronoi
from .formulas import (
    SQRT2,
    SQRT3,
    StripFrame,
    critical_ratio,
    fourstones_lower_bound,
    steal_breakdown,
    winning_interval,
    y_star,
    WILMA_ALWAYS,
)
from .geometry import Point
from .rules import (
    GameConfig,
    Winner,
    barney_response,
    barney_strategy,
    fourstones_strategy,
    predict_winner,
)
from .search import OracleConfig, best_response_point, steal_area_exact, steal_area_sampled

DEFAULT_SEED = 20406


@dataclass
class CheckRow:
    metric: str
    expected: str
    got: float | str | bool
    tol: Optional[float]
    passed: bool

    def to_json(self) -> dict:
        return {
            "metric": self.metric,
            "expected": self.expected,
            "got": self.got,
            "tol": self.tol,
            "passed": self.passed,
        }


@dataclass
class CheckResult:
    name: str
    rows: list[CheckRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def add(
        self,
        metric: str,
        expected: str,
        got: float | str | bool,
        passed: bool,
        tol: Optional[float] = None,
    ) -> None:
        self.rows.append(CheckRow(metric, expected, got, tol, passed))

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "rows": [r.to_json() for r in self.rows]}


def check_winner_table() -> CheckResult:
    """predict_winner against the direct threshold inequalities on an
    8 x 200 grid of (n, aspect ratio), plus single-flip structure."""
    result = CheckResult("winner-table")
    mismatches = 0
    flips_ok = True
    for n in range(1, 9):
        previous: Optional[Winner] = None
        flips = 0
        for k in range(1, 201):
            rho = k / 200.0
            expected_barney = (n >= 3 and rho > SQRT2 / n) or (n == 2 and rho > SQRT3 / 2.0)
            got = predict_winner(GameConfig(n=n, board=Board(1.0, rho)))
            if got is not (Winner.BARNEY if expected_barney else Winner.WILMA):
                mismatches += 1
            if previous is not None and got is not previous:
                flips += 1
                threshold = critical_ratio(n)
                lo, hi = (k - 1) / 200.0, rho
                if threshold is WILMA_ALWAYS or not (lo <= threshold < hi):
                    flips_ok = False
            previous = got
        if n == 1 and flips != 0:
            flips_ok = False
        if n >= 2 and flips != 1:
            flips_ok = False
    result.add("mismatches over 8x200 grid", "0", float(mismatches), mismatches == 0)
    result.add("one flip per n >= 2, bracketing the threshold", "true", flips_ok, flips_ok)
    return result


def _sample_in_regime(rng: np.random.Generator) -> tuple[float, float, float]:
    """Rejection-sample (r, x, y) strictly inside the three-cell shape."""
    margin = 1e-6
    while True:
        r = rng.uniform(0.3, SQRT3)
        x = rng.uniform(0.0, 1.0)
        y = rng.uniform(1e-4, r)
        b1 = y / 2.0 + x * x / (2.0 * y)
        h2 = r - b1 + x / y
        h0 = r - b1 - x / y
        x2 = h2 * y / (2.0 - x)
        x0 = h0 * y / (2.0 + x)
        if h0 >= margin and h2 <= 2.0 * r - margin and x2 <= 2.0 - margin and x0 <= 2.0 - margin:
            return r, x, y


def check_formula_equivalence(
    seed: int = DEFAULT_SEED, cases: int = 1000, oracle_samples: int = 1_000_000
) -> CheckResult:
    """Closed-form stolen area vs. exact clipped geometry (1e-9 absolute) and
    vs. the sampling oracle (3 sigma binomial bound, 99% of cases)."""
    result = CheckResult("formula-geometry-equivalence")
    rng = np.random.default_rng(seed)
    max_err = 0.0
    within_3sigma = 0
    for i in range(cases):
        r, x, y = _sample_in_regime(rng)
        frame = StripFrame(r=r, n=3)
        breakdown = steal_breakdown(frame, x, y)
        board = frame.board()
        sites = frame.sites()
        p = Point(x, y)
        exact = steal_area_exact(sites, board, p)
        max_err = max(max_err, abs(exact - breakdown.total))
        sampled = steal_area_sampled(
            sites, board, p, OracleConfig(samples=oracle_samples, stratified=True, seed=seed + i)
        )
        q = exact / board.area
        sigma = board.area * math.sqrt(max(q * (1.0 - q), 0.0) / oracle_samples)
        if abs(sampled - exact) <= 3.0 * sigma:
            within_3sigma += 1
    frac = within_3sigma / cases
    result.add("max |formula - exact| over in-regime cases", "<= 1e-9", max_err, max_err <= 1e-9, 1e-9)
    result.add("fraction of cases with |oracle - exact| <= 3 sigma", ">= 0.99", frac, frac >= 0.99)
    return result


_TWO_SITE_POINT = (0.66825, 0.616)


def check_two_site_best_response(seed: int = DEFAULT_SEED) -> CheckResult:
    """Best response against the two-site row on the unit square: area in
    [0.2538, 0.2558] and location within 5e-3 of the published point, up to
    the square's symmetries."""
    result = CheckResult("two-site-best-response")
    board = Board(1.0, 1.0)
    sites = [Point(0.25, 0.5), Point(0.75, 0.5)]
    res = best_response_point(sites, board, cfg=OracleConfig(seed=seed))
    px, py = _TWO_SITE_POINT
    images = [
        Point(px, py),
        Point(1.0 - px, py),
        Point(px, 1.0 - py),
        Point(1.0 - px, 1.0 - py),
    ]
    dist = min(res.point.distance_to(img) for img in images)
    in_window = 0.2538 <= res.exact_area <= 0.2558
    result.add("best-response area", "[0.2538, 0.2558]", res.exact_area, in_window)
    result.add(
        "distance to published point (mod symmetry)", "<= 5e-3", dist, dist <= 5e-3, 5e-3
    )
    return result


def check_four_site_constants(seed: int = DEFAULT_SEED) -> CheckResult:
    """The 2x2-grid constants on the unit square: single-point steal at
    (0.5, 0.296) in [0.134, 0.138]; the full 4-point strategy with eps = 1e-3
    lands in [0.505, 0.515]."""
    result = CheckResult("four-site-constants")
    board = Board(1.0, 1.0)
    W = grid_points(board, 2, 2)
    steal = steal_area_exact(W, board, Point(0.5, 0.296))
    result.add("steal at (0.5, 0.296)", "[0.134, 0.138]", steal, 0.134 <= steal <= 0.138)
    strategy = barney_strategy(W, board, eps=1e-3)
    got = strategy.guaranteed_area
    result.add("4-point strategy tally", "[0.505, 0.515]", got, 0.505 <= got <= 0.515)
    return result


def check_fourstones_bound() -> CheckResult:
    """Guaranteed-win bound against centered 2x2 grids: first point at the
    bottom-row midpoint claims at least rho*(1/8 + 1/128); the explicit
    4-point strategy clears rho*(1/2 + 1/128) - 5 eps."""
    result = CheckResult("fourstones-bound")
    eps = 1e-3
    for rho in (0.6, 0.8, 1.0):
        board = Board(1.0, rho)
        W = grid_points(board, 2, 2)
        first = Point(0.5, rho / 4.0)
        steal = steal_area_exact(W, board, first)
        bound = rho * (1.0 / 8.0 + 1.0 / 128.0)
        result.add(
            f"first-point steal, rho={rho}",
            f">= {bound:.9g} - 1e-9",
            steal,
            steal >= bound - 1e-9,
            1e-9,
        )
        strategy = fourstones_strategy(board, eps=eps)
        total_bound = fourstones_lower_bound(rho) - 5.0 * eps
        result.add(
            f"strategy tally, rho={rho}",
            f"> {total_bound:.9g}",
            strategy.guaranteed_area,
            strategy.guaranteed_area > total_bound,
        )
    return result


def check_winning_interval(seed: int = DEFAULT_SEED) -> CheckResult:
    """Interval structure at r = 1.5 plus stationarity and interiority of the
    optimal height for 50 random r in (sqrt(2), sqrt(3)]."""
    result = CheckResult("winning-interval")
    r = 1.5
    frame = StripFrame(r=r, n=3)
    interval = winning_interval(r)
    assert interval is not None
    hi = interval[1]
    inside = steal_breakdown(frame, 0.0, 0.5 * hi).total
    outside = steal_breakdown(frame, 0.0, 1.2 * hi).total
    result.add("steal at y = 0.5 * 2(r - sqrt2), r=1.5", "> 2r = 3", inside, inside > 2.0 * r)
    result.add("steal at y = 1.2 * 2(r - sqrt2), r=1.5", "<= 2r = 3", outside, outside <= 2.0 * r)

    rng = np.random.default_rng(seed)
    h = 1e-6
    max_derivative = 0.0
    all_interior = True
    for _ in range(50):
        rr = rng.uniform(SQRT2 + 1e-3, SQRT3)
        fr = StripFrame(r=rr, n=3)
        ys = y_star(rr)
        lo, hi = winning_interval(rr)
        if not (lo < ys < hi):
            all_interior = False
        deriv = (
            steal_breakdown(fr, 0.0, ys + h).total - steal_breakdown(fr, 0.0, ys - h).total
        ) / (2.0 * h)
        max_derivative = max(max_derivative, abs(deriv))
    result.add(
        "max |d(total)/dy| at y* over 50 random r",
        "< 1e-6",
        max_derivative,
        max_derivative < 1e-6,
        1e-6,
    )
    result.add("y* interior to the winning interval", "true", all_interior, all_interior)
    return result


def check_axis_degeneracy(seed: int = DEFAULT_SEED) -> CheckResult:
    """A point on the site axis steals exactly the half-cell area 2r."""
    result = CheckResult("axis-degeneracy")
    frame = StripFrame(r=1.5, n=3)
    board = frame.board()
    sites = frame.sites()
    rng = np.random.default_rng(seed)
    max_err = 0.0
    for _ in range(20):
        x = rng.uniform(0.01, 0.99)
        exact = steal_area_exact(sites, board, Point(x, 0.0))
        max_err = max(max_err, abs(exact - 2.0 * frame.r))
    result.add("max |steal(x, 0) - 2r| over 20 x", "<= 1e-9", max_err, max_err <= 1e-9, 1e-9)
    return result


_GRID_SHAPES = [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (1, 5), (2, 4), (3, 3)]


def check_non_grid_punishment(seed: int = DEFAULT_SEED, cases: int = 100) -> CheckResult:
    """Perturbed grids (one site moved by at least 1% of its cell) always
    yield a positive exploit excess and a full response above half the board."""
    result = CheckResult("non-grid-punishment")
    rng = np.random.default_rng(seed)
    min_delta = math.inf
    min_margin = math.inf
    failures = 0
    for _ in range(cases):
        rows, cols = _GRID_SHAPES[rng.integers(0, len(_GRID_SHAPES))]
        rho = float(rng.uniform(0.4, 1.0))
        board = Board(1.0, rho)
        W = grid_points(board, rows, cols)
        cell_size = min(board.width / cols, board.height / rows)
        idx = int(rng.integers(0, len(W)))
        angle = float(rng.uniform(0.0, 2.0 * math.pi))
        magnitude = float(rng.uniform(0.02, 0.25)) * cell_size
        moved = Point(
            W[idx].x + magnitude * math.cos(angle), W[idx].y + magnitude * math.sin(angle)
        )
        W = list(W)
        W[idx] = moved
        cells = voronoi(SiteSet(white=tuple(W)), board)
        report = find_asymmetric_exploit(cells, board)
        if report is None or report.delta <= 0.0:
            failures += 1
            continue
        min_delta = min(min_delta, report.delta)
        strategy = barney_response(W, board)
        margin = strategy.guaranteed_area - 0.5 * board.area
        min_margin = min(min_margin, margin)
        if margin <= 0.0:
            failures += 1
    result.add(f"failures over {cases} perturbed grids", "0", float(failures), failures == 0)
    result.add("min exploit delta", "> 0", min_delta, min_delta > 0.0)
    result.add("min tally margin over half board", "> 0", min_margin, min_margin > 0.0)
    return result


def check_best_response_determinism(seed: int = DEFAULT_SEED) -> CheckResult:
    """Serial and 2-worker runs of the optimizer emit byte-identical JSON."""
    result = CheckResult("best-response-determinism")
    board = Board(1.0, 1.0)
    sites = [Point(0.25, 0.5), Point(0.75, 0.5)]
    cfg = OracleConfig(seed=seed)
    serial = best_response_point(sites, board, cfg=cfg, workers=1)
    parallel = best_response_point(sites, board, cfg=cfg, workers=2)
    repeat = best_response_point(sites, board, cfg=cfg, workers=1)
    s, p, q = (json.dumps(r.to_json(), sort_keys=True) for r in (serial, parallel, repeat))
    result.add("serial == parallel JSON", "true", s == p, s == p)
    result.add("serial run-to-run JSON", "true", s == q, s == q)
    return result


ALL_CHECKS: list[tuple[str, Callable[..., CheckResult]]] = [
    ("winner-table", lambda seed: check_winner_table()),
    ("formula-geometry-equivalence", lambda seed: check_formula_equivalence(seed)),
    ("two-site-best-response", lambda seed: check_two_site_best_response(seed)),
    ("four-site-constants", lambda seed: check_four_site_constants(seed)),
    ("fourstones-bound", lambda seed: check_fourstones_bound()),
    ("winning-interval", lambda seed: check_winning_interval(seed)),
    ("axis-degeneracy", lambda seed: check_axis_degeneracy(seed)),
    ("non-grid-punishment", lambda seed: check_non_grid_punishment(seed)),
    ("best-response-determinism", lambda seed: check_best_response_determinism(seed)),
]


def run_all(seed: int = DEFAULT_SEED, only: Optional[list[str]] = None) -> dict:
    """Run the reproduction checks (optionally a named subset) and report."""
    checks = []
    for name, fn in ALL_CHECKS:
        if only and name not in only:
            continue
        checks.append(fn(seed).to_json())
    return {
        "seed": seed,
        "checks": checks,
        "all_passed": all(c["passed"] for c in checks),
    }


def render_text(report: dict) -> str:
    """Fixed-width table rendering with 9 significant digits."""

    def fmt(value: float | str | bool | None) -> str:
        if isinstance(value, bool):
            return "true" if value else "false"
        if isinstance(value, float):
            return f"{value:.9g}"
        if value is None:
            return "-"
        return str(value)

    lines = []
    for check in report["checks"]:
        status = "PASS" if check["passed"] else "FAIL"
        lines.append(f"[{status}] {check['name']}")
        for row in check["rows"]:
            mark = "ok " if row["passed"] else "BAD"
            tol = f" (tol {fmt(row['tol'])})" if row["tol"] is not None else ""
            lines.append(
                f"    {mark} {row['metric']}: expected {fmt(row['expected'])}, "
                f"got {fmt(row['got'])}{tol}"
            )
    overall = "ALL CHECKS PASSED" if report["all_passed"] else "SOME CHECKS FAILED"
    lines.append(overall)
    return "\n".join(lines)
